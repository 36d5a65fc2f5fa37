#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include <gmpxx.h>

#include "conic/errors.hpp"

namespace conic {

/// Exact rational scalar backed by GMP, kept in canonical lowest terms
/// (positive denominator, gcd(|num|, den) = 1).
class Rational {
  public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
    Rational(long num, long den) : v_(num, den) {
        if (den == 0) throw DivisionByZero();
        v_.canonicalize();
    }
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }
    explicit Rational(mpz_class num, mpz_class den) : v_(std::move(num), std::move(den)) {
        if (v_.get_den() == 0) throw DivisionByZero();
        v_.canonicalize();
    }

    /// Parses "p", "-p" or "p/q" with integer p, q.
    static Rational parse(const std::string& text) {
        if (text.empty()) throw MalformedNumber("empty rational literal");
        const auto slash = text.find('/');
        try {
            if (slash == std::string::npos) {
                return Rational(mpq_class(mpz_class(text)));
            }
            mpz_class num(text.substr(0, slash));
            mpz_class den(text.substr(slash + 1));
            if (den == 0) throw DivisionByZero();
            return Rational(std::move(num), std::move(den));
        } catch (const std::invalid_argument&) {
            throw MalformedNumber("not a rational literal: '" + text + "'");
        }
    }

    const mpz_class& num() const { return v_.get_num(); }
    const mpz_class& den() const { return v_.get_den(); }

    friend Rational operator+(const Rational& a, const Rational& b) { return wrap(a.v_ + b.v_); }
    friend Rational operator-(const Rational& a, const Rational& b) { return wrap(a.v_ - b.v_); }
    friend Rational operator*(const Rational& a, const Rational& b) { return wrap(a.v_ * b.v_); }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.v_ == 0) throw DivisionByZero();
        return wrap(a.v_ / b.v_);
    }
    Rational operator-() const { return wrap(-v_); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    int sign() const { return sgn(v_); }
    bool is_zero() const { return v_ == 0; }

    /// Exact square root when the value is a perfect rational square.
    std::optional<Rational> try_sqrt() const {
        if (sgn(v_) < 0) return std::nullopt;
        const mpz_class& n = v_.get_num();
        const mpz_class& d = v_.get_den();
        if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
            return std::nullopt;
        mpz_class rn, rd;
        mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
        mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
        return Rational(std::move(rn), std::move(rd));
    }

    double to_double() const { return v_.get_d(); }

    std::string str() const {
        if (v_.get_den() == 1) return v_.get_num().get_str();
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

  private:
    static Rational wrap(mpq_class q) {
        Rational r;
        r.v_ = std::move(q);  // mpq arithmetic keeps canonical form
        return r;
    }
    mpq_class v_;
};

/// Floating scalar with explicit tolerance semantics: two values are equal
/// when |a-b| <= eps * max(1, |a|, |b|).  The tolerance is a process-wide
/// configuration value, settable from the CLI.
class Approx {
  public:
    Approx() : v_(0.0) {}
    template <std::integral I>
    Approx(I n) : v_(static_cast<double>(n)) {}  // NOLINT(google-explicit-constructor)
    Approx(long num, long den) {
        if (den == 0) throw DivisionByZero();
        v_ = static_cast<double>(num) / static_cast<double>(den);
    }
    explicit Approx(double v) : v_(v) {}

    static double& epsilon() {
        static double eps = 1e-9;
        return eps;
    }

    static Approx parse(const std::string& text) {
        // Accepts rational literals too, so exact scenes load on either backend.
        const auto slash = text.find('/');
        try {
            if (slash != std::string::npos) {
                const double num = std::stod(text.substr(0, slash));
                const double den = std::stod(text.substr(slash + 1));
                if (den == 0.0) throw DivisionByZero();
                return Approx(num / den);
            }
            std::size_t used = 0;
            const double v = std::stod(text, &used);
            if (used != text.size()) throw MalformedNumber("not a number: '" + text + "'");
            return Approx(v);
        } catch (const std::invalid_argument&) {
            throw MalformedNumber("not a number: '" + text + "'");
        } catch (const std::out_of_range&) {
            throw MalformedNumber("number out of range: '" + text + "'");
        }
    }

    friend Approx operator+(Approx a, Approx b) { return Approx(a.v_ + b.v_); }
    friend Approx operator-(Approx a, Approx b) { return Approx(a.v_ - b.v_); }
    friend Approx operator*(Approx a, Approx b) { return Approx(a.v_ * b.v_); }
    friend Approx operator/(Approx a, Approx b) {
        if (std::abs(b.v_) <= epsilon()) throw DivisionByZero();
        return Approx(a.v_ / b.v_);
    }
    Approx operator-() const { return Approx(-v_); }
    Approx& operator+=(Approx o) { v_ += o.v_; return *this; }
    Approx& operator-=(Approx o) { v_ -= o.v_; return *this; }
    Approx& operator*=(Approx o) { v_ *= o.v_; return *this; }

    // Tolerance-based equality; ordering is plain double ordering (used only
    // for pivot selection, never for exactness claims).
    friend bool operator==(Approx a, Approx b) {
        return std::abs(a.v_ - b.v_) <= epsilon() * std::max({1.0, std::abs(a.v_), std::abs(b.v_)});
    }
    friend bool operator!=(Approx a, Approx b) { return !(a == b); }
    friend bool operator<(Approx a, Approx b) { return a.v_ < b.v_; }
    friend bool operator>(Approx a, Approx b) { return a.v_ > b.v_; }
    friend bool operator<=(Approx a, Approx b) { return a.v_ <= b.v_; }
    friend bool operator>=(Approx a, Approx b) { return a.v_ >= b.v_; }

    int sign() const {
        if (std::abs(v_) <= epsilon()) return 0;
        return v_ > 0 ? 1 : -1;
    }
    bool is_zero() const { return std::abs(v_) <= epsilon(); }

    std::optional<Approx> try_sqrt() const {
        if (v_ < -epsilon()) return std::nullopt;
        return Approx(std::sqrt(std::max(v_, 0.0)));
    }

    double to_double() const { return v_; }

    std::string str() const {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.12g", v_);
        return buf;
    }

    friend std::ostream& operator<<(std::ostream& os, Approx a) { return os << a.str(); }

  private:
    double v_;
};

template <class S>
concept ScalarField = requires(const S& a, const S& b) {
    { a + b } -> std::convertible_to<S>;
    { a - b } -> std::convertible_to<S>;
    { a* b } -> std::convertible_to<S>;
    { a / b } -> std::convertible_to<S>;
    { -a } -> std::convertible_to<S>;
    { a.sign() } -> std::convertible_to<int>;
    { a.is_zero() } -> std::convertible_to<bool>;
    { a.to_double() } -> std::convertible_to<double>;
    { a == b } -> std::convertible_to<bool>;
    { a < b } -> std::convertible_to<bool>;
    requires std::constructible_from<S, long>;
};

template <ScalarField S>
int sign(const S& a) { return a.sign(); }

template <ScalarField S>
bool is_zero(const S& a) { return a.is_zero(); }

template <ScalarField S>
S abs(const S& a) { return a.sign() < 0 ? -a : a; }

/// |a| < |b| by magnitude, exact on the rational backend. Pivot selection only.
template <ScalarField S>
bool abs_less(const S& a, const S& b) { return abs(a) < abs(b); }

}  // namespace conic
