#pragma once

#include <array>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "conic/errors.hpp"
#include "conic/scalar.hpp"

namespace conic {

template <ScalarField S>
using Triple = std::array<S, 3>;

template <ScalarField S>
using Mat3 = std::array<std::array<S, 3>, 3>;

template <ScalarField S>
Triple<S> cross(const Triple<S>& a, const Triple<S>& b) {
    return {a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

template <ScalarField S>
S dot(const Triple<S>& a, const Triple<S>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <ScalarField S>
S det3(const Triple<S>& a, const Triple<S>& b, const Triple<S>& c) {
    return dot(a, cross(b, c));
}

namespace detail {

inline void canonicalize_span(Rational* v, std::size_t n) {
    mpz_class l = 1;
    for (std::size_t i = 0; i < n; ++i)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v[i].den().get_mpz_t());
    std::vector<mpz_class> ints(n);
    mpz_class g = 0;
    for (std::size_t i = 0; i < n; ++i) {
        ints[i] = v[i].num() * (l / v[i].den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints[i].get_mpz_t());
    }
    if (g == 0) return;  // zero vector, caller validates
    int flip = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (ints[i] != 0) {
            flip = sgn(ints[i]);
            break;
        }
    }
    if (flip < 0) g = -g;
    for (std::size_t i = 0; i < n; ++i) v[i] = Rational(ints[i] / g, mpz_class(1));
}

inline void canonicalize_span(Approx* v, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(v[i].to_double()));
    if (m == 0.0) return;
    double flip = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (v[i].to_double() != 0.0) {
            flip = v[i].to_double() > 0 ? 1.0 : -1.0;
            break;
        }
    }
    const double inv = flip / m;
    for (std::size_t i = 0; i < n; ++i) v[i] = Approx(v[i].to_double() * inv);
}

/// a ~ b up to a common nonzero scale: all 2x2 minors of [a; b] vanish.
template <ScalarField S>
bool proportional(const S* a, const S* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!is_zero(a[i] * b[j] - a[j] * b[i])) return false;
    return true;
}

template <ScalarField S>
bool all_zero(const S* v, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (!is_zero(v[i])) return false;
    return true;
}

}  // namespace detail

/// Point of the real projective plane as a homogeneous coordinate triple
/// modulo nonzero scale.  The stored representative is canonical: on the
/// exact backend the coordinates are coprime integers with the first nonzero
/// one positive.
template <ScalarField S>
class Point {
  public:
    explicit Point(Triple<S> coords) : v_(std::move(coords)) {
        if (detail::all_zero(v_.data(), 3)) throw InvalidParameter("point coordinates are all zero");
        detail::canonicalize_span(v_.data(), 3);
    }
    Point(S x, S y, S z) : Point(Triple<S>{std::move(x), std::move(y), std::move(z)}) {}

    static Point affine(S x, S y) { return Point(std::move(x), std::move(y), S(1)); }

    const Triple<S>& coords() const { return v_; }
    const S& operator[](std::size_t i) const { return v_[i]; }

    bool at_infinity() const { return is_zero(v_[2]); }

    /// Affine (x, y); only valid when z != 0.
    std::array<S, 2> to_affine() const {
        if (at_infinity()) throw InvalidParameter("point at infinity has no affine form");
        return {v_[0] / v_[2], v_[1] / v_[2]};
    }

    friend bool operator==(const Point& a, const Point& b) {
        return detail::proportional(a.v_.data(), b.v_.data(), 3);
    }
    friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }

    std::string str() const {
        std::ostringstream os;
        os << "[" << v_[0] << ":" << v_[1] << ":" << v_[2] << "]";
        return os.str();
    }
    friend std::ostream& operator<<(std::ostream& os, const Point& p) { return os << p.str(); }

  private:
    Triple<S> v_;
};

/// Line ux + vy + wz = 0, coefficients modulo nonzero scale.
template <ScalarField S>
class Line {
  public:
    explicit Line(Triple<S> coeffs) : v_(std::move(coeffs)) {
        if (detail::all_zero(v_.data(), 3)) throw InvalidParameter("line coefficients are all zero");
        detail::canonicalize_span(v_.data(), 3);
    }
    Line(S u, S v, S w) : Line(Triple<S>{std::move(u), std::move(v), std::move(w)}) {}

    static Line infinity() { return Line(S(0), S(0), S(1)); }

    const Triple<S>& coeffs() const { return v_; }
    const S& operator[](std::size_t i) const { return v_[i]; }

    friend bool operator==(const Line& a, const Line& b) {
        return detail::proportional(a.v_.data(), b.v_.data(), 3);
    }
    friend bool operator!=(const Line& a, const Line& b) { return !(a == b); }

    std::string str() const {
        std::ostringstream os;
        os << "(" << v_[0] << "," << v_[1] << "," << v_[2] << ")";
        return os.str();
    }
    friend std::ostream& operator<<(std::ostream& os, const Line& l) { return os << l.str(); }

  private:
    Triple<S> v_;
};

template <ScalarField S>
bool incident(const Point<S>& p, const Line<S>& l) {
    return is_zero(dot(p.coords(), l.coeffs()));
}

template <ScalarField S>
bool collinear(const Point<S>& p, const Point<S>& q, const Point<S>& r) {
    return is_zero(det3(p.coords(), q.coords(), r.coords()));
}

template <ScalarField S>
Line<S> join(const Point<S>& p, const Point<S>& q) {
    Triple<S> c = cross(p.coords(), q.coords());
    if (detail::all_zero(c.data(), 3)) throw IdenticalPoints();
    return Line<S>(std::move(c));
}

template <ScalarField S>
Point<S> meet(const Line<S>& l, const Line<S>& m) {
    Triple<S> c = cross(l.coeffs(), m.coeffs());
    if (detail::all_zero(c.data(), 3)) throw IdenticalLines();
    return Point<S>(std::move(c));
}

namespace detail {

template <ScalarField S>
Mat3<S> mat_mul(const Mat3<S>& a, const Mat3<S>& b) {
    Mat3<S> r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
    return r;
}

template <ScalarField S>
Triple<S> mat_vec(const Mat3<S>& m, const Triple<S>& v) {
    return {m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
            m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
            m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2]};
}

template <ScalarField S>
S mat_det(const Mat3<S>& m) {
    return det3<S>({m[0][0], m[0][1], m[0][2]},
                   {m[1][0], m[1][1], m[1][2]},
                   {m[2][0], m[2][1], m[2][2]});
}

template <ScalarField S>
Mat3<S> mat_adjugate(const Mat3<S>& m) {
    Mat3<S> a;
    a[0][0] = m[1][1] * m[2][2] - m[1][2] * m[2][1];
    a[0][1] = m[0][2] * m[2][1] - m[0][1] * m[2][2];
    a[0][2] = m[0][1] * m[1][2] - m[0][2] * m[1][1];
    a[1][0] = m[1][2] * m[2][0] - m[1][0] * m[2][2];
    a[1][1] = m[0][0] * m[2][2] - m[0][2] * m[2][0];
    a[1][2] = m[0][2] * m[1][0] - m[0][0] * m[1][2];
    a[2][0] = m[1][0] * m[2][1] - m[1][1] * m[2][0];
    a[2][1] = m[0][1] * m[2][0] - m[0][0] * m[2][1];
    a[2][2] = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    return a;
}

template <ScalarField S>
Mat3<S> mat_transpose(const Mat3<S>& m) {
    Mat3<S> t;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t[i][j] = m[j][i];
    return t;
}

}  // namespace detail

/// Invertible projective transformation, a 3x3 matrix modulo nonzero scale.
/// Points map by p -> Mp, lines by the adjugate-transpose action (which is
/// the inverse-transpose up to scale, so no division is needed).
template <ScalarField S>
class Transform {
  public:
    explicit Transform(Mat3<S> m) : m_(std::move(m)) {
        if (is_zero(detail::mat_det(m_))) throw SingularTransform();
        detail::canonicalize_span(&m_[0][0], 9);
    }

    static Transform identity() {
        return Transform(Mat3<S>{{{S(1), S(0), S(0)}, {S(0), S(1), S(0)}, {S(0), S(0), S(1)}}});
    }

    static Transform diagonal(S a, S b, S c) {
        return Transform(Mat3<S>{{{std::move(a), S(0), S(0)},
                                  {S(0), std::move(b), S(0)},
                                  {S(0), S(0), std::move(c)}}});
    }

    const Mat3<S>& matrix() const { return m_; }

    friend bool operator==(const Transform& a, const Transform& b) {
        return detail::proportional(&a.m_[0][0], &b.m_[0][0], 9);
    }
    friend bool operator!=(const Transform& a, const Transform& b) { return !(a == b); }

  private:
    Mat3<S> m_;
};

template <ScalarField S>
Point<S> apply_point(const Transform<S>& t, const Point<S>& p) {
    return Point<S>(detail::mat_vec(t.matrix(), p.coords()));
}

template <ScalarField S>
Line<S> apply_line(const Transform<S>& t, const Line<S>& l) {
    const Mat3<S> adj_t = detail::mat_transpose(detail::mat_adjugate(t.matrix()));
    return Line<S>(detail::mat_vec(adj_t, l.coeffs()));
}

/// compose(a, b) applies b first, then a.
template <ScalarField S>
Transform<S> compose(const Transform<S>& a, const Transform<S>& b) {
    return Transform<S>(detail::mat_mul(a.matrix(), b.matrix()));
}

/// Projective inverse; the adjugate is the inverse up to the determinant scale.
template <ScalarField S>
Transform<S> inverse(const Transform<S>& t) {
    return Transform<S>(detail::mat_adjugate(t.matrix()));
}

/// A transform carrying the given line to the line at infinity (0,0,1).
/// Its third row is l itself; the other two rows are the two standard basis
/// vectors giving the largest-magnitude determinant against l, ties broken
/// by index order.
template <ScalarField S>
Transform<S> send_to_infinity(const Line<S>& l) {
    const Triple<S>& c = l.coeffs();
    // Basis pairs (e0,e1), (e0,e2), (e1,e2) have determinants c[2], -c[1], c[0].
    int best = 0;
    const S mags[3] = {abs(c[2]), abs(c[1]), abs(c[0])};
    for (int k = 1; k < 3; ++k)
        if (mags[best] < mags[k]) best = k;
    static constexpr int rows[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    Mat3<S> m{{{S(0), S(0), S(0)}, {S(0), S(0), S(0)}, {S(0), S(0), S(0)}}};
    m[0][rows[best][0]] = S(1);
    m[1][rows[best][1]] = S(1);
    m[2] = {c[0], c[1], c[2]};
    return Transform<S>(std::move(m));
}

}  // namespace conic
