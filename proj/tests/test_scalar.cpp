#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "conic/sampler.hpp"
#include "conic/scalar.hpp"

using conic::Approx;
using conic::Rational;
using conic::SplitMix64;

TEST_CASE("rational arithmetic basics") {
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(2, 3) * Rational(1) == Rational(2, 3));
    CHECK(Rational(2, 3) / Rational(2, 3) == Rational(1));
    CHECK(Rational(1, 2) - Rational(1, 2) == Rational(0));
    CHECK_THROWS_AS(Rational(1) / Rational(0), conic::DivisionByZero);
    CHECK_THROWS_AS(Rational(1, 0), conic::DivisionByZero);
}

TEST_CASE("rational canonical form") {
    const Rational half(2, 4);
    CHECK(half.num() == 1);
    CHECK(half.den() == 2);
    CHECK(half == Rational(1, 2));
    const Rational neg(3, -6);  // denominator forced positive
    CHECK(neg.num() == -1);
    CHECK(neg.den() == 2);
    CHECK(Rational(0, 7).den() == 1);
}

TEST_CASE("rational sign trichotomy") {
    CHECK(Rational(-3, 7).sign() == -1);
    CHECK(Rational(0).sign() == 0);
    CHECK(Rational(5).sign() == 1);

    SplitMix64 rng(11);
    for (int i = 0; i < 1000; ++i) {
        const Rational a = conic::random_scalar<Rational>(rng, 100);
        const int holds = (a < Rational(0) ? 1 : 0) + (a == Rational(0) ? 1 : 0) +
                          (a > Rational(0) ? 1 : 0);
        CHECK(holds == 1);
    }
}

TEST_CASE("rational field axioms hold bit-exactly on random values") {
    SplitMix64 rng(7);
    for (int i = 0; i < 10000; ++i) {
        const Rational a = conic::random_scalar<Rational>(rng, 50);
        const Rational b = conic::random_scalar<Rational>(rng, 50);
        const Rational c = conic::random_scalar<Rational>(rng, 50);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
    }
}

TEST_CASE("rational parsing") {
    CHECK(Rational::parse("3/5") == Rational(3, 5));
    CHECK(Rational::parse("-3/5") == Rational(-3, 5));
    CHECK(Rational::parse("3/-5") == Rational(-3, 5));
    CHECK(Rational::parse("7") == Rational(7));
    CHECK(Rational::parse("-123456789012345678901234567890").den() == 1);
    CHECK_THROWS_AS(Rational::parse("abc"), conic::MalformedNumber);
    CHECK_THROWS_AS(Rational::parse("1.5"), conic::MalformedNumber);
    CHECK_THROWS_AS(Rational::parse(""), conic::MalformedNumber);
    CHECK_THROWS_AS(Rational::parse("1/0"), conic::DivisionByZero);
}

TEST_CASE("rational printing round-trips") {
    CHECK(Rational(5, 6).str() == "5/6");
    CHECK(Rational(-7).str() == "-7");
    CHECK(Rational::parse(Rational(-22, 8).str()) == Rational(-11, 4));
}

TEST_CASE("rational exact square roots") {
    REQUIRE(Rational(4, 9).try_sqrt());
    CHECK(*Rational(4, 9).try_sqrt() == Rational(2, 3));
    CHECK(*Rational(0).try_sqrt() == Rational(0));
    CHECK(!Rational(2).try_sqrt());
    CHECK(!Rational(-4).try_sqrt());
    CHECK(!Rational(9, 2).try_sqrt());
}

TEST_CASE("coordinate growth stays exact over chained operations") {
    // The whole reason numerators are arbitrary precision.
    Rational x(3, 7);
    for (int i = 0; i < 12; ++i) x = x * x + Rational(1, 3);
    CHECK(x == x);  // no overflow, still canonical
    CHECK(x.den() > 0);
}

TEST_CASE("float backend tolerance semantics") {
    const double saved = Approx::epsilon();
    Approx::epsilon() = 1e-9;
    CHECK(Approx(1.0) == Approx(1.0 + 1e-12));
    CHECK(Approx(1.0) != Approx(1.0 + 1e-6));
    CHECK(Approx(1e-12).sign() == 0);
    CHECK(Approx(1e-3).sign() == 1);
    CHECK(Approx(-1e-3).sign() == -1);
    CHECK(Approx(1e6) == Approx(1e6 * (1.0 + 1e-12)));  // relative, not absolute
    CHECK_THROWS_AS(Approx(1.0) / Approx(1e-15), conic::DivisionByZero);
    Approx::epsilon() = saved;
}

TEST_CASE("float backend parsing accepts decimals and rationals") {
    CHECK(Approx::parse("0.25") == Approx(0.25));
    CHECK(Approx::parse("1/4") == Approx(0.25));
    CHECK(Approx::parse("-2e3") == Approx(-2000.0));
    CHECK_THROWS_AS(Approx::parse("abc"), conic::MalformedNumber);
    CHECK_THROWS_AS(Approx::parse("1.5x"), conic::MalformedNumber);
}
