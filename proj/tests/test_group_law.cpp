#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "conic/group_law.hpp"
#include "conic/sampler.hpp"

using conic::Conic;
using conic::Line;
using conic::MarkedConic;
using conic::Point;
using conic::Rational;
using conic::SplitMix64;
using conic::StandardKind;
using R = Rational;
using P = Point<R>;
using L = Line<R>;

namespace {

P pt(long x_num, long x_den, long y_num, long y_den) {
    return P::affine(R(x_num, x_den), R(y_num, y_den));
}

}  // namespace

TEST_CASE("closed forms match the three standard group laws") {
    using conic::standard_oplus;
    using A = conic::AffinePair<R>;

    CHECK(standard_oplus<R>(StandardKind::Parabola, A{R(1), R(1)}, A{R(2), R(4)}) ==
          A{R(3), R(9)});
    CHECK(standard_oplus<R>(StandardKind::Parabola, A{R(-1), R(1)}, A{R(1), R(1)}) ==
          A{R(0), R(0)});
    CHECK(standard_oplus<R>(StandardKind::Hyperbola, A{R(2), R(1, 2)}, A{R(3), R(1, 3)}) ==
          A{R(6), R(1, 6)});
    CHECK(standard_oplus<R>(StandardKind::Hyperbola, A{R(5), R(1, 5)}, A{R(1), R(1)}) ==
          A{R(5), R(1, 5)});
    CHECK(standard_oplus<R>(StandardKind::Circle, A{R(3, 5), R(4, 5)}, A{R(3, 5), R(-4, 5)}) ==
          A{R(1), R(0)});
    CHECK(standard_oplus<R>(StandardKind::Circle, A{R(0), R(1)}, A{R(0), R(1)}) ==
          A{R(-1), R(0)});
    CHECK_THROWS_AS(standard_oplus<R>(StandardKind::Circle, A{R(1), R(1)}, A{R(1), R(0)}),
                    conic::PointNotOnConic);
}

TEST_CASE("geometric oplus reproduces the closed forms") {
    const auto parabola = conic::standard_marked<R>(StandardKind::Parabola);
    CHECK(oplus(parabola, pt(1, 1, 1, 1), pt(2, 1, 4, 1)).sum == pt(3, 1, 9, 1));

    const auto hyperbola = conic::standard_marked<R>(StandardKind::Hyperbola);
    CHECK(oplus(hyperbola, pt(2, 1, 1, 2), pt(3, 1, 1, 3)).sum == pt(6, 1, 1, 6));

    const auto circle = conic::standard_marked<R>(StandardKind::Circle);
    CHECK(oplus(circle, pt(3, 5, 4, 5), pt(3, 5, -4, 5)).sum == pt(1, 1, 0, 1));
}

TEST_CASE("geometric oplus agrees with closed forms on random points") {
    SplitMix64 rng(37);
    for (int i = 0; i < 2000; ++i) {
        const auto kind = static_cast<StandardKind>(rng.uniform(0, 2));
        const auto mc = conic::standard_marked<R>(kind);
        const P a = conic::random_point_on<R>(kind, rng, 50);
        const P b = conic::random_point_on<R>(kind, rng, 50);
        const auto closed = standard_oplus<R>(kind, a.to_affine(), b.to_affine());
        CHECK(oplus(mc, a, b).sum == P::affine(closed[0], closed[1]));
    }
}

TEST_CASE("identity element") {
    SplitMix64 rng(41);
    for (int i = 0; i < 500; ++i) {
        const auto sampled = conic::sample_marked_conic<R>(rng, 20);
        const P a = apply_point(sampled.transform,
                                conic::random_point_on<R>(sampled.kind, rng, 20));
        CHECK(oplus(sampled.mc, a, sampled.mc.identity()).sum == a);
        CHECK(oplus(sampled.mc, sampled.mc.identity(), a).sum == a);
    }
    const auto circle = conic::standard_marked<R>(StandardKind::Circle);
    CHECK(oplus(circle, circle.identity(), circle.identity()).sum == circle.identity());
}

TEST_CASE("inverses") {
    const auto circle = conic::standard_marked<R>(StandardKind::Circle);
    CHECK(inverse(circle, pt(3, 5, 4, 5)) == pt(3, 5, -4, 5));
    CHECK(inverse(circle, circle.identity()) == circle.identity());

    const auto hyperbola = conic::standard_marked<R>(StandardKind::Hyperbola);
    CHECK(inverse(hyperbola, pt(2, 1, 1, 2)) == pt(1, 2, 2, 1));

    SplitMix64 rng(43);
    for (int i = 0; i < 500; ++i) {
        const auto sampled = conic::sample_marked_conic<R>(rng, 20);
        const P a = apply_point(sampled.transform,
                                conic::random_point_on<R>(sampled.kind, rng, 20));
        const P inv = inverse(sampled.mc, a);
        CHECK(oplus(sampled.mc, a, inv).sum == sampled.mc.identity());
    }
}

TEST_CASE("commutativity and closure") {
    SplitMix64 rng(47);
    for (int i = 0; i < 500; ++i) {
        const auto sampled = conic::sample_marked_conic<R>(rng, 20);
        const P a = apply_point(sampled.transform,
                                conic::random_point_on<R>(sampled.kind, rng, 20));
        const P b = apply_point(sampled.transform,
                                conic::random_point_on<R>(sampled.kind, rng, 20));
        const auto ab = oplus(sampled.mc, a, b);
        CHECK(ab.sum == oplus(sampled.mc, b, a).sum);
        CHECK(sampled.mc.carries(ab.sum));
        // Trace invariants: p sits on both lines and off the conic.
        CHECK(incident(ab.trace.meet_on_line, sampled.mc.marked_line()));
        CHECK(incident(ab.trace.meet_on_line, ab.trace.chord));
        CHECK(!conic_contains(sampled.mc.conic(), ab.trace.meet_on_line));
    }
}

TEST_CASE("doubling a point uses the tangent chord") {
    const auto circle = conic::standard_marked<R>(StandardKind::Circle);
    const P a = pt(3, 5, 4, 5);
    const auto doubled = oplus(circle, a, a);
    CHECK(doubled.trace.chord == tangent_line(circle.conic(), a));
    // Rotation closed form: angle doubling.
    CHECK(doubled.sum == pt(-7, 25, 24, 25));
}

TEST_CASE("operands must lie on the conic and off the marked line") {
    const auto circle = conic::standard_marked<R>(StandardKind::Circle);
    CHECK_THROWS_AS(oplus(circle, pt(1, 2, 1, 2), circle.identity()), conic::PointNotOnConic);
    CHECK_THROWS_AS(inverse(circle, pt(1, 2, 1, 2)), conic::PointNotOnConic);

    const auto hyperbola = conic::standard_marked<R>(StandardKind::Hyperbola);
    const P at_inf(R(1), R(0), R(0));  // on xy = z^2 and on the line at infinity
    CHECK_THROWS_AS(oplus(hyperbola, at_inf, hyperbola.identity()), conic::PointOnMarkedLine);
}

TEST_CASE("associativity triples") {
    const auto parabola = conic::standard_marked<R>(StandardKind::Parabola);
    CHECK(is_associative_triple(parabola, pt(1, 1, 1, 1), pt(2, 1, 4, 1), pt(3, 1, 9, 1)));
    // Both associations equal (6, 36) by the closed form.
    CHECK(oplus(parabola, oplus(parabola, pt(1, 1, 1, 1), pt(2, 1, 4, 1)).sum, pt(3, 1, 9, 1)).sum ==
          pt(6, 1, 36, 1));

    SplitMix64 rng(53);
    for (int i = 0; i < 300; ++i) {
        const auto sampled = conic::sample_marked_conic<R>(rng, 15);
        const P a = apply_point(sampled.transform,
                                conic::random_point_on<R>(sampled.kind, rng, 15));
        const P b = apply_point(sampled.transform,
                                conic::random_point_on<R>(sampled.kind, rng, 15));
        const P c = apply_point(sampled.transform,
                                conic::random_point_on<R>(sampled.kind, rng, 15));
        CHECK(is_associative_triple(sampled.mc, a, b, c));
        CHECK(is_associative_triple(sampled.mc, a, sampled.mc.identity(), c));
    }
}
