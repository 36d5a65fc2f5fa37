#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "conic/projective.hpp"
#include "conic/sampler.hpp"

using conic::Line;
using conic::Point;
using conic::Rational;
using conic::SplitMix64;
using conic::Transform;
using R = Rational;
using P = Point<R>;
using L = Line<R>;
using T = Transform<R>;

namespace {

P random_point(SplitMix64& rng, long bound = 20) {
    for (;;) {
        try {
            return P(conic::random_scalar<R>(rng, bound), conic::random_scalar<R>(rng, bound),
                     conic::random_scalar<R>(rng, bound));
        } catch (const conic::InvalidParameter&) {
            continue;  // all-zero draw
        }
    }
}

L random_line(SplitMix64& rng, long bound = 20) {
    for (;;) {
        try {
            return L(conic::random_scalar<R>(rng, bound), conic::random_scalar<R>(rng, bound),
                     conic::random_scalar<R>(rng, bound));
        } catch (const conic::InvalidParameter&) {
            continue;
        }
    }
}

}  // namespace

TEST_CASE("join of basis points") {
    CHECK(join(P(R(1), R(0), R(0)), P(R(0), R(1), R(0))) == L::infinity());
    CHECK(join(P(R(0), R(0), R(1)), P(R(1), R(1), R(1))) == L(R(1), R(-1), R(0)));
    CHECK_THROWS_AS(join(P(R(1), R(2), R(1)), P(R(2), R(4), R(2))), conic::IdenticalPoints);
}

TEST_CASE("join result is incident to both points") {
    const P p(R(1), R(2), R(1)), q(R(3), R(4), R(1));
    const L l = join(p, q);
    // Oracle: substitution, u*x + v*y + w*z = 0.
    CHECK(l[0] * p[0] + l[1] * p[1] + l[2] * p[2] == R(0));
    CHECK(l[0] * q[0] + l[1] * q[1] + l[2] * q[2] == R(0));
}

TEST_CASE("meet of lines") {
    CHECK(meet(L(R(1), R(0), R(0)), L(R(0), R(1), R(0))) == P(R(0), R(0), R(1)));
    // x = z meets the line at infinity in the vertical direction.
    CHECK(meet(L(R(1), R(0), R(-1)), L::infinity()) == P(R(0), R(1), R(0)));
    CHECK_THROWS_AS(meet(L(R(1), R(1), R(0)), L(R(2), R(2), R(0))), conic::IdenticalLines);
}

TEST_CASE("parallel affine lines meet at infinity") {
    const P at_inf = meet(L(R(1), R(1), R(-1)), L(R(1), R(1), R(-2)));
    CHECK(at_inf.at_infinity());
    CHECK(incident(at_inf, L::infinity()));
}

TEST_CASE("incidence") {
    CHECK(incident(P(R(1), R(1), R(1)), L(R(1), R(-1), R(0))));
    CHECK(incident(P(R(1), R(0), R(0)), L::infinity()));
    CHECK(!incident(P(R(1), R(1), R(1)), L::infinity()));
}

TEST_CASE("collinearity") {
    CHECK(collinear(P::affine(R(1), R(0)), P::affine(R(2), R(0)), P::affine(R(3), R(0))));
    CHECK(!collinear(P::affine(R(0), R(0)), P::affine(R(1), R(0)), P::affine(R(0), R(1))));
    const P p = P::affine(R(2), R(5));
    CHECK(collinear(p, P::affine(R(1), R(1)), p));
}

TEST_CASE("collinearity is permutation and rescale invariant") {
    SplitMix64 rng(3);
    for (int i = 0; i < 300; ++i) {
        const P p = random_point(rng), q = random_point(rng), r = random_point(rng);
        const bool c = collinear(p, q, r);
        CHECK(collinear(q, r, p) == c);
        CHECK(collinear(r, p, q) == c);
        CHECK(collinear(q, p, r) == c);
        const R s = conic::random_scalar<R>(rng, 10);
        if (!conic::is_zero(s)) {
            const P scaled(p[0] * s, p[1] * s, p[2] * s);
            CHECK(collinear(scaled, q, r) == c);
        }
    }
}

TEST_CASE("point equality is equality up to scale") {
    CHECK(P(R(2), R(4), R(6)) == P(R(1), R(2), R(3)));
    CHECK(P(R(-1), R(-2), R(-3)) == P(R(1), R(2), R(3)));
    CHECK(P(R(1), R(2), R(3)) != P(R(1), R(2), R(4)));
    CHECK_THROWS_AS(P(R(0), R(0), R(0)), conic::InvalidParameter);
}

TEST_CASE("canonical representative has coprime coordinates") {
    const P p(R(4, 6), R(8, 6), R(0));
    CHECK(p[0] == R(1));
    CHECK(p[1] == R(2));
    CHECK(p[2] == R(0));
    // First nonzero coordinate forced positive.
    const P q(R(-2), R(4), R(-8));
    CHECK(q[0] == R(1));
    CHECK(q[1] == R(-2));
    CHECK(q[2] == R(4));
}

TEST_CASE("transform application basics") {
    const T id = T::identity();
    const P p(R(1), R(2), R(1));
    CHECK(apply_point(id, p) == p);

    const T swap_axes(conic::Mat3<R>{{{R(0), R(1), R(0)}, {R(1), R(0), R(0)}, {R(0), R(0), R(1)}}});
    CHECK(apply_point(swap_axes, p) == P(R(2), R(1), R(1)));
    CHECK_THROWS_AS(T(conic::Mat3<R>{{{R(1), R(0), R(0)}, {R(1), R(0), R(0)}, {R(0), R(0), R(1)}}}),
                    conic::SingularTransform);
}

TEST_CASE("transforms preserve incidence") {
    SplitMix64 rng(5);
    for (int i = 0; i < 1000; ++i) {
        const T t = conic::random_transform<R>(rng, 10);
        const L l = random_line(rng);
        const P q = random_point(rng);
        // A point on l: its meet with any line through q not equal to l.
        P on_l = [&] {
            for (;;) {
                const L m = random_line(rng);
                if (m != l) return meet(l, m);
            }
        }();
        CHECK(incident(on_l, l));
        CHECK(incident(apply_point(t, on_l), apply_line(t, l)));
        CHECK(incident(q, l) == incident(apply_point(t, q), apply_line(t, l)));
    }
}

TEST_CASE("compose and inverse") {
    CHECK(inverse(T::identity()) == T::identity());
    CHECK(inverse(T::diagonal(R(2), R(3), R(1))) == T::diagonal(R(1, 2), R(1, 3), R(1)));
    SplitMix64 rng(9);
    for (int i = 0; i < 200; ++i) {
        const T t = conic::random_transform<R>(rng, 10);
        CHECK(compose(t, inverse(t)) == T::identity());
        CHECK(compose(inverse(t), t) == T::identity());
    }
}

TEST_CASE("join meet duality") {
    SplitMix64 rng(13);
    for (int i = 0; i < 500; ++i) {
        const P p = random_point(rng), q = random_point(rng), r = random_point(rng);
        if (p == q || p == r || collinear(p, q, r)) continue;
        CHECK(meet(join(p, q), join(p, r)) == p);
    }
}

TEST_CASE("collinearity is a projective invariant") {
    SplitMix64 rng(17);
    for (int i = 0; i < 1000; ++i) {
        const T t = conic::random_transform<R>(rng, 10);
        const P p = random_point(rng), q = random_point(rng), r = random_point(rng);
        CHECK(collinear(p, q, r) ==
              collinear(apply_point(t, p), apply_point(t, q), apply_point(t, r)));
    }
}

TEST_CASE("send_to_infinity maps the line to (0,0,1)") {
    CHECK(send_to_infinity(L::infinity()) == T::identity());

    const T t = send_to_infinity(L(R(1), R(0), R(0)));
    CHECK(t.matrix()[2][0] == R(1));
    CHECK(apply_line(t, L(R(1), R(0), R(0))) == L::infinity());

    CHECK(apply_line(send_to_infinity(L(R(1), R(1), R(1))), L(R(1), R(1), R(1))) == L::infinity());

    SplitMix64 rng(19);
    for (int i = 0; i < 1000; ++i) {
        const L l = random_line(rng);
        const T s = send_to_infinity(l);
        CHECK(apply_line(s, l) == L::infinity());
        // Any point of l lands at infinity (third coordinate zero).
        const L m = random_line(rng);
        if (m == l) continue;
        const P image = apply_point(s, meet(l, m));
        CHECK(conic::is_zero(image[2]));
    }
}
