#pragma once

#include <array>
#include <string>
#include <utility>

#include "conic/conic.hpp"
#include "conic/errors.hpp"
#include "conic/group_law.hpp"
#include "conic/projective.hpp"
#include "conic/scalar.hpp"

namespace conic {

/// How the conic meets the marked line: at a double point, at two distinct
/// real points, or not at all.
enum class ConicClass { Parabola, Hyperbola, Ellipse };

inline const char* to_string(ConicClass k) {
    switch (k) {
        case ConicClass::Parabola: return "parabola";
        case ConicClass::Hyperbola: return "hyperbola";
        case ConicClass::Ellipse: return "ellipse";
    }
    return "?";
}

inline StandardKind standard_kind_for(ConicClass k) {
    switch (k) {
        case ConicClass::Parabola: return StandardKind::Parabola;
        case ConicClass::Hyperbola: return StandardKind::Hyperbola;
        case ConicClass::Ellipse: return StandardKind::Circle;
    }
    throw InvalidParameter("unknown conic class");
}

namespace detail {

/// Two deterministic points spanning a line: the meets with the coordinate
/// lines, first nonzero candidate then the first one independent of it.
template <ScalarField S>
std::pair<Point<S>, Point<S>> span_of_line(const Line<S>& l) {
    const std::array<Triple<S>, 3> axes = {Triple<S>{S(1), S(0), S(0)},
                                           Triple<S>{S(0), S(1), S(0)},
                                           Triple<S>{S(0), S(0), S(1)}};
    std::array<Triple<S>, 3> cand;
    for (int i = 0; i < 3; ++i) cand[i] = cross(l.coeffs(), axes[i]);
    int first = -1;
    for (int i = 0; i < 3 && first < 0; ++i)
        if (!all_zero(cand[i].data(), 3)) first = i;
    for (int j = first + 1; j < 3; ++j) {
        if (all_zero(cand[j].data(), 3)) continue;
        Triple<S> c = cross(cand[first], cand[j]);
        if (!all_zero(c.data(), 3))
            return {Point<S>(cand[first]), Point<S>(cand[j])};
    }
    throw InternalError("line has no two-point span");
}

}  // namespace detail

/// Sign of the discriminant of the conic restricted to the marked line:
/// zero -> parabola class, positive -> hyperbola class, negative -> ellipse
/// class.  Exact on the exact backend.
template <ScalarField S>
ConicClass classify(const MarkedConic<S>& mc) {
    const auto [r, s] = detail::span_of_line(mc.marked_line());
    // Q(x r + y s) = Q(r) x^2 + B(r,s) xy + Q(s) y^2 on the line's parameter.
    const S beta = mc.conic().polar(r, s);
    const S disc = beta * beta - S(4) * mc.conic().eval(r) * mc.conic().eval(s);
    const int sg = sign(disc);
    if (sg == 0) return ConicClass::Parabola;
    return sg > 0 ? ConicClass::Hyperbola : ConicClass::Ellipse;
}

template <ScalarField S>
struct Normalization {
    Transform<S> transform;  // maps the source marked conic onto the target
    MarkedConic<S> target;   // one of the three standard marked conics
    ConicClass klass;
};

namespace detail {

template <ScalarField S>
struct ReductionState {
    Conic<S> conic;
    Point<S> o;
    Transform<S> total;

    void step(const Transform<S>& t) {
        conic = apply_conic(t, conic);
        o = apply_point(t, o);
        total = compose(t, total);
    }
};

template <ScalarField S>
Transform<S> affine_map(S m00, S m01, S tx, S m10, S m11, S ty) {
    return Transform<S>(Mat3<S>{{{std::move(m00), std::move(m01), std::move(tx)},
                                 {std::move(m10), std::move(m11), std::move(ty)},
                                 {S(0), S(0), S(1)}}});
}

template <ScalarField S>
Transform<S> swap_xy() {
    return affine_map<S>(S(0), S(1), S(0), S(1), S(0), S(0));
}

/// Completing the square in x: u = x + (B y + D)/(2A); kills the xy and xz
/// coefficients.  Pivot A must be nonzero.
template <ScalarField S>
void eliminate_x(ReductionState<S>& st) {
    const auto& c = st.conic.coeffs();
    const S two_a = S(2) * c[0];
    st.step(affine_map<S>(S(1), c[1] / two_a, c[3] / two_a, S(0), S(1), S(0)));
}

/// Pivot rule for the affine quadratic part: largest-magnitude diagonal
/// entry first, ties by index (x before y).  Swaps axes when y wins.
template <ScalarField S>
void pivot_diagonal(ReductionState<S>& st) {
    const auto& c = st.conic.coeffs();
    if (abs_less(c[0], c[2])) st.step(swap_xy<S>());
}

template <ScalarField S>
S sqrt_or_throw(const S& v, const char* what) {
    auto r = v.try_sqrt();
    if (!r) {
        std::ostringstream os;
        os << what << " = " << v << " is not a rational square";
        throw IrrationalNormalization(os.str());
    }
    return *r;
}

// After reduction the conic must equal its standard target exactly (up to
// scale / within tolerance); anything else is a kernel bug.
template <ScalarField S>
void check_reduced(const ReductionState<S>& st, const Conic<S>& want) {
    if (st.conic != want) throw InternalError("affine reduction missed its target conic");
}

template <ScalarField S>
void reduce_parabola(ReductionState<S>& st) {
    pivot_diagonal(st);
    eliminate_x(st);
    const auto& c = st.conic.coeffs();
    // A u^2 + E y + F = 0 now; E = 0 would make it a line pair.
    if (is_zero(c[4])) throw InternalError("degenerate parabola reduction");
    // y' = -(E y + F)/A so that y' = u^2.
    st.step(affine_map<S>(S(1), S(0), S(0), S(0), -c[4] / c[0], -c[5] / c[0]));
    check_reduced(st, Conic<S>::parabola());
    // Identity (p, p^2) slides to the vertex under x -> x - p, y -> y - 2px + p^2.
    const S p = st.o.to_affine()[0];
    st.step(affine_map<S>(S(1), S(0), -p, S(-2) * p, S(1), p * p));
    if (st.o != Point<S>::affine(S(0), S(0))) throw InternalError("parabola identity relocation");
}

template <ScalarField S>
void reduce_hyperbola(ReductionState<S>& st) {
    {
        const auto& c = st.conic.coeffs();
        if (is_zero(c[0]) && is_zero(c[2])) {
            // Pure xy term: x = u + v, y = u - v creates usable diagonal entries.
            st.step(Transform<S>(Mat3<S>{{{S(1, 2), S(1, 2), S(0)},
                                          {S(1, 2), S(-1, 2), S(0)},
                                          {S(0), S(0), S(1)}}}));
        }
    }
    pivot_diagonal(st);
    eliminate_x(st);
    {
        const auto& c = st.conic.coeffs();
        // A u^2 + C y^2 + E y + F with A, C of opposite sign.
        st.step(affine_map<S>(S(1), S(0), S(0), S(0), S(1), c[4] / (S(2) * c[2])));
    }
    const auto& c = st.conic.coeffs();
    S alpha = c[0], beta = c[2], rhs = -c[5];
    if (is_zero(rhs)) throw InternalError("degenerate hyperbola reduction");
    if (sign(alpha) * sign(beta) >= 0) throw InternalError("hyperbola diagonal signs");
    if (sign(rhs) < 0) {
        alpha = -alpha;
        beta = -beta;
        rhs = -rhs;
    }
    if (sign(alpha) < 0) {
        std::swap(alpha, beta);
        st.step(swap_xy<S>());
    }
    // alpha u^2 - gamma v^2 = rhs with everything positive; the product map
    // (u - (s/alpha) v) * ((alpha u + s v)/rhs) = 1 needs s = sqrt(alpha*gamma).
    const S gamma = -beta;
    const S s = sqrt_or_throw(alpha * gamma, "asymptote scale^2");
    st.step(affine_map<S>(S(1), -s / alpha, S(0), alpha / rhs, s / rhs, S(0)));
    check_reduced(st, Conic<S>::hyperbola());

    auto x0 = st.o.to_affine()[0];
    if (sign(x0) < 0) {
        st.step(swap_xy<S>());
        x0 = st.o.to_affine()[0];
    }
    st.step(Transform<S>::diagonal(S(1) / x0, x0, S(1)));
    if (st.o != Point<S>::affine(S(1), S(1))) throw InternalError("hyperbola identity relocation");
}

template <ScalarField S>
void reduce_ellipse(ReductionState<S>& st) {
    pivot_diagonal(st);
    eliminate_x(st);
    {
        const auto& c = st.conic.coeffs();
        st.step(affine_map<S>(S(1), S(0), S(0), S(0), S(1), c[4] / (S(2) * c[2])));
    }
    const auto& c = st.conic.coeffs();
    // Canonical scaling keeps the leading coefficient positive, so a real
    // ellipse reads A u^2 + C v^2 = -F with A, C > 0 and F < 0.
    if (sign(c[0]) <= 0 || sign(c[2]) <= 0) throw InternalError("ellipse diagonal signs");
    const S rhs = -c[5];
    if (sign(rhs) <= 0) throw InternalError("ellipse with a marked identity has real points");
    const S s1 = sqrt_or_throw(c[0] / rhs, "x axis scale^2");
    const S s2 = sqrt_or_throw(c[2] / rhs, "y axis scale^2");
    st.step(Transform<S>::diagonal(s1, s2, S(1)));
    check_reduced(st, Conic<S>::unit_circle());

    const auto o = st.o.to_affine();
    st.step(affine_map<S>(o[0], o[1], S(0), -o[1], o[0], S(0)));
    if (st.o != Point<S>::affine(S(1), S(0))) throw InternalError("circle identity relocation");
}

}  // namespace detail

/// Produce the projective transformation carrying a marked conic onto its
/// standard representative: marked line to the line at infinity, then an
/// affine reduction of the quadratic form, then identity relocation.  On the
/// exact backend the axis rescalings may need irrational square roots, in
/// which case IrrationalNormalization is raised and the caller should rerun
/// on the float backend.
template <ScalarField S>
Normalization<S> normalize(const MarkedConic<S>& mc) {
    const Transform<S> to_inf = send_to_infinity(mc.marked_line());
    detail::ReductionState<S> st{apply_conic(to_inf, mc.conic()),
                                 apply_point(to_inf, mc.identity()), to_inf};

    const ConicClass klass = classify(mc);
    switch (klass) {
        case ConicClass::Parabola: detail::reduce_parabola(st); break;
        case ConicClass::Hyperbola: detail::reduce_hyperbola(st); break;
        case ConicClass::Ellipse: detail::reduce_ellipse(st); break;
    }

    MarkedConic<S> target = standard_marked<S>(standard_kind_for(klass));
    if (apply_line(st.total, mc.marked_line()) != Line<S>::infinity())
        throw InternalError("normalization did not send the marked line to infinity");
    if (st.conic != target.conic() || st.o != target.identity())
        throw InternalError("normalization missed the standard marked conic");
    return Normalization<S>{std::move(st.total), std::move(target), klass};
}

/// One instance of the homomorphism identity T(a + b) = T(a) + T(b) between
/// a marked conic and its image under an invertible transform.
template <ScalarField S>
bool pushforward_holds(const MarkedConic<S>& mc, const Transform<S>& t, const Point<S>& a,
                       const Point<S>& b) {
    MarkedConic<S> image = [&] {
        try {
            return apply_marked(t, mc);
        } catch (const Error& e) {
            throw InternalError(std::string("image of a marked conic is not marked: ") + e.what());
        }
    }();
    const Point<S> lhs = apply_point(t, oplus(mc, a, b).sum);
    const Point<S> rhs = oplus(image, apply_point(t, a), apply_point(t, b)).sum;
    return lhs == rhs;
}

}  // namespace conic
