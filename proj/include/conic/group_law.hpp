#pragma once

#include <array>

#include "conic/conic.hpp"
#include "conic/errors.hpp"
#include "conic/projective.hpp"
#include "conic/scalar.hpp"

namespace conic {

template <ScalarField S>
struct OplusResult {
    Point<S> sum;
    ChordTrace<S> trace;
};

namespace detail {

template <ScalarField S>
void require_carrier(const MarkedConic<S>& mc, const Point<S>& p, const char* who) {
    if (!conic_contains(mc.conic(), p))
        throw PointNotOnConic(std::string(who) + ": " + p.str() + " is not on the conic");
    if (incident(p, mc.marked_line()))
        throw PointOnMarkedLine(std::string(who) + ": " + p.str() + " is on the marked line");
}

}  // namespace detail

/// The marked-conic group operation.  Draw the chord a-b (tangent if a = b),
/// meet it with the marked line at p, then take the second intersection of
/// the line o-p with the conic; if o-p is tangent at o the sum is o itself.
/// Tangency at o is detected as B(o, p) = 0, one scalar test.
template <ScalarField S>
OplusResult<S> oplus(const MarkedConic<S>& mc, const Point<S>& a, const Point<S>& b) {
    detail::require_carrier(mc, a, "oplus");
    detail::require_carrier(mc, b, "oplus");
    const Conic<S>& x = mc.conic();
    const Line<S>& marked = mc.marked_line();
    const Point<S>& o = mc.identity();

    Line<S> chord = chord_or_tangent(x, a, b);
    if (chord == marked) throw InternalError("chord equals the marked line");
    Point<S> p = meet(chord, marked);
    Line<S> second = join(o, p);

    Point<S> sum = is_zero(x.polar(o, p)) ? o : second_intersection(x, o, p);
    if (incident(sum, marked)) throw InternalError("oplus closure: sum on marked line");
    return OplusResult<S>{std::move(sum),
                          ChordTrace<S>(x, marked, std::move(chord), std::move(p), std::move(second))};
}

/// Group inverse: meet the tangent at o with the marked line at p_o; the
/// inverse of a is the second intersection of the line a-p_o with the conic.
template <ScalarField S>
Point<S> inverse(const MarkedConic<S>& mc, const Point<S>& a) {
    detail::require_carrier(mc, a, "inverse");
    const Line<S> tangent_o = tangent_line(mc.conic(), mc.identity());
    const Point<S> p_o = meet(tangent_o, mc.marked_line());
    Point<S> inv = second_intersection(mc.conic(), a, p_o);
    if (incident(inv, mc.marked_line())) throw InternalError("inverse closure: result on marked line");
    return inv;
}

/// Affine point (x, y) used by the closed-form standard operations.
template <ScalarField S>
using AffinePair = std::array<S, 2>;

namespace detail {

template <ScalarField S>
void require_standard(StandardKind kind, const AffinePair<S>& p) {
    bool ok = false;
    switch (kind) {
        case StandardKind::Parabola: ok = is_zero(p[0] * p[0] - p[1]); break;
        case StandardKind::Hyperbola: ok = is_zero(p[0] * p[1] - S(1)); break;
        case StandardKind::Circle: ok = is_zero(p[0] * p[0] + p[1] * p[1] - S(1)); break;
    }
    if (!ok)
        throw PointNotOnConic("standard_oplus: (" + Point<S>::affine(p[0], p[1]).str() +
                              ") not on the standard " + std::string(to_string(kind)));
}

}  // namespace detail

/// Closed forms of the three standard group laws, computed with no geometry:
///   parabola  (a,a^2)+(b,b^2)   = (a+b, (a+b)^2)      -- real addition
///   hyperbola (a,1/a)+(b,1/b)   = (ab, 1/(ab))        -- real multiplication
///   circle    (a,b)+(c,d)       = (ac-bd, ad+bc)      -- plane rotation
template <ScalarField S>
AffinePair<S> standard_oplus(StandardKind kind, const AffinePair<S>& a, const AffinePair<S>& b) {
    detail::require_standard(kind, a);
    detail::require_standard(kind, b);
    switch (kind) {
        case StandardKind::Parabola: {
            const S s = a[0] + b[0];
            return {s, s * s};
        }
        case StandardKind::Hyperbola: {
            const S m = a[0] * b[0];
            return {m, S(1) / m};
        }
        case StandardKind::Circle:
            return {a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0]};
    }
    throw InvalidParameter("unknown standard conic kind");
}

/// (a+b)+c == a+(b+c), compared projectively exactly.
template <ScalarField S>
bool is_associative_triple(const MarkedConic<S>& mc, const Point<S>& a, const Point<S>& b,
                           const Point<S>& c) {
    const Point<S> left = oplus(mc, oplus(mc, a, b).sum, c).sum;
    const Point<S> right = oplus(mc, a, oplus(mc, b, c).sum).sum;
    return left == right;
}

}  // namespace conic
