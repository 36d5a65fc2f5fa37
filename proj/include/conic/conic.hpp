#pragma once

#include <array>
#include <ostream>
#include <sstream>
#include <string>

#include "conic/errors.hpp"
#include "conic/projective.hpp"
#include "conic/scalar.hpp"

namespace conic {

/// Nondegenerate conic Ax^2 + Bxy + Cy^2 + Dxz + Eyz + Fz^2 = 0, stored as
/// the six coefficients (A..F) modulo scale.  Storing coefficients instead of
/// the halved symmetric matrix keeps the exact backend integer-friendly; the
/// bilinear form is the full polarization, so polar(p, p) = 2 Q(p).
template <ScalarField S>
class Conic {
  public:
    explicit Conic(std::array<S, 6> coeffs) : c_(std::move(coeffs)) {
        if (detail::all_zero(c_.data(), 6)) throw DegenerateConic();
        detail::canonicalize_span(c_.data(), 6);
        // 4 det(M) for M = [[A,B/2,D/2],[B/2,C,E/2],[D/2,E/2,F]].
        const S det4 = S(4) * c_[0] * c_[2] * c_[5] + c_[1] * c_[3] * c_[4] -
                       c_[0] * c_[4] * c_[4] - c_[2] * c_[3] * c_[3] - c_[5] * c_[1] * c_[1];
        if (is_zero(det4)) throw DegenerateConic();
    }
    Conic(S a, S b, S c, S d, S e, S f)
        : Conic(std::array<S, 6>{std::move(a), std::move(b), std::move(c),
                                 std::move(d), std::move(e), std::move(f)}) {}

    /// y = x^2, homogenized as x^2 - yz = 0.
    static Conic parabola() { return Conic(S(1), S(0), S(0), S(0), S(-1), S(0)); }
    /// xy = 1, homogenized as xy - z^2 = 0.
    static Conic hyperbola() { return Conic(S(0), S(1), S(0), S(0), S(0), S(-1)); }
    /// x^2 + y^2 = 1, homogenized as x^2 + y^2 - z^2 = 0.
    static Conic unit_circle() { return Conic(S(1), S(0), S(1), S(0), S(0), S(-1)); }

    const std::array<S, 6>& coeffs() const { return c_; }

    /// Quadratic form Q(p).
    S eval(const Point<S>& p) const {
        const auto& v = p.coords();
        return c_[0] * v[0] * v[0] + c_[1] * v[0] * v[1] + c_[2] * v[1] * v[1] +
               c_[3] * v[0] * v[2] + c_[4] * v[1] * v[2] + c_[5] * v[2] * v[2];
    }

    /// Polarization B(p, q) = 2 p^T M q; B(p, p) = 2 Q(p).
    S polar(const Point<S>& p, const Point<S>& q) const {
        const auto& a = p.coords();
        const auto& b = q.coords();
        return S(2) * c_[0] * a[0] * b[0] + c_[1] * (a[0] * b[1] + a[1] * b[0]) +
               S(2) * c_[2] * a[1] * b[1] + c_[3] * (a[0] * b[2] + a[2] * b[0]) +
               c_[4] * (a[1] * b[2] + a[2] * b[1]) + S(2) * c_[5] * a[2] * b[2];
    }

    /// Symmetric matrix M with halved off-diagonal entries.
    Mat3<S> matrix() const {
        const S half = S(1) / S(2);
        return {{{c_[0], c_[1] * half, c_[3] * half},
                 {c_[1] * half, c_[2], c_[4] * half},
                 {c_[3] * half, c_[4] * half, c_[5]}}};
    }

    friend bool operator==(const Conic& a, const Conic& b) {
        return detail::proportional(a.c_.data(), b.c_.data(), 6);
    }
    friend bool operator!=(const Conic& a, const Conic& b) { return !(a == b); }

    std::string str() const {
        std::ostringstream os;
        os << "conic(" << c_[0];
        for (int i = 1; i < 6; ++i) os << " " << c_[i];
        os << ")";
        return os.str();
    }
    friend std::ostream& operator<<(std::ostream& os, const Conic& x) { return os << x.str(); }

  private:
    std::array<S, 6> c_;
};

template <ScalarField S>
bool conic_contains(const Conic<S>& x, const Point<S>& p) {
    return is_zero(x.eval(p));
}

/// Tangent line at a point of the conic: the polar line 2Mp.
template <ScalarField S>
Line<S> tangent_line(const Conic<S>& x, const Point<S>& p) {
    if (!conic_contains(x, p)) throw PointNotOnConic("tangent_line: " + p.str() + " is not on the conic");
    const auto& c = x.coeffs();
    const auto& v = p.coords();
    return Line<S>(S(2) * c[0] * v[0] + c[1] * v[1] + c[3] * v[2],
                   c[1] * v[0] + S(2) * c[2] * v[1] + c[4] * v[2],
                   c[3] * v[0] + c[4] * v[1] + S(2) * c[5] * v[2]);
}

/// Line a-b, degenerating to the tangent when the two points coincide.
template <ScalarField S>
Line<S> chord_or_tangent(const Conic<S>& x, const Point<S>& a, const Point<S>& b) {
    if (!conic_contains(x, a)) throw PointNotOnConic("chord_or_tangent: " + a.str() + " is not on the conic");
    if (!conic_contains(x, b)) throw PointNotOnConic("chord_or_tangent: " + b.str() + " is not on the conic");
    if (a == b) return tangent_line(x, a);
    return join(a, b);
}

/// The other intersection of the conic with the line through `known` (on the
/// conic) and `other`.  Closed form on the pencil s*known + t*other:
/// Q(s*known + t*other) = t * (s * B(known,other) + t * Q(other)), so the
/// second root is Q(other)*known - B(known,other)*other.  Returns `known`
/// itself exactly when the line is tangent there.
template <ScalarField S>
Point<S> second_intersection(const Conic<S>& x, const Point<S>& known, const Point<S>& other) {
    if (!conic_contains(x, known)) throw PointNotOnConic("second_intersection: " + known.str() + " is not on the conic");
    if (known == other) throw IdenticalPoints("second_intersection: direction equals base point");
    const S qd = x.eval(other);
    const S bb = x.polar(known, other);
    Triple<S> r{qd * known[0] - bb * other[0],
                qd * known[1] - bb * other[1],
                qd * known[2] - bb * other[2]};
    if (detail::all_zero(r.data(), 3)) throw IdenticalPoints("second_intersection: degenerate pencil");
    return Point<S>(std::move(r));
}

/// Conic image under a projective transform: congruence by the adjugate,
/// adj(T)^T M adj(T), which is (T^-1)^T M T^-1 up to scale.
template <ScalarField S>
Conic<S> apply_conic(const Transform<S>& t, const Conic<S>& x) {
    const Mat3<S> adj = detail::mat_adjugate(t.matrix());
    const Mat3<S> m = detail::mat_mul(detail::mat_transpose(adj), detail::mat_mul(x.matrix(), adj));
    return Conic<S>(m[0][0], S(2) * m[0][1], m[1][1], S(2) * m[0][2], S(2) * m[1][2], m[2][2]);
}

/// A conic with a marked line L and an identity point o on the conic but off
/// L; the carrier of the group is X_L, the conic points not on L.
template <ScalarField S>
class MarkedConic {
  public:
    MarkedConic(Conic<S> conic, Line<S> marked_line, Point<S> identity)
        : conic_(std::move(conic)), line_(std::move(marked_line)), identity_(std::move(identity)) {
        if (!conic_contains(conic_, identity_)) throw IdentityNotOnConic();
        if (incident(identity_, line_)) throw IdentityOnMarkedLine();
    }

    const Conic<S>& conic() const { return conic_; }
    const Line<S>& marked_line() const { return line_; }
    const Point<S>& identity() const { return identity_; }

    /// Membership in the carrier X_L.
    bool carries(const Point<S>& p) const {
        return conic_contains(conic_, p) && !incident(p, line_);
    }

  private:
    Conic<S> conic_;
    Line<S> line_;
    Point<S> identity_;
};

template <ScalarField S>
MarkedConic<S> make_marked(Conic<S> x, Line<S> l, Point<S> o) {
    return MarkedConic<S>(std::move(x), std::move(l), std::move(o));
}

/// The intermediate data of one chord-through-the-marked-line construction:
/// the chord itself, its meet p with L, and the line o-p.  Kept alongside
/// results for rendering and failure diagnostics.
template <ScalarField S>
struct ChordTrace {
    Line<S> chord;
    Point<S> meet_on_line;
    Line<S> second_line;

    ChordTrace(const Conic<S>& x, const Line<S>& marked, Line<S> chord_in, Point<S> p,
               Line<S> second)
        : chord(std::move(chord_in)), meet_on_line(std::move(p)), second_line(std::move(second)) {
        if (!incident(meet_on_line, marked) || !incident(meet_on_line, chord))
            throw InternalError("chord trace meet incidence");
        if (conic_contains(x, meet_on_line))
            throw InternalError("chord meets the marked line on the conic");
    }
};

/// The three standard marked conics; every marked conic is projectively
/// equivalent to exactly one of them.
enum class StandardKind { Parabola, Hyperbola, Circle };

inline const char* to_string(StandardKind k) {
    switch (k) {
        case StandardKind::Parabola: return "parabola";
        case StandardKind::Hyperbola: return "hyperbola";
        case StandardKind::Circle: return "circle";
    }
    return "?";
}

template <ScalarField S>
MarkedConic<S> standard_marked(StandardKind kind) {
    switch (kind) {
        case StandardKind::Parabola:
            return MarkedConic<S>(Conic<S>::parabola(), Line<S>::infinity(), Point<S>::affine(S(0), S(0)));
        case StandardKind::Hyperbola:
            return MarkedConic<S>(Conic<S>::hyperbola(), Line<S>::infinity(), Point<S>::affine(S(1), S(1)));
        case StandardKind::Circle:
            return MarkedConic<S>(Conic<S>::unit_circle(), Line<S>::infinity(), Point<S>::affine(S(1), S(0)));
    }
    throw InvalidParameter("unknown standard conic kind");
}

template <ScalarField S>
MarkedConic<S> apply_marked(const Transform<S>& t, const MarkedConic<S>& mc) {
    return MarkedConic<S>(apply_conic(t, mc.conic()), apply_line(t, mc.marked_line()),
                          apply_point(t, mc.identity()));
}

}  // namespace conic
