#pragma once

#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "conic/conic.hpp"
#include "conic/errors.hpp"
#include "conic/projective.hpp"
#include "conic/sampler.hpp"
#include "conic/scalar.hpp"

namespace conic {

/// A parsed scene file: one conic, an optional marked line (defaulting to the
/// line at infinity), an optional identity point, and named points that must
/// all lie on the conic.
///
/// The format is line oriented; '#' starts a comment:
///
///     backend exact            # or: float   (optional, default exact)
///     epsilon 1e-9             # float backend tolerance (optional)
///     conic 1 0 1 0 0 -1       # A B C D E F of Ax^2+Bxy+Cy^2+Dxz+Eyz+Fz^2
///     line 0 0 1               # marked line (optional, default 0 0 1)
///     identity 1 0             # affine x y, or homogeneous x y z
///     point P1 3/5 4/5
///
/// Numbers are exact rationals "p/q" or integers; plain decimals are accepted
/// only when the float backend is selected.
template <ScalarField S>
struct Scene {
    Conic<S> conic;
    Line<S> marked_line;
    std::optional<Point<S>> identity;
    std::vector<std::pair<std::string, Point<S>>> points;
    BackendKind backend = BackendKind::Exact;
    std::optional<double> epsilon;

    const Point<S>* find(const std::string& name) const {
        for (const auto& [n, p] : points)
            if (n == name) return &p;
        return nullptr;
    }

    const Point<S>& at(const std::string& name) const {
        if (const Point<S>* p = find(name)) return *p;
        throw ValidationFailed("no point named '" + name + "' in the scene");
    }

    /// The marked conic (X, L, o); requires the identity field.
    MarkedConic<S> marked() const {
        if (!identity) throw ValidationFailed("scene has no identity point");
        return MarkedConic<S>(conic, marked_line, *identity);
    }
};

namespace detail {

inline std::vector<std::string> scene_tokens(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line.substr(0, line.find('#')));
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

inline bool valid_point_name(const std::string& name) {
    if (name.empty() || (std::isdigit(static_cast<unsigned char>(name[0])) != 0)) return false;
    for (const char c : name)
        if (std::isalnum(static_cast<unsigned char>(c)) == 0 && c != '_') return false;
    return true;
}

template <ScalarField S>
Point<S> parse_point_coords(const std::vector<std::string>& tok, std::size_t from) {
    const std::size_t n = tok.size() - from;
    if (n == 2) return Point<S>::affine(S::parse(tok[from]), S::parse(tok[from + 1]));
    if (n == 3)
        return Point<S>(S::parse(tok[from]), S::parse(tok[from + 1]), S::parse(tok[from + 2]));
    throw ParseError("expected 2 or 3 coordinates");
}

}  // namespace detail

/// The backend a scene text selects, decided before typed parsing.
inline BackendKind scene_backend(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto tok = detail::scene_tokens(line);
        if (tok.empty() || tok[0] != "backend") continue;
        if (tok.size() != 2)
            throw ParseError("line " + std::to_string(lineno) + ": backend takes one value");
        if (tok[1] == "exact") return BackendKind::Exact;
        if (tok[1] == "float") return BackendKind::Float;
        throw ParseError("line " + std::to_string(lineno) + ": unknown backend '" + tok[1] + "'");
    }
    return BackendKind::Exact;
}

template <ScalarField S>
Scene<S> parse_scene(const std::string& text) {
    std::optional<Conic<S>> conic;
    Line<S> marked = Line<S>::infinity();
    std::optional<Point<S>> identity;
    std::vector<std::pair<std::string, Point<S>>> points;
    std::optional<double> epsilon;
    BackendKind backend = scene_backend(text);

    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    const auto fail = [&](const std::string& msg) -> ParseError {
        return ParseError("line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(is, line)) {
        ++lineno;
        const auto tok = detail::scene_tokens(line);
        if (tok.empty()) continue;
        try {
            if (tok[0] == "backend") {
                continue;  // handled by the pre-scan
            } else if (tok[0] == "epsilon") {
                if (tok.size() != 2) throw fail("epsilon takes one value");
                epsilon = std::stod(tok[1]);
            } else if (tok[0] == "conic") {
                if (tok.size() != 7) throw fail("conic takes six coefficients A B C D E F");
                if (conic) throw fail("duplicate conic");
                conic = Conic<S>(S::parse(tok[1]), S::parse(tok[2]), S::parse(tok[3]),
                                 S::parse(tok[4]), S::parse(tok[5]), S::parse(tok[6]));
            } else if (tok[0] == "line") {
                if (tok.size() != 4) throw fail("line takes three coefficients u v w");
                marked = Line<S>(S::parse(tok[1]), S::parse(tok[2]), S::parse(tok[3]));
            } else if (tok[0] == "identity") {
                identity = detail::parse_point_coords<S>(tok, 1);
            } else if (tok[0] == "point") {
                if (tok.size() < 2) throw fail("point takes a name and coordinates");
                if (!detail::valid_point_name(tok[1])) throw fail("bad point name '" + tok[1] + "'");
                for (const auto& [n, p] : points)
                    if (n == tok[1]) throw fail("duplicate point '" + tok[1] + "'");
                points.emplace_back(tok[1], detail::parse_point_coords<S>(tok, 2));
            } else {
                throw UnknownField("line " + std::to_string(lineno) + ": unknown field '" +
                                   tok[0] + "'");
            }
        } catch (const MalformedNumber& e) {
            throw MalformedNumber("line " + std::to_string(lineno) + ": " + e.what());
        } catch (const DivisionByZero&) {
            throw MalformedNumber("line " + std::to_string(lineno) + ": zero denominator");
        } catch (const std::invalid_argument&) {
            throw fail("malformed value");
        }
    }

    if (!conic) throw ValidationFailed("scene has no conic");

    Scene<S> scene{*conic, marked, identity, std::move(points), backend, epsilon};
    for (const auto& [name, p] : scene.points)
        if (!conic_contains(scene.conic, p))
            throw ValidationFailed("point '" + name + "' " + p.str() + " is not on the conic");
    if (scene.identity && !conic_contains(scene.conic, *scene.identity))
        throw ValidationFailed("identity " + scene.identity->str() + " is not on the conic");
    return scene;
}

/// Canonical text emission; parse(serialize(s)) == s.
template <ScalarField S>
std::string serialize(const Scene<S>& scene) {
    std::ostringstream os;
    os << "backend " << to_string(scene.backend) << "\n";
    if (scene.epsilon) os << "epsilon " << *scene.epsilon << "\n";
    const auto& c = scene.conic.coeffs();
    os << "conic";
    for (int i = 0; i < 6; ++i) os << " " << c[i];
    os << "\n";
    os << "line " << scene.marked_line[0] << " " << scene.marked_line[1] << " "
       << scene.marked_line[2] << "\n";
    if (scene.identity)
        os << "identity " << (*scene.identity)[0] << " " << (*scene.identity)[1] << " "
           << (*scene.identity)[2] << "\n";
    for (const auto& [name, p] : scene.points)
        os << "point " << name << " " << p[0] << " " << p[1] << " " << p[2] << "\n";
    return os.str();
}

/// Homogeneous triple plus affine form when the point is finite.
template <ScalarField S>
std::string describe_point(const Point<S>& p) {
    std::ostringstream os;
    os << p.str();
    if (!p.at_infinity()) {
        const auto a = p.to_affine();
        os << " = (" << a[0] << ", " << a[1] << ")";
    }
    return os.str();
}

}  // namespace conic
