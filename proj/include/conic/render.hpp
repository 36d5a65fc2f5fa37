#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "conic/conic.hpp"
#include "conic/errors.hpp"
#include "conic/group_law.hpp"
#include "conic/pascal.hpp"
#include "conic/projective.hpp"
#include "conic/scalar.hpp"

namespace conic {

/// Everything the SVG writer needs, already lowered to doubles.  Rendering
/// consumes traces only; it never feeds back into computation.
struct RenderFigure {
    std::array<double, 6> conic{};                // A..F
    std::vector<std::array<double, 3>> lines;     // homogeneous u, v, w
    struct Mark {
        double x;
        double y;
        std::string label;  // empty = unlabeled dot
    };
    std::vector<Mark> marks;
};

struct RenderOptions {
    double xmin = -10.0, xmax = 10.0, ymin = -10.0, ymax = 10.0;
    int width = 800, height = 800;
};

namespace detail {

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v + 0.0);  // normalize -0
    return buf;
}

struct Mapper {
    RenderOptions opt;
    double px(double x) const { return (x - opt.xmin) / (opt.xmax - opt.xmin) * opt.width; }
    double py(double y) const { return (opt.ymax - y) / (opt.ymax - opt.ymin) * opt.height; }
    bool inside(double x, double y) const {
        return x >= opt.xmin && x <= opt.xmax && y >= opt.ymin && y <= opt.ymax;
    }
};

/// Clip the affine part of u x + v y + w = 0 to the window; nullopt when the
/// line misses it (or is the line at infinity).
inline std::optional<std::array<double, 4>> clip_line(const std::array<double, 3>& l,
                                                      const RenderOptions& opt) {
    const double u = l[0], v = l[1], w = l[2];
    if (std::abs(u) < 1e-14 && std::abs(v) < 1e-14) return std::nullopt;
    std::vector<std::array<double, 2>> hits;
    auto push = [&](double x, double y) {
        for (const auto& h : hits)
            if (std::abs(h[0] - x) < 1e-9 && std::abs(h[1] - y) < 1e-9) return;
        hits.push_back({x, y});
    };
    const double eps = 1e-12;
    if (std::abs(v) > eps) {
        for (const double x : {opt.xmin, opt.xmax}) {
            const double y = -(u * x + w) / v;
            if (y >= opt.ymin - eps && y <= opt.ymax + eps) push(x, y);
        }
    }
    if (std::abs(u) > eps) {
        for (const double y : {opt.ymin, opt.ymax}) {
            const double x = -(v * y + w) / u;
            if (x >= opt.xmin - eps && x <= opt.xmax + eps) push(x, y);
        }
    }
    if (hits.size() < 2) return std::nullopt;
    return std::array<double, 4>{hits[0][0], hits[0][1], hits[1][0], hits[1][1]};
}

/// Solutions y of the conic at a fixed x, smaller root first.
inline int conic_column(const std::array<double, 6>& c, double x, double out[2]) {
    const double qa = c[2];
    const double qb = c[1] * x + c[4];
    const double qc = c[0] * x * x + c[3] * x + c[5];
    if (std::abs(qa) < 1e-13) {
        if (std::abs(qb) < 1e-13) return 0;
        out[0] = -qc / qb;
        return 1;
    }
    const double disc = qb * qb - 4 * qa * qc;
    if (disc < 0) return 0;
    const double r = std::sqrt(disc);
    const double y1 = (-qb - r) / (2 * qa), y2 = (-qb + r) / (2 * qa);
    out[0] = std::min(y1, y2);
    out[1] = std::max(y1, y2);
    return disc == 0 ? 1 : 2;
}

}  // namespace detail

/// Deterministic SVG for a figure: the conic's real branches sampled column
/// by column with bisection refinement where a branch opens or closes, then
/// clipped lines, then labeled points.  Throws NothingVisible when no element
/// intersects the window.
inline std::string render_svg(const RenderFigure& fig, const RenderOptions& opt = {}) {
    const detail::Mapper map{opt};
    std::ostringstream svg;
    bool visible = false;

    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width << "\" height=\""
        << opt.height << "\" viewBox=\"0 0 " << opt.width << " " << opt.height << "\">\n";
    svg << "<rect width=\"" << opt.width << "\" height=\"" << opt.height
        << "\" fill=\"white\"/>\n";

    // Conic branches: branch 0 = smaller root, branch 1 = larger root.
    const int columns = 512;
    const double dx = (opt.xmax - opt.xmin) / columns;
    std::vector<std::string> paths;
    for (int branch = 0; branch < 2; ++branch) {
        std::vector<std::array<double, 2>> run;
        auto flush = [&] {
            if (run.size() >= 2) {
                std::ostringstream p;
                p << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
                for (std::size_t i = 0; i < run.size(); ++i) {
                    if (i) p << " ";
                    p << detail::fmt(map.px(run[i][0])) << "," << detail::fmt(map.py(run[i][1]));
                }
                p << "\"/>\n";
                paths.push_back(p.str());
                visible = true;
            }
            run.clear();
        };
        bool prev_live = false;
        for (int i = 0; i <= columns; ++i) {
            const double x = opt.xmin + i * dx;
            double ys[2];
            const int n = detail::conic_column(fig.conic, x, ys);
            const bool live = n > branch;
            if (live && !prev_live && i > 0) {
                // Refine the branch boundary between the previous column and
                // this one so turning points do not get chopped off.
                double lo = x - dx, hi = x;
                for (int step = 0; step < 20; ++step) {
                    const double mid = (lo + hi) / 2;
                    double t[2];
                    if (detail::conic_column(fig.conic, mid, t) > branch) hi = mid;
                    else lo = mid;
                }
                double t[2];
                if (detail::conic_column(fig.conic, hi, t) > branch && map.inside(hi, t[branch]))
                    run.push_back({hi, t[branch]});
            }
            if (live && map.inside(x, ys[branch])) {
                run.push_back({x, ys[branch]});
            } else {
                if (prev_live && !live && !run.empty()) {
                    // Branch closed: bisect toward the last live column.
                    double lo = x - dx, hi = x;
                    for (int step = 0; step < 20; ++step) {
                        const double mid = (lo + hi) / 2;
                        double t[2];
                        if (detail::conic_column(fig.conic, mid, t) > branch) lo = mid;
                        else hi = mid;
                    }
                    double t[2];
                    if (detail::conic_column(fig.conic, lo, t) > branch && map.inside(lo, t[branch]))
                        run.push_back({lo, t[branch]});
                }
                flush();
            }
            prev_live = live;
        }
        flush();
    }
    for (const auto& p : paths) svg << p;

    for (const auto& l : fig.lines) {
        if (const auto seg = detail::clip_line(l, opt)) {
            svg << "<line x1=\"" << detail::fmt(map.px((*seg)[0])) << "\" y1=\""
                << detail::fmt(map.py((*seg)[1])) << "\" x2=\"" << detail::fmt(map.px((*seg)[2]))
                << "\" y2=\"" << detail::fmt(map.py((*seg)[3]))
                << "\" stroke=\"steelblue\" stroke-width=\"1\"/>\n";
            visible = true;
        }
    }

    for (const auto& m : fig.marks) {
        if (!map.inside(m.x, m.y)) continue;
        svg << "<circle cx=\"" << detail::fmt(map.px(m.x)) << "\" cy=\""
            << detail::fmt(map.py(m.y)) << "\" r=\"4\" fill=\""
            << (m.label.empty() ? "gray" : "crimson") << "\"/>\n";
        if (!m.label.empty())
            svg << "<text x=\"" << detail::fmt(map.px(m.x) + 7) << "\" y=\""
                << detail::fmt(map.py(m.y) - 7) << "\" font-family=\"sans-serif\" font-size=\"16\">"
                << m.label << "</text>\n";
        visible = true;
    }

    svg << "</svg>\n";
    if (!visible) throw NothingVisible();
    return svg.str();
}

// --- trace -> figure lowering -------------------------------------------------

template <ScalarField S>
std::array<double, 6> lower_conic(const Conic<S>& x) {
    const auto& c = x.coeffs();
    return {c[0].to_double(), c[1].to_double(), c[2].to_double(),
            c[3].to_double(), c[4].to_double(), c[5].to_double()};
}

template <ScalarField S>
std::array<double, 3> lower_line(const Line<S>& l) {
    return {l[0].to_double(), l[1].to_double(), l[2].to_double()};
}

template <ScalarField S>
std::optional<RenderFigure::Mark> lower_mark(const Point<S>& p, std::string label) {
    if (p.at_infinity()) return std::nullopt;
    const auto a = p.to_affine();
    return RenderFigure::Mark{a[0].to_double(), a[1].to_double(), std::move(label)};
}

template <ScalarField S>
void add_mark(RenderFigure& fig, const Point<S>& p, const std::string& label) {
    if (auto m = lower_mark(p, label)) fig.marks.push_back(std::move(*m));
}

/// Figure 1 of the construction: conic, chord a-b, the marked line, the line
/// o-p, and the participating points.
template <ScalarField S>
RenderFigure oplus_figure(const MarkedConic<S>& mc, const Point<S>& a, const Point<S>& b,
                          const OplusResult<S>& result, const std::string& name_a,
                          const std::string& name_b) {
    RenderFigure fig;
    fig.conic = lower_conic(mc.conic());
    fig.lines.push_back(lower_line(mc.marked_line()));
    fig.lines.push_back(lower_line(result.trace.chord));
    fig.lines.push_back(lower_line(result.trace.second_line));
    add_mark(fig, a, name_a);
    add_mark(fig, b, name_b == name_a ? name_b + "'" : name_b);
    add_mark(fig, mc.identity(), "o");
    add_mark(fig, result.sum, name_a + "+" + name_b);
    add_mark(fig, result.trace.meet_on_line, "");
    return fig;
}

template <ScalarField S>
RenderFigure inverse_figure(const MarkedConic<S>& mc, const Point<S>& a, const Point<S>& inv,
                            const std::string& name) {
    RenderFigure fig;
    fig.conic = lower_conic(mc.conic());
    const Line<S> tangent_o = tangent_line(mc.conic(), mc.identity());
    const Point<S> p_o = meet(tangent_o, mc.marked_line());
    fig.lines.push_back(lower_line(mc.marked_line()));
    fig.lines.push_back(lower_line(tangent_o));
    if (a != inv) fig.lines.push_back(lower_line(join(a, p_o)));
    add_mark(fig, a, name);
    add_mark(fig, mc.identity(), "o");
    add_mark(fig, inv, "-" + name);
    add_mark(fig, p_o, "");
    return fig;
}

template <ScalarField S>
RenderFigure pascal_figure(const Hexagon<S>& h, const std::array<std::string, 6>& names) {
    RenderFigure fig;
    fig.conic = lower_conic(h.conic());
    for (const auto& side : h.sides()) fig.lines.push_back(lower_line(side));
    const auto res = pascal_points(h);
    if (res.pascal_line) fig.lines.push_back(lower_line(*res.pascal_line));
    for (int i = 0; i < 6; ++i) add_mark(fig, h.point(i), names[static_cast<std::size_t>(i)]);
    const char* meet_names[3] = {"p", "q", "r"};
    for (int i = 0; i < 3; ++i) add_mark(fig, res.meets[static_cast<std::size_t>(i)], meet_names[i]);
    return fig;
}

}  // namespace conic
