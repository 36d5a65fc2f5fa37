// Command-line front end: group-law evaluation, classification, Pascal
// verification (direct and via the group route), property fuzzing, and SVG
// rendering of constructions on scenes.
//
// Exit codes: 0 success / property verified, 1 property violated,
// 2 usage or input error, 3 internal invariant failure.

#include <array>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "conic/classification.hpp"
#include "conic/conic.hpp"
#include "conic/errors.hpp"
#include "conic/group_law.hpp"
#include "conic/pascal.hpp"
#include "conic/projective.hpp"
#include "conic/render.hpp"
#include "conic/sampler.hpp"
#include "conic/scalar.hpp"
#include "conic/scene.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kViolated = 1;
constexpr int kUsage = 2;
constexpr int kInternal = 3;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw conic::ParseError("cannot open scene file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::optional<double> scan_scene_epsilon(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        const auto tok = conic::detail::scene_tokens(line);
        if (tok.size() == 2 && tok[0] == "epsilon") return std::stod(tok[1]);
    }
    return std::nullopt;
}

struct CommonArgs {
    std::string scene_path;
    double epsilon = -1.0;  // <0 = unset
};

/// Loads a scene, configures the float tolerance, and runs fn on the typed
/// Scene; fn must be generic over the scalar backend.
template <class Fn>
int with_scene(const CommonArgs& args, Fn&& fn) {
    const std::string text = slurp(args.scene_path);
    const conic::BackendKind backend = conic::scene_backend(text);
    if (backend == conic::BackendKind::Float) {
        const auto scene_eps = scan_scene_epsilon(text);
        conic::Approx::epsilon() = args.epsilon >= 0 ? args.epsilon
                                   : scene_eps        ? *scene_eps
                                                      : 1e-9;
        return fn(conic::parse_scene<conic::Approx>(text));
    }
    return fn(conic::parse_scene<conic::Rational>(text));
}

template <class S>
conic::Hexagon<S> hexagon_from(const conic::Scene<S>& scene,
                               const std::vector<std::string>& names) {
    return conic::Hexagon<S>(scene.conic,
                             {scene.at(names[0]), scene.at(names[1]), scene.at(names[2]),
                              scene.at(names[3]), scene.at(names[4]), scene.at(names[5])});
}

int run_fuzz(const conic::SamplerConfig& cfg, const conic::FuzzOptions& opts, bool as_json,
             double epsilon) {
    conic::FuzzReport report;
    if (cfg.backend == conic::BackendKind::Float) {
        conic::Approx::epsilon() = epsilon >= 0 ? epsilon : 1e-9;
        report = conic::fuzz_suite<conic::Approx>(cfg, opts);
    } else {
        report = conic::fuzz_suite<conic::Rational>(cfg, opts);
    }
    if (as_json) {
        nlohmann::json j;
        j["seed"] = report.config.seed;
        j["trials"] = report.config.trials;
        j["bound"] = report.config.coefficient_bound;
        j["backend"] = conic::to_string(report.config.backend);
        j["properties"] = nlohmann::json::array();
        for (const auto& p : report.properties)
            j["properties"].push_back({{"name", p.name}, {"pass", p.pass}, {"fail", p.fail}});
        j["degenerate_trials"] = report.degenerate_trials;
        j["failing_seeds"] = report.failing_seeds;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << report.to_text();
    }
    return report.failures() == 0 ? kOk : kViolated;
}

struct RenderArgs {
    CommonArgs common;
    std::vector<std::string> construction;
    std::string output;
    std::vector<double> window;
    std::vector<int> size;
};

int run_render(const RenderArgs& args) {
    return with_scene(args.common, [&](const auto& scene) {
        using S = std::decay_t<decltype(scene.conic.coeffs()[0])>;
        if (args.construction.empty())
            throw conic::InvalidParameter("render needs a construction: oplus|inverse|pascal");
        conic::RenderOptions opt;
        if (!args.window.empty()) {
            opt.xmin = args.window[0];
            opt.xmax = args.window[1];
            opt.ymin = args.window[2];
            opt.ymax = args.window[3];
            if (opt.xmin >= opt.xmax || opt.ymin >= opt.ymax)
                throw conic::InvalidParameter("empty clip window");
        }
        if (!args.size.empty()) {
            opt.width = args.size[0];
            opt.height = args.size[1];
        }

        const std::string& kind = args.construction[0];
        conic::RenderFigure fig;
        if (kind == "oplus") {
            if (args.construction.size() != 3)
                throw conic::InvalidParameter("usage: render <scene> oplus P1 P2 -o out.svg");
            const auto mc = scene.marked();
            const auto& a = scene.at(args.construction[1]);
            const auto& b = scene.at(args.construction[2]);
            fig = conic::oplus_figure(mc, a, b, conic::oplus(mc, a, b), args.construction[1],
                                      args.construction[2]);
        } else if (kind == "inverse") {
            if (args.construction.size() != 2)
                throw conic::InvalidParameter("usage: render <scene> inverse P -o out.svg");
            const auto mc = scene.marked();
            const auto& a = scene.at(args.construction[1]);
            fig = conic::inverse_figure(mc, a, conic::inverse(mc, a), args.construction[1]);
        } else if (kind == "pascal") {
            if (args.construction.size() != 7)
                throw conic::InvalidParameter(
                    "usage: render <scene> pascal A B C D E F -o out.svg");
            const std::vector<std::string> names(args.construction.begin() + 1,
                                                 args.construction.end());
            fig = conic::pascal_figure(
                hexagon_from<S>(scene, names),
                {names[0], names[1], names[2], names[3], names[4], names[5]});
        } else {
            throw conic::InvalidParameter("unknown construction '" + kind + "'");
        }

        const std::string svg = conic::render_svg(fig, opt);
        std::ofstream out(args.output, std::ios::binary);
        if (!out) throw conic::InvalidParameter("cannot write '" + args.output + "'");
        out << svg;
        std::cout << "wrote " << args.output << "\n";
        return kOk;
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"group law on marked conics, Pascal hexagons, and exact fuzzing"};
    app.require_subcommand(1);

    CommonArgs common;
    std::vector<std::string> names;

    auto add_scene = [&](CLI::App* cmd, std::size_t n_names, const char* names_desc) {
        cmd->add_option("scene", common.scene_path, "scene file")->required();
        if (n_names > 0)
            cmd->add_option("names", names, names_desc)
                ->required()
                ->expected(static_cast<int>(n_names));
        cmd->add_option("--epsilon", common.epsilon, "float backend tolerance");
    };

    auto* cmd_oplus = app.add_subcommand("oplus", "a + b on the scene's marked conic");
    add_scene(cmd_oplus, 2, "two point names");
    auto* cmd_inverse = app.add_subcommand("inverse", "group inverse of a point");
    add_scene(cmd_inverse, 1, "point name");
    auto* cmd_classify = app.add_subcommand("classify", "parabola / hyperbola / ellipse class");
    add_scene(cmd_classify, 0, "");
    auto* cmd_normalize =
        app.add_subcommand("normalize", "transform onto the standard marked conic");
    add_scene(cmd_normalize, 0, "");
    auto* cmd_verify = app.add_subcommand("verify-pascal", "collinearity of the hexagon meets");
    add_scene(cmd_verify, 6, "six point names");
    auto* cmd_group = app.add_subcommand("pascal-group", "Pascal verdict via the group route");
    add_scene(cmd_group, 6, "six point names");

    conic::SamplerConfig fuzz_cfg;
    conic::FuzzOptions fuzz_opts;
    bool fuzz_json = false;
    double fuzz_epsilon = -1.0;
    std::string fuzz_backend = "exact";
    auto* cmd_fuzz = app.add_subcommand("fuzz", "randomized property suites with replay seeds");
    cmd_fuzz->add_option("--seed", fuzz_cfg.seed, "base seed");
    cmd_fuzz->add_option("--trials", fuzz_cfg.trials, "number of trials");
    cmd_fuzz->add_option("--bound", fuzz_cfg.coefficient_bound, "rational coefficient bound")
        ->check(CLI::PositiveNumber);
    cmd_fuzz->add_option("--backend", fuzz_backend, "exact or float")
        ->check(CLI::IsMember({"exact", "float"}));
    cmd_fuzz->add_option("--epsilon", fuzz_epsilon, "float backend tolerance");
    cmd_fuzz->add_flag("--json", fuzz_json, "machine-readable report");
    cmd_fuzz->add_option("--replay", fuzz_opts.replay,
                         "run exactly these reported trial seeds");
    cmd_fuzz->add_flag("--corrupt-oplus", fuzz_opts.corrupt_oplus,
                       "harness self-test: corrupt the operation and expect failures");

    RenderArgs render_args;
    auto* cmd_render = app.add_subcommand("render", "SVG of a construction");
    cmd_render->add_option("scene", render_args.common.scene_path, "scene file")->required();
    cmd_render
        ->add_option("construction", render_args.construction,
                     "oplus P1 P2 | inverse P | pascal A B C D E F")
        ->required();
    cmd_render->add_option("-o,--output", render_args.output, "output SVG path")->required();
    cmd_render->add_option("--window", render_args.window, "clip window: xmin xmax ymin ymax")
        ->expected(4);
    cmd_render->add_option("--size", render_args.size, "pixels: width height")->expected(2);
    cmd_render->add_option("--epsilon", render_args.common.epsilon, "float backend tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (app.got_subcommand(cmd_oplus)) {
            return with_scene(common, [&](const auto& scene) {
                const auto mc = scene.marked();
                const auto res = conic::oplus(mc, scene.at(names[0]), scene.at(names[1]));
                std::cout << names[0] << " + " << names[1] << " = "
                          << conic::describe_point(res.sum) << "\n";
                return kOk;
            });
        }
        if (app.got_subcommand(cmd_inverse)) {
            return with_scene(common, [&](const auto& scene) {
                const auto mc = scene.marked();
                std::cout << "-" << names[0] << " = "
                          << conic::describe_point(conic::inverse(mc, scene.at(names[0]))) << "\n";
                return kOk;
            });
        }
        if (app.got_subcommand(cmd_classify)) {
            return with_scene(common, [&](const auto& scene) {
                std::cout << conic::to_string(conic::classify(scene.marked())) << "\n";
                return kOk;
            });
        }
        if (app.got_subcommand(cmd_normalize)) {
            return with_scene(common, [&](const auto& scene) {
                const auto norm = conic::normalize(scene.marked());
                std::cout << "class " << conic::to_string(norm.klass) << "\n";
                std::cout << "target ";
                switch (norm.klass) {
                    case conic::ConicClass::Parabola: std::cout << "parabola y = x^2"; break;
                    case conic::ConicClass::Hyperbola: std::cout << "hyperbola xy = 1"; break;
                    case conic::ConicClass::Ellipse: std::cout << "unit circle"; break;
                }
                std::cout << " with the line at infinity marked\n";
                for (const auto& row : norm.transform.matrix()) {
                    std::cout << "transform";
                    for (const auto& v : row) std::cout << " " << v;
                    std::cout << "\n";
                }
                return kOk;
            });
        }
        if (app.got_subcommand(cmd_verify)) {
            return with_scene(common, [&](const auto& scene) {
                using S = std::decay_t<decltype(scene.conic.coeffs()[0])>;
                const auto res = conic::pascal_points(hexagon_from<S>(scene, names));
                const char* meet_names[3] = {"p", "q", "r"};
                for (int i = 0; i < 3; ++i)
                    std::cout << meet_names[i] << " = " << conic::describe_point(res.meets[i])
                              << "\n";
                if (res.trivial_reason)
                    std::cout << "trivial: " << conic::to_string(*res.trivial_reason) << "\n";
                if (res.pascal_line)
                    std::cout << "pascal line " << res.pascal_line->str() << "\n";
                std::cout << (res.collinear ? "pascal verified: meets are collinear"
                                            : "pascal VIOLATED: meets are not collinear")
                          << "\n";
                return res.collinear ? kOk : kViolated;
            });
        }
        if (app.got_subcommand(cmd_group)) {
            return with_scene(common, [&](const auto& scene) {
                using S = std::decay_t<decltype(scene.conic.coeffs()[0])>;
                const auto hex = hexagon_from<S>(scene, names);
                const bool group_ok = conic::pascal_via_group(hex);
                const bool direct = conic::verify_pascal(hex);
                std::cout << "group route: " << (group_ok ? "verified" : "VIOLATED") << "\n";
                std::cout << "direct verdict agrees: " << (group_ok == direct ? "yes" : "NO")
                          << "\n";
                return group_ok && group_ok == direct ? kOk : kViolated;
            });
        }
        if (app.got_subcommand(cmd_fuzz)) {
            fuzz_cfg.backend = fuzz_backend == "float" ? conic::BackendKind::Float
                                                       : conic::BackendKind::Exact;
            return run_fuzz(fuzz_cfg, fuzz_opts, fuzz_json, fuzz_epsilon);
        }
        if (app.got_subcommand(cmd_render)) {
            return run_render(render_args);
        }
        std::cerr << "no subcommand selected\n";
        return kUsage;
    } catch (const conic::InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    } catch (const conic::IrrationalNormalization& e) {
        std::cerr << e.what() << "\n";
        std::cerr << "hint: rerun on the float backend (scene 'backend float')\n";
        return kUsage;
    } catch (const conic::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return kInternal;
    }
}
