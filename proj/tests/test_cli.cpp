// Integration tests for the command-line tool: spawns the real binary and
// checks output and the documented exit-code contract (0 verified, 1 property
// violated, 2 usage/parse, 3 internal).  The binary path and the shipped
// scenes directory arrive as the two trailing command-line arguments.
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

std::string g_cli;
std::string g_scenes;

struct RunResult {
    int code;
    std::string out;
};

RunResult run(const std::string& args, bool merge_stderr = false) {
    const std::string cmd = "'" + g_cli + "' " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (std::fgets(buf, sizeof(buf), pipe) != nullptr) out += buf;
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string scene(const std::string& name) { return "'" + g_scenes + "/" + name + "'"; }

std::string write_temp(const std::string& name, const std::string& text) {
    std::ofstream out(name);
    out << text;
    return name;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("oplus prints the sum and exits 0") {
    const auto r = run("oplus " + scene("parabola.scene") + " P1 P2");
    CHECK(r.code == 0);
    CHECK(r.out.find("(3, 9)") != std::string::npos);
}

TEST_CASE("inverse on the hyperbola") {
    const auto r = run("inverse " + scene("hyperbola.scene") + " P1");
    CHECK(r.code == 0);
    CHECK(r.out.find("(1/2, 2)") != std::string::npos);
}

TEST_CASE("classify") {
    CHECK(run("classify " + scene("circle.scene")).out == "ellipse\n");
    CHECK(run("classify " + scene("parabola.scene")).out == "parabola\n");
    CHECK(run("classify " + scene("hyperbola.scene")).out == "hyperbola\n");
}

TEST_CASE("normalize") {
    const auto r = run("normalize " + scene("parabola.scene"));
    CHECK(r.code == 0);
    CHECK(r.out.find("class parabola") != std::string::npos);
    CHECK(r.out.find("transform 1 0 0") != std::string::npos);
}

TEST_CASE("verify-pascal and the group route") {
    const auto direct = run("verify-pascal " + scene("circle.scene") + " A B C D E F");
    CHECK(direct.code == 0);
    CHECK(direct.out.find("pascal verified") != std::string::npos);

    const auto grouped = run("pascal-group " + scene("circle.scene") + " A B C D E F");
    CHECK(grouped.code == 0);
    CHECK(grouped.out.find("verified") != std::string::npos);
    CHECK(grouped.out.find("agrees: yes") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run("oplus " + scene("parabola.scene") + " P1 NOPE").code == 2);
    CHECK(run("oplus no_such_file.scene P1 P2").code == 2);
    CHECK(run("verify-pascal " + scene("circle.scene") + " A B C D E").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("").code == 2);
}

TEST_CASE("scene validation errors exit 2") {
    const auto path = write_temp("cli_bad_point.scene",
                                 "conic 1 0 1 0 0 -1\nidentity 1 0\npoint P 2 0\n");
    const auto r = run("classify " + path, true);
    CHECK(r.code == 2);
    CHECK(r.out.find("not on the conic") != std::string::npos);
}

TEST_CASE("operand on the marked line exits 2") {
    const auto path = write_temp("cli_on_line.scene",
                                 "conic 0 1 0 0 0 -1\nidentity 1 1\npoint I 1 0 0\npoint P 2 1/2\n");
    const auto r = run("oplus " + path + " I P", true);
    CHECK(r.code == 2);
    CHECK(r.out.find("marked line") != std::string::npos);
}

TEST_CASE("irrational exact normalization exits 2 with a float hint") {
    const auto path = write_temp("cli_irrational.scene",
                                 "conic 2 0 2 0 0 -1\nidentity 1/2 1/2\n");
    const auto r = run("normalize " + path, true);
    CHECK(r.code == 2);
    CHECK(r.out.find("float") != std::string::npos);
}

TEST_CASE("float backend scene") {
    const auto path = write_temp("cli_float.scene",
                                 "backend float\nepsilon 1e-9\nconic 1 0 1 0 0 -2\nidentity 1 1\n");
    const auto r = run("normalize " + path);
    CHECK(r.code == 0);
    CHECK(r.out.find("class ellipse") != std::string::npos);
}

TEST_CASE("fuzz with zero trials") {
    const auto r = run("fuzz --seed 7 --trials 0");
    CHECK(r.code == 0);
    CHECK(r.out.find("trials 0") != std::string::npos);
    CHECK(r.out.find("failing seeds none") != std::string::npos);
}

TEST_CASE("fuzz reports are byte-identical across runs") {
    const auto a = run("fuzz --seed 7 --trials 100");
    const auto b = run("fuzz --seed 7 --trials 100");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("property associativity") != std::string::npos);
    CHECK(a.out.find(" pass 100 fail 0") != std::string::npos);
}

TEST_CASE("corrupted-operation self-test exits 1 with seeds") {
    const auto r = run("fuzz --seed 11 --trials 10 --corrupt-oplus");
    CHECK(r.code == 1);
    CHECK(r.out.find("failing seeds ") != std::string::npos);
    CHECK(r.out.find("failing seeds none") == std::string::npos);
}

TEST_CASE("fuzz replay reruns exactly the listed trial seeds") {
    const auto clean = run("fuzz --replay 245970734734627473");
    CHECK(clean.code == 0);
    CHECK(clean.out.find("trials 1") != std::string::npos);

    const auto broken = run("fuzz --replay 7 --replay 8 --corrupt-oplus");
    CHECK(broken.code == 1);
    CHECK(broken.out.find("trials 2") != std::string::npos);
    CHECK(broken.out.find("failing seeds 7 8") != std::string::npos);
}

TEST_CASE("fuzz json report") {
    const auto r = run("fuzz --seed 3 --trials 5 --json");
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["seed"] == 3);
    CHECK(j["trials"] == 5);
    CHECK(j["properties"].size() == 10);
    for (const auto& p : j["properties"]) CHECK(p["fail"] == 0);
    CHECK(j["failing_seeds"].empty());
}

TEST_CASE("float backend fuzz") {
    const auto r = run("fuzz --seed 5 --trials 10 --bound 4 --backend float");
    CHECK(r.code == 0);
    CHECK(r.out.find("backend float") != std::string::npos);
}

TEST_CASE("render writes a deterministic SVG") {
    const auto r1 = run("render " + scene("circle.scene") +
                        " oplus B F -o cli_render1.svg --window -2 2 -2 2");
    CHECK(r1.code == 0);
    const auto svg1 = slurp("cli_render1.svg");
    CHECK(svg1.rfind("<svg", 0) == 0);

    const auto r2 = run("render " + scene("circle.scene") +
                        " oplus B F -o cli_render2.svg --window -2 2 -2 2");
    CHECK(r2.code == 0);
    CHECK(svg1 == slurp("cli_render2.svg"));
}

TEST_CASE("render pascal construction") {
    const auto r = run("render " + scene("parabola.scene") +
                       " pascal P1 P2 P3 P4 P5 P6 -o cli_render_pascal.svg --window -2 8 -2 40");
    CHECK(r.code == 0);
    const auto svg = slurp("cli_render_pascal.svg");
    CHECK(svg.find(">p</text>") != std::string::npos);
    CHECK(svg.find(">P3</text>") != std::string::npos);
}

TEST_CASE("render outside the window exits 2") {
    const auto r = run("render " + scene("circle.scene") +
                       " oplus B F -o cli_render_far.svg --window 50 60 50 60", true);
    CHECK(r.code == 2);
    CHECK(r.out.find("window") != std::string::npos);
}

int main(int argc, char** argv) {
    if (argc < 3) {
        std::fprintf(stderr, "usage: test_cli [doctest args] <cli path> <scenes dir>\n");
        return 64;
    }
    g_cli = argv[argc - 2];
    g_scenes = argv[argc - 1];
    doctest::Context ctx;
    ctx.applyCommandLine(argc - 2, argv);
    return ctx.run();
}
