#include "kspec/commands.hpp"
#include "kspec/errors.hpp"
#include "kspec/report.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

using namespace kspec;
using kspec::test::fixture;

namespace {

struct CliRun {
    int code;
    std::string out, err;
    json doc() const { return json::parse(out); }
};

CliRun run(const std::string& cmd, CommandOptions o) {
    std::ostringstream out, err;
    int code = run_command(cmd, o, out, err);
    return {code, out.str(), err.str()};
}

CommandOptions spec(const std::string& name) {
    CommandOptions o;
    o.spec_path = fixture(name);
    return o;
}

std::string shell(const std::string& args) {
    std::string cmd = std::string(KSPEC_BIN) + " " + args + " 2>/dev/null";
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    pclose(p);
    return out;
}

std::size_t count(const std::string& hay, const std::string& needle) {
    std::size_t c = 0;
    for (std::size_t pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++c;
    return c;
}

} // namespace

TEST(Cli, ClassifyStrip) {
    CliRun r = run("classify", spec("strip.json"));
    ASSERT_EQ(r.code, kExitOk) << r.err;
    json j = r.doc();
    EXPECT_EQ(j["schema_version"], 1);
    EXPECT_EQ(j["class"], "hyperbolic");
    EXPECT_DOUBLE_EQ(j["mu"].get<double>(), 1.0);
}

TEST(Cli, ClassifyWholeLineIsZeroStep) {
    auto path = std::filesystem::temp_directory_path() / "kspec_whole_line.json";
    std::ofstream(path) << R"js({"domain": {"type": "defining_function", "interval": ["-inf", "inf"], "psi": "abs(y)"}})js";
    CommandOptions o;
    o.spec_path = path.string();
    CliRun r = run("classify", o);
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(r.doc()["class"], "parabolic-zero-step");
    std::filesystem::remove(path);
}

TEST(Cli, SpecErrorsExitTwo) {
    for (const char* f : {"malformed.json", "unknown_key.json", "does_not_exist.json"}) {
        CliRun r = run("classify", spec(f));
        EXPECT_EQ(r.code, kExitSpec) << f;
        EXPECT_EQ(json::parse(r.err)["error"], "spec");
    }
    CommandOptions bad = spec("strip.json");
    bad.space = "sobolev";
    EXPECT_EQ(run("spectrum", bad).code, kExitSpec);
}

TEST(Cli, UnsupportedExitsFour) {
    EXPECT_EQ(run("growth", spec("parabola_upper.json")).code, kExitUnsupported);
    CommandOptions o = spec("sigma_eps.json");
    o.space = "hardy";
    EXPECT_EQ(run("spectrum", o).code, kExitUnsupported);
}

TEST(Cli, GeometrySigmaEps) {
    CliRun r = run("geometry", spec("sigma_eps.json"));
    ASSERT_EQ(r.code, kExitOk) << r.err;
    json j = r.doc();
    EXPECT_NEAR(j["W"]["value"].get<double>(), 2.0, 1e-3);
    EXPECT_TRUE(j["delta"]["exists"].get<bool>());
    EXPECT_NEAR(j["delta"]["value"].get<double>(), 0.5, 1e-2);
    EXPECT_NEAR(j["c_critical"].get<double>(), -0.5, 1e-3);
    CliRun h = run("geometry", spec("half_strip.json"));
    EXPECT_EQ(h.doc()["c_critical"], "-inf");
    CliRun c = run("geometry", spec("cot_log.json"));
    EXPECT_NEAR(c.doc()["args"]["theta"].get<double>(), std::numbers::pi / 2, 1e-6);
    EXPECT_NEAR(c.doc()["args"]["Theta"].get<double>(), std::numbers::pi, 1e-6);
}

TEST(Cli, SpectrumJsonShapes) {
    CliRun strip = run("spectrum", spec("strip.json"));
    json s = strip.doc()["result"];
    EXPECT_TRUE(s["exact"].get<bool>());
    EXPECT_EQ(s["region"]["union"].size(), 1u);
    CommandOptions o = spec("cot_log.json");
    o.space = "bergman";
    json b = run("spectrum", o).doc()["result"];
    EXPECT_FALSE(b["exact"].get<bool>());
    EXPECT_TRUE(b.contains("inner") && b.contains("outer"));
    json sector = run("spectrum", spec("sector_symmetric.json")).doc()["result"];
    json wedge = sector["region"]["union"][1]["intersection"][0];
    EXPECT_EQ(wedge["kind"], "arg_wedge");
    EXPECT_EQ(wedge["arg_lo_symbolic"], "3*pi/4");
    EXPECT_EQ(wedge["arg_hi_symbolic"], "5*pi/4");
}

TEST(Cli, MemberVerdicts) {
    CommandOptions o = spec("sigma_eps.json");
    o.lambda = "-0.25,3";
    EXPECT_EQ(run("member", o).doc()["verdict"], "in");
    o.lambda = "0,0";
    EXPECT_EQ(run("member", o).doc()["verdict"], "in");
    o.lambda = "0.5,0";
    EXPECT_EQ(run("member", o).doc()["verdict"], "out");
    o.lambda = "1";
    EXPECT_EQ(run("member", o).code, kExitSpec);
}

TEST(Cli, RasterIsDeterministicAndWellFormed) {
    CommandOptions o = spec("exp_upper.json");
    o.grid = "9,7";
    CliRun a = run("raster", o), b = run("raster", o);
    ASSERT_EQ(a.code, kExitOk) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out.rfind("# kspec raster schema_version=1\nx,y,class\n", 0), 0u);
    EXPECT_EQ(count(a.out, "\n"), 2u + 63u);
    EXPECT_GT(count(a.out, ",unknown"), 0u);
    EXPECT_EQ(shell("raster --spec " + fixture("exp_upper.json") + " --n 9,7"),
              shell("raster --spec " + fixture("exp_upper.json") + " --n 9,7"));

    CommandOptions exact = spec("sector_quarter.json");
    exact.grid = "12";
    EXPECT_EQ(count(run("raster", exact).out, ",unknown"), 0u);
}

TEST(Cli, SvgHasOneRectPerCell) {
    CommandOptions o = spec("sector_quarter.json");
    o.grid = "5,4";
    o.format = "svg";
    CliRun r = run("raster", o);
    ASSERT_EQ(r.code, kExitOk);
    EXPECT_EQ(count(r.out, "<rect "), 20u);
    EXPECT_EQ(count(r.out, "class=\"in\""), count(r.out, "class=\"in\" fill=\"#2b8cbe\""));
}

TEST(Cli, OutWritesFileAtomically) {
    auto path = std::filesystem::temp_directory_path() / "kspec_cli_out.csv";
    std::filesystem::remove(path);
    CommandOptions o = spec("strip.json");
    o.grid = "3";
    o.out = path.string();
    CliRun r = run("raster", o);
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    std::string first;
    std::getline(in, first);
    EXPECT_EQ(first, "# kspec raster schema_version=1");
    for (const auto& e : std::filesystem::directory_iterator(path.parent_path()))
        EXPECT_EQ(e.path().filename().string().find("kspec_cli_out.csv.tmp"), std::string::npos);
    std::filesystem::remove(path);
}

TEST(Cli, OracleCompareReportsCounts) {
    CommandOptions o = spec("strip.json");
    o.grid = "5";
    json j = run("oracle-compare", o).doc();
    EXPECT_EQ(j["unexcused"], 0);
    EXPECT_TRUE(j.contains("boundary_excused"));
    EXPECT_EQ(j["points"], 25);
}

TEST(Cli, GrowthStripOmega) {
    CommandOptions o = spec("strip.json");
    o.space = "hardy";
    json j = run("growth", o).doc();
    EXPECT_DOUBLE_EQ(j["omega"].get<double>(), 0.5);
    CommandOptions u = spec("upper_half_plane.json");
    u.space = "hardy";
    EXPECT_DOUBLE_EQ(run("growth", u).doc()["omega"].get<double>(), 0.0);
}

TEST(Cli, ParsersRejectBadInput) {
    EXPECT_THROW(parse_window("0,-1,0,1"), SpecError);
    EXPECT_THROW(parse_grid("1"), SpecError);
    EXPECT_THROW(parse_grid("4,x"), SpecError);
    EXPECT_EQ(parse_grid("4,6"), std::make_pair(4, 6));
    EXPECT_EQ(parse_lambda("-pi/4,1"), cplx(-std::numbers::pi / 4, 1));
}

TEST(Cli, AngleSymbols) {
    EXPECT_EQ(angle_symbol(std::numbers::pi / 2), "pi/2");
    EXPECT_EQ(angle_symbol(3 * std::numbers::pi / 4), "3*pi/4");
    EXPECT_FALSE(angle_symbol(1.0));
    EXPECT_EQ(number_json(-std::numeric_limits<double>::infinity()), "-inf");
}
