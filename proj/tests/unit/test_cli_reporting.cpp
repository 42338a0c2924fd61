#include "nonloc/config.hpp"
#include "nonloc/errors.hpp"
#include "nonloc/report.hpp"
#include "nonloc/suites.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

using namespace nonloc;

namespace {

VerificationReport sample_report() {
    VerificationReport r;
    r.add({"finite", "simple maximum principle", 1.5, 2.0, 0.1, true, ""});
    r.add({"infinite", "decay at infinity", std::numeric_limits<double>::infinity(),
           -std::numeric_limits<double>::infinity(), 0.0, false, "quote \" and, comma"});
    r.add({"nan", "narrow region principle", std::nan(""), 0.0, 1e-300, true, "line\nbreak"});
    r.add_series({"ladder", "log_delta", "log_integral", {{-1.0, 2.0}, {-2.0, 3.5}}});
    r.set_meta("seed", "7");
    r.set_timing("suite", 0.25);
    return r;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST(Config, ParsesKeysAndComments) {
    const RunConfig c = parse_config("alpha = 1.0\nG = identity\n");
    EXPECT_EQ(c.alpha, 1.0);
    EXPECT_EQ(c.G, "identity");
    EXPECT_EQ(c.options.size(), 2u);
    const RunConfig d = parse_config("# header\n\n dim = 2  # trailing\nrhs = affine(0.1)\n");
    EXPECT_EQ(d.dim, 2);
    EXPECT_EQ(d.rhs, "affine(0.1)");
}

TEST(Config, Errors) {
    EXPECT_THROW((void)parse_config("alpha = 2.5"), ConfigTypeError);
    EXPECT_THROW((void)parse_config("alpha = abc"), ConfigTypeError);
    EXPECT_THROW((void)parse_config("dim = 3"), ConfigTypeError);
    EXPECT_THROW((void)parse_config("bogus = 1"), UnknownKey);
    try {
        (void)parse_config("bogus = 1");
    } catch (const UnknownKey& e) {
        EXPECT_EQ(e.name(), "bogus");
    }
    try {
        (void)parse_config("alpha = 2.5");
    } catch (const ConfigTypeError& e) {
        EXPECT_EQ(e.key(), "alpha");
    }
}

TEST(Config, FormatRoundTrip) {
    RunConfig c;
    apply_option(c, "alpha", "1.25");
    apply_option(c, "G", "cubic(0.1)");
    apply_option(c, "h", "0.03125");
    const RunConfig back = parse_config(format_config(c));
    EXPECT_EQ(back.alpha, 1.25);
    EXPECT_EQ(back.G, "cubic(0.1)");
    EXPECT_EQ(back.h, 0.03125);
    EXPECT_EQ(format_config(back), format_config(c));
}

TEST(Config, MakeProblem) {
    const RunConfig c = parse_config("dim = 2\nh = 0.125\nalpha = 0.5\nG = sine(0.5)");
    const ProblemSpec p = make_problem(c);
    EXPECT_EQ(p.domain.dim(), 2);
    EXPECT_EQ(p.domain.h(0), 0.125);
    EXPECT_EQ(p.kernel.alpha(), 0.5);
    EXPECT_EQ(p.G.name(), "sine(0.5)");
}

TEST(Report, JsonRoundTripKeepsNonFinite) {
    const VerificationReport r = sample_report();
    const VerificationReport back = report_from_json(to_json(r));
    ASSERT_EQ(back.records().size(), 3u);
    EXPECT_EQ(back.records()[0].measured, 1.5);
    EXPECT_TRUE(std::isinf(back.records()[1].measured));
    EXPECT_GT(back.records()[1].measured, 0.0);
    EXPECT_LT(back.records()[1].bound, 0.0);
    EXPECT_TRUE(std::isnan(back.records()[2].measured));
    EXPECT_EQ(back.records()[2].tolerance, 1e-300);
    EXPECT_EQ(back.records()[1].detail, "quote \" and, comma");
    EXPECT_EQ(back.series().at(0).points.at(1)[1], 3.5);
    EXPECT_EQ(back.metadata().at("seed"), "7");
    EXPECT_EQ(back.timings().at("suite"), 0.25);
    EXPECT_EQ(to_json(back), to_json(r));
    EXPECT_FALSE(r.passed());
    EXPECT_EQ(r.failures(), 1u);
    EXPECT_TRUE(report_from_json(to_json(r, false)).timings().empty());
    EXPECT_THROW((void)report_from_json("{not json"), Error);
}

TEST(Report, CsvAndPlotData) {
    const std::string csv = format_csv(sample_report());
    std::istringstream in(csv);
    std::string line;
    int lines = 0;
    std::getline(in, line);
    EXPECT_EQ(line, "name,anchor,measured,bound,tolerance,pass");
    while (std::getline(in, line)) {
        ++lines;
    }
    EXPECT_EQ(lines, 3);
    const std::string plot = format_plotdata(sample_report());
    EXPECT_NE(plot.find("# ladder"), std::string::npos);
    EXPECT_NE(plot.find("# log_delta log_integral"), std::string::npos);
}

TEST(Report, EmitWritesAndFailsLoudly) {
    const auto dir = std::filesystem::temp_directory_path() / "nonloc_report_test";
    std::filesystem::create_directories(dir);
    emit_json(sample_report(), (dir / "r.json").string(), false);
    emit_csv(sample_report(), (dir / "r.csv").string());
    EXPECT_EQ(slurp(dir / "r.csv"), format_csv(sample_report()));
    EXPECT_EQ(report_from_json(slurp(dir / "r.json")).records().size(), 3u);
    const std::string bad = (dir / "missing" / "sub" / "r.json").string();
    try {
        emit_json(sample_report(), bad);
        FAIL() << "expected IoError";
    } catch (const IoError& e) {
        EXPECT_EQ(e.path(), bad);
    }
    EXPECT_THROW(emit_plotdata(sample_report(), bad), IoError);
    std::filesystem::remove_all(dir);
}

TEST(Suites, NamesAndDeterminism) {
    RunConfig cfg;
    EXPECT_THROW((void)run_suite("", cfg), UsageError);
    EXPECT_THROW((void)run_suite("everything", cfg), UsageError);
    const VerificationReport a = run_suite("limit", cfg);
    EXPECT_TRUE(a.passed());
    EXPECT_FALSE(a.records().empty());
    EXPECT_EQ(a.metadata().at("suite"), "limit");
    EXPECT_EQ(to_json(run_suite("limit", cfg), false), to_json(a, false));
}

#ifdef NONLOC_CLI_PATH
#include <sys/wait.h>

namespace {

int run_cli(const std::string& args) {
    const std::string cmd = std::string(NONLOC_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run_cli("suite limit"), 0);
    EXPECT_EQ(run_cli("suite nosuch"), 2);
    EXPECT_EQ(run_cli("--set bogus=1 suite limit"), 2);
    EXPECT_EQ(run_cli("bounds --mode narrow --alpha 1 --dim 1 --params 0.2,0.1,0.05"), 0);
    EXPECT_EQ(run_cli(""), 2);
}
#endif
