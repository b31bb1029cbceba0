#include "mixedlap/config.hpp"
#include "mixedlap/errors.hpp"
#include "mixedlap/run.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace mixedlap;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("mixedlap_test_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream o;
    o << in.rdbuf();
    return o.str();
}

std::string parse_error_key(const std::string& doc) {
    try {
        parse_config(doc);
    } catch (const ParseError& e) {
        return e.key();
    }
    return "";
}

const char* kSolve = R"({"command": "solve", "s": 0.5, "domain": [-1, 1], "n": 15, "f": {"constant": 1}})";

}  // namespace

TEST(Config, MinimalSolve) {
    const RunConfig c = parse_config(kSolve);
    EXPECT_EQ(c.command, Command::solve);
    EXPECT_EQ(c.s, 0.5);
    EXPECT_EQ(c.n, 15);
    EXPECT_EQ(c.f.kind, LoadKind::constant);
    EXPECT_EQ(c.seed, 42u);
}

TEST(Config, RejectsBadValues) {
    EXPECT_EQ(parse_error_key(merge_config(kSolve, R"({"s": 1.2})")), "s");
    EXPECT_EQ(parse_error_key(merge_config(kSolve, R"({"s": 0})")), "s");
    EXPECT_EQ(parse_error_key(merge_config(kSolve, R"({"n": 0})")), "n");
    EXPECT_EQ(parse_error_key(merge_config(kSolve, R"({"n": 2.5})")), "n");
    EXPECT_EQ(parse_error_key(merge_config(kSolve, R"({"domain": [1, -1]})")), "domain");
    EXPECT_EQ(parse_error_key(merge_config(kSolve, R"({"colour": "red"})")), "colour");
    EXPECT_EQ(parse_error_key(merge_config(kSolve, R"({"quad": {"tolerance": -1}})")), "quad");
    EXPECT_EQ(parse_error_key(merge_config(kSolve, R"({"f": {"constant": null, "sine": 1}})")), "f.sine");
    EXPECT_EQ(parse_error_key(R"({"command": "solve", "s": 0.5})"), "domain");
    EXPECT_EQ(parse_error_key("{not json"), "<document>");
    EXPECT_EQ(parse_error_key(R"({"command": "counterexample", "s": 0.6})"), "s");
}

TEST(Config, MergeOverridesAndDeletes) {
    const RunConfig c = parse_config(merge_config(kSolve, R"({"n": 31, "f": {"constant": null, "polynomial": [0, 1]}})"));
    EXPECT_EQ(c.n, 31);
    EXPECT_EQ(c.f.kind, LoadKind::polynomial);
    EXPECT_EQ(c.f.coefficients, (std::vector<double>{0.0, 1.0}));
}

TEST(Config, SampledLoad) {
    const fs::path dir = scratch("csv");
    fs::create_directories(dir);
    std::ofstream(dir / "f.csv") << "x,f\n-1,0\n0,2\n1,0\n";
    LoadSpec spec;
    spec.kind = LoadKind::sampled;
    spec.path = (dir / "f.csv").string();
    const ScalarField f = make_load(spec, -1.0, 1.0);
    EXPECT_DOUBLE_EQ(f(0.0), 2.0);
    EXPECT_DOUBLE_EQ(f(0.5), 1.0);
    EXPECT_EQ(f(1.5), 0.0);
    spec.path = (dir / "missing.csv").string();
    EXPECT_THROW(make_load(spec, -1.0, 1.0), InputError);
}

TEST(Run, SolveWritesFiles) {
    const fs::path dir = scratch("solve");
    RunConfig c = parse_config(kSolve);
    c.output_dir = dir.string();
    const RunOutcome out = run(c);
    ASSERT_EQ(out.exit_status, 0) << out.error;
    ASSERT_EQ(out.files.size(), 2u);
    std::istringstream csv(slurp(dir / "solution.csv"));
    std::string line;
    int rows = -1;
    while (std::getline(csv, line)) ++rows;
    EXPECT_EQ(rows, 15);
    EXPECT_NE(slurp(dir / "report.json").find("residual_norm"), std::string::npos);
}

TEST(Run, OutputDirFromEnvironment) {
    const fs::path dir = scratch("env");
    ::setenv("MIXEDLAP_OUTPUT_DIR", dir.c_str(), 1);
    const RunConfig c = parse_config(kSolve);
    EXPECT_EQ(resolve_output_dir(c), dir.string());
    const RunOutcome out = run(c);
    ::unsetenv("MIXEDLAP_OUTPUT_DIR");
    EXPECT_EQ(out.exit_status, 0) << out.error;
    EXPECT_TRUE(fs::exists(dir / "solution.csv"));
    EXPECT_EQ(resolve_output_dir(c), "mixedlap_out");
}

TEST(Run, CounterexampleSummary) {
    const fs::path dir = scratch("ces");
    RunConfig c = parse_config(R"({"command": "counterexample", "s": 0.25})");
    c.output_dir = dir.string();
    const RunOutcome out = run(c);
    EXPECT_EQ(out.exit_status, 0) << out.error;
    const std::string text = slurp(dir / "summary.txt");
    EXPECT_NE(text.find("value.eps0"), std::string::npos);
    EXPECT_NE(text.find("passed = true"), std::string::npos);
}

TEST(Run, VerifyIsReproducible) {
    RunConfig c = parse_config(R"({"command": "verify", "s": 0.5, "n": 31, "seed": 42})");
    c.output_dir = scratch("verify_a").string();
    ASSERT_EQ(run(c).exit_status, 0);
    const std::string first = slurp(fs::path(c.output_dir) / "summary.txt");
    c.output_dir = scratch("verify_b").string();
    ASSERT_EQ(run(c).exit_status, 0);
    EXPECT_EQ(first, slurp(fs::path(c.output_dir) / "summary.txt"));
    EXPECT_NE(first.find("all_passed = true"), std::string::npos);
}

TEST(Run, FailureIsReported) {
    RunConfig c = parse_config(kSolve);
    c.output_dir = scratch("bad").string();
    c.f.kind = LoadKind::sampled;
    c.f.path = "/nonexistent/f.csv";
    const RunOutcome out = run(c);
    EXPECT_EQ(out.exit_status, 1);
    EXPECT_FALSE(out.error.empty());
}
