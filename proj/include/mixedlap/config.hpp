#pragma once

#include "mixedlap/kernel.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mixedlap {

enum class Command { solve, barrier, verify, counterexample };

enum class LoadKind { constant, polynomial, sampled };

struct LoadSpec {
    LoadKind kind = LoadKind::constant;
    double value = 1.0;                // constant
    std::vector<double> coefficients;  // c0 + c1 x + ...
    std::string path;                  // CSV with columns x,f
};

struct RunConfig {
    Command command = Command::solve;
    double s = 0.5;
    double a = -1.0;
    double b = 1.0;
    int n = 127;
    LoadSpec f;
    QuadratureSpec quad;
    std::string output_dir;  // empty: environment default
    std::uint64_t seed = 42;
    bool iterative = false;
    std::string example = "ces";  // counterexample: ces | general | boundary
    int dim = 1;
    double r = 2.0;
    bool dump = false;  // barrier: also write sampled profiles
};

/// JSON object, e.g.
/// {"command": "solve", "s": 0.5, "domain": [-1, 1], "n": 127, "f": {"constant": 1}}.
/// Throws ParseError naming the offending key.
RunConfig parse_config(const std::string& text);

/// Applies a JSON merge patch to a config document.
std::string merge_config(const std::string& base, const std::string& patch);

const char* command_name(Command c);

/// The load as a field on the configured domain, zero outside it.
ScalarField make_load(const LoadSpec& spec, double a, double b);

}  // namespace mixedlap
