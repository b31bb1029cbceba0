#pragma once

#include "mixedlap/config.hpp"
#include "mixedlap/verify.hpp"

#include <string>
#include <vector>

namespace mixedlap {

struct RunOutcome {
    int exit_status = 0;
    std::vector<std::string> files;
    std::string error;
};

/// Output directory: the config value, else $MIXEDLAP_OUTPUT_DIR, else "mixedlap_out".
std::string resolve_output_dir(const RunConfig& config);

/// The checks behind `verify`, in a fixed order, run concurrently.
std::vector<VerificationReport> verification_suite(const RunConfig& config);

RunOutcome run(const RunConfig& config);

}  // namespace mixedlap
