#pragma once

// Command implementations behind the parch executable. Each returns the
// process exit code: 0 agreement, 2 disagreement or failed check, 1 bad input.

#include "parch/oracle.hpp"
#include "parch/spec_io.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>

namespace parch {

enum class Emit { json, text };

struct ComputeOptions {
    std::string file;
    std::string method = "all";  ///< integral | general | rr | lowdegree | all
    Emit emit = Emit::json;
};

struct VerifyOptions {
    std::string file;
    Emit emit = Emit::json;
};

struct SelftestOptions {
    std::uint64_t seed = 1;
    int cases = 100;
    InstanceLimits limits;
    bool timing = false;  ///< put per-instance times into the JSON lines
};

int run_compute(const ComputeOptions& options, std::ostream& out, std::ostream& err);
int run_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err);
int run_selftest(const SelftestOptions& options, std::ostream& out, std::ostream& err);

/// Evaluates the requested methods on a bundle; "all" runs the four engine routes.
ChernReport compute_report(const ParabolicBundle& bundle, const std::string& method);

nlohmann::ordered_json report_to_json(const ParabolicBundle& bundle, const ChernReport& report);
std::string report_to_text(const ParabolicBundle& bundle, const ChernReport& report);

}  // namespace parch
