#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "sinezeros/config.hpp"

namespace sinezeros::cli {

enum ExitCode : int { kOk = 0, kInputError = 2, kNumericalFailure = 3, kVerificationFailure = 4 };

struct RunOptions {
  SolverConfig cfg;
  std::string out_dir = ".";
  bool json_only = false;  // skip the CSV outputs
  std::optional<std::uint64_t> seed;
};

/// Writes zeros.json, g.json, forward.json, zeros.csv and manifest.json.
int cmd_zeros(const std::string& f_spec, const RunOptions& opts, std::ostream& log);

/// Writes f.json, inverse.json, residuals.csv and manifest.json. With a
/// reference f the relative roundtrip error is reported in inverse.json.
int cmd_construct(const std::string& g_spec, const RunOptions& opts, std::ostream& log,
                  const std::string& reference_spec = "");

/// Re-counts R_m and K_n populations and recomputes residuals; writes verify.json.
int cmd_verify(const std::string& f_spec, const std::string& zeros_path, const RunOptions& opts, std::ostream& log);

/// Entry point: `sinezeros zeros|construct|verify [flags]`.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace sinezeros::cli
