#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace radialqc {

struct VerifyConfig {
  double K = 2.0;
  int dimension = 2;
  std::size_t depth = 10000;
  std::size_t grid_points = 1000;
  double tol = 1e-9;
  std::uint64_t seed = 20240611;
};

/// One invariant: `measured` compared against `threshold` with `relation`
/// ("<=" for residuals, ">=" for separation witnesses).
struct CheckResult {
  std::string module;
  std::string name;
  double measured = 0.0;
  std::string relation;
  double threshold = 0.0;
  bool pass = false;
};

/// Runs the invariant suite of every module. Identities are judged against
/// `tol`; finite-difference comparisons and the attraction rate use their own
/// fixed relative tolerances. Deterministic for a given config.
std::vector<CheckResult> run_verification(const VerifyConfig& config);

}  // namespace radialqc
