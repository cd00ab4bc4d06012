#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace radialqc::cli {

enum class OutputFormat { Csv, Json };

struct RunConfig {
  double K = 2.0;
  int dimension = 2;
  std::size_t depth = 10000;
  std::size_t grid_points = 1000;
  double tol = 1e-9;
  OutputFormat format = OutputFormat::Csv;
  std::string output_path = "-";  // "-" is standard output
};

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertion = 1;
inline constexpr int kExitUsage = 2;

/// Reads {"K", "dimension", "depth", "grid_points", "tol"} (plus optional
/// "output_format", "output_path") over `base`. Throws DomainError on unknown
/// keys, wrong types or out-of-range values.
RunConfig load_config_file(const std::string& path, RunConfig base = {});

/// Throws DomainError unless every field is in range.
void validate(const RunConfig& config);

/// Entry point of the command-line tool; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace radialqc::cli
