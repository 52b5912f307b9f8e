#pragma once

// Grid evaluation for the `run` subcommand.

#include <map>
#include <string>
#include <vector>

#include "mirrorflux/errors.hpp"

namespace mirrorflux::cli {

/// Output file could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

using KeyValues = std::map<std::string, std::string>;

/// Keys accepted in config files and as long flags, in display order.
const std::vector<std::string>& run_keys();

/// Flat key=value lines; '#' starts a comment line; blank lines ignored.
KeyValues parse_key_values(const std::string& text, const std::string& source);
KeyValues read_config_file(const std::string& path);

struct RunConfig {
  std::string scenario;
  double a = 1.0;
  std::string chart;  // empty: the scenario's default chart
  double c1_min = 0.0, c1_max = 0.0;
  int n1 = 0;
  double c2_min = 0.0, c2_max = 0.0;
  int n2 = 0;
  std::string frame = "null";  // null | orthonormal
  std::string output = "-";    // "-" is standard output
  std::string format = "csv";  // csv | json
};

/// Validates and converts; ConfigError messages name the offending field.
RunConfig parse_run_config(const KeyValues& kv);

/// Evaluates the grid and renders it. Throws CoverageError for grid points
/// outside the chart or the physical region (other than singular rays).
std::string render_run(const RunConfig& config);

/// Writes to config.output (or stdout); throws IoError.
void write_run(const RunConfig& config, const std::string& text);

}  // namespace mirrorflux::cli
