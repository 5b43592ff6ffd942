#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ugsim/experiment.hpp"
#include "ugsim/oracle.hpp"

namespace ugsim {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything a config file can set. One file drives simulate, oracle and
/// calibrate; each subcommand reads the keys it needs.
struct RunConfig {
  ExperimentConfig experiment;
  std::string out_dir = ".";
  int oracle_reps = 100000;
  CalibrationTarget target;
  SearchSpace search;
  double min_gap_se = 2.0;
};

/// Flat `key = value` lines, `#` starts a comment, lists are comma
/// separated. Unknown or repeated keys and malformed values throw
/// ConfigError naming the source and line.
RunConfig parse_config(std::string_view text, std::string_view source = "<config>");
RunConfig load_config(const std::filesystem::path& path);

/// Renders the keys of a calibrated point as config lines.
std::string format_calibrated_config(const CalibrationPoint& p);

}  // namespace ugsim
