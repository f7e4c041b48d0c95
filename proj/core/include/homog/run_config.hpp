#pragma once

#include <string>
#include <vector>

#include "homog/hconv.hpp"

namespace homog {

/// Parsed CLI configuration. One JSON document drives every subcommand:
///   grid.n_cells, profile.layers | profile.smooth, epsilons, study.source,
///   study.lift, subdomain.rectangle, tests.polynomial_degree,
///   output.directory.
struct RunConfig {
  int n_cells = 256;
  PeriodicProfile profile = PeriodicProfile::piecewise({{1.0, Mat2::Identity()}});
  std::vector<double> epsilons{0.25, 0.125, 0.0625};
  std::string source = "zero-affine";  // or "manufactured"
  std::string lift = "x1";             // or "x1+x2"
  Rect subdomain{0.25, 0.25, 0.75, 0.75};
  int polynomial_degree = 3;
  std::string output_dir = "out";

  StudyConfig study_config(bool quotient_checks = true) const;
};

/// Parses and validates a config document. Violations raise ConfigInvalid
/// with a message naming the offending key.
RunConfig parse_run_config(const std::string& json_text);

/// Reads the file, then parses. An unreadable path is ConfigInvalid.
RunConfig load_run_config(const std::string& path);

/// Canonical JSON echo; re-parsing it reproduces an equivalent config.
std::string print_run_config(const RunConfig& cfg);

}  // namespace homog
