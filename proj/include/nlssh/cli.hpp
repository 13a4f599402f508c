#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "nlssh/core.hpp"
#include "nlssh/edge.hpp"

namespace nlssh::cli {

inline constexpr int kSchemaVersion = 1;

/// Fully resolved run description: config-file values overridden by flags,
/// subcommand defaults filled in.
struct RunConfig {
  std::string subcommand;

  double v = 0.5;
  double w = 1.0;
  double a = 1.0;
  double v0 = 0.5;
  double w0 = 1.0;
  double L = 10.0;
  double dx = 0.01;

  std::size_t samples = 201;
  double kmin = 0.0;  // resolved to -pi/a when not given
  double kmax = 0.0;  // resolved to +pi/a when not given
  std::string order = "all";
  Band band = Band::plus;
  std::size_t nk = 2048;
  double cutoffK = 0.0;  // resolved to 1e4/a when not given
  std::size_t berryPoints = 65536;

  double tolZero = 1e-8;
  double tolWilson = 1e-3;
  bool vectors = false;
  std::string vectorsOut = "finite_states.csv";
  bool compareSsh = false;

  EdgeLabels labels{3, 1, 5, 2};

  bool json = false;
  std::string out;  // empty: stdout
  bool timing = false;

  /// Canonical argument list that re-parses to an equal RunConfig.
  std::vector<std::string> to_args() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses argv (without the program name). Throws Error(Usage) on bad usage.
RunConfig parse_args(const std::vector<std::string>& args);

std::string synopsis();

/// Parses and executes; returns 0 on success, 2 on validation/usage errors,
/// 3 on numerical or IO failures.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace nlssh::cli
