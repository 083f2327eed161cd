#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ibp/scenario.hpp"

namespace ibp::cli {

enum class ExitCode : int {
  kSuccess = 0,
  kScenarioError = 1,
  kNoIncumbent = 2,
  kIoError = 3,
};

struct RunManifest {
  std::string command;
  std::string scenario_path;
  std::string output_dir = ".";
  std::vector<double> xi_values;
  std::vector<int> block_counts;
  std::optional<double> eps;
  std::optional<double> xi_large;
  std::optional<double> q_step;
  double gap_tol = 1e-6;
  double time_limit = 600.0;
  long node_limit = 200000;
  bool deterministic = false;
  std::uint64_t seed = 42;
  std::string template_name = "peaked";
  int horizon = 24;
  int clusters = 4;
  int households = 1000;
};

/// Executes one command; diagnostics go to `err`, progress to `out`.
ExitCode run(const RunManifest& manifest, std::ostream& out, std::ostream& err);

/// Parses the command line into a manifest. Returns an exit code when the
/// process should stop right away (help, usage errors).
std::optional<int> parse_command_line(int argc, char** argv, RunManifest& manifest);

/// Synthetic scenario shaped by `template_name` (peaked, bimodal or flat).
/// `households` are split evenly across clusters. Same seed, same result.
ScenarioConfig generate_scenario(std::uint64_t seed, const std::string& template_name,
                                 int horizon, int clusters, int households = 1000);

/// Default price-increment grid 0, 0.005, ..., 0.06.
std::vector<double> default_xi_grid();

}  // namespace ibp::cli
