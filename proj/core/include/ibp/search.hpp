#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ibp/bb_solver.hpp"
#include "ibp/report.hpp"
#include "ibp/scenario.hpp"

namespace ibp {

class SearchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepSpec {
  std::vector<double> xi_values;
  std::vector<int> block_counts = {2};
  SolveOptions solve_options;

  /// Throws SearchError unless the xi values are finite, nonnegative and
  /// ascending and every block count is at least 2.
  void check() const;
};

/// One report per (F, xi) pair, F-major in input order. Failures are
/// recorded in the report's solver status; the sweep always completes.
std::vector<SolutionReport> sweep(const ScenarioConfig& cfg, const SweepSpec& spec);

/// Solves a single (xi, F) point.
SolutionReport solve_point(const ScenarioConfig& cfg, double xi, int blocks,
                           const SolveOptions& opts, SolveOutcome* outcome = nullptr);

struct LowerBoundIteration {
  std::vector<double> breakpoints;
  double peak = 0.0;
  double par = 0.0;
};

struct LowerBoundResult {
  double par_lower = 0.0;
  double q1_star = 0.0;
  std::vector<double> q_star;
  double eps = 0.0;
  double xi_large = 0.0;
  std::vector<LowerBoundIteration> per_iteration;
  Envelopes envelopes;
  std::string log;
};

/// 2 * max_c(tau_c * 2 * sigma_c * max_t D_tc) + 10 * flat price.
double default_xi_large(const ScenarioConfig& cfg);
/// One 500th of the breakpoint range.
double default_eps(const ScenarioConfig& cfg);

/// Peak-to-average lower bound with a large price increment. With
/// `blocks` = 3 both breakpoints are scanned on the eps grid.
LowerBoundResult lower_bound(const ScenarioConfig& cfg, std::optional<double> eps = std::nullopt,
                             std::optional<double> xi_large = std::nullopt, int blocks = 2);

/// Grid search over breakpoints. Each grid point is evaluated with the
/// response engine and kept when the coupling rows admit some lambda1;
/// the best point is reported with lambda1 at the middle of its interval.
SolutionReport oracle_grid(const ScenarioConfig& cfg, double xi, int blocks, double q_step);

}  // namespace ibp
