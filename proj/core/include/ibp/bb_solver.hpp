#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ibp/milp_model.hpp"
#include "ibp/simplex.hpp"

namespace ibp {

enum class Branching {
  MostViolated,  // largest normalized complementarity product
  FirstViolated, // first violated pair in (t, c, f) order
};

struct SolveOptions {
  double gap_tol = 1e-6;
  double time_limit = 600.0;  // seconds; ignored when deterministic
  long node_limit = 200000;
  Branching branching = Branching::MostViolated;
  bool deterministic = false;
  /// Per-node log lines are written here when set.
  std::ostream* log = nullptr;
  int log_every = 100;

  void check() const;
};

enum class SolveStatus { Optimal, FeasibleGap, Infeasible, LimitReached };

const char* to_string(SolveStatus s);

struct SolveOutcome {
  SolveStatus status = SolveStatus::Infeasible;
  std::vector<double> assignment;  // empty without incumbent
  double value = 0.0;              // incumbent objective (d^peak)
  double bound = 0.0;              // best proven lower bound
  double gap = 0.0;
  long node_count = 0;
  long lp_count = 0;
  long lp_iterations = 0;
  double seconds = 0.0;
  std::string incumbent_source;  // "heuristic", "node", "warm-start"

  bool has_incumbent() const { return !assignment.empty(); }
};

/// Binary fixings as (column, value) pairs.
using Fixings = std::vector<std::pair<int, int>>;

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  double value = 0.0;
  std::vector<double> point;
};

/// LP data of the model with binaries relaxed to [0, 1].
LpData relaxation_data(const MilpModel& model);

/// Exact LP relaxation optimum under `fixings`. Fixing a binary also bounds
/// its partner quantity: w = 1 sets the dual's upper bound to zero, w = 0
/// zeroes the primal side where it is a single column.
LpResult solve_lp_relaxation(const MilpModel& model, const Fixings& fixings = {});

/// Branch and bound over the complementarity binaries. `warm` is an optional
/// feasible assignment; without one the flat-tariff point is used.
SolveOutcome solve(const MilpModel& model, const SolveOptions& opts,
                   const std::vector<double>* warm = nullptr);

inline constexpr int kDefaultPatternCap = 24;

/// Exhaustive search over every binary pattern, each evaluated by its LP.
/// Only LP infeasibility prunes the enumeration. Throws ModelError when the
/// model has more than `cap` binaries.
SolveOutcome enumerate_patterns(const MilpModel& model, int cap = kDefaultPatternCap);

/// `key: value` summary of an outcome. Timing is left out unless asked for,
/// so deterministic runs produce identical summaries.
void write_solve_summary(const SolveOutcome& outcome, std::ostream& out,
                         bool include_time = false);

}  // namespace ibp
