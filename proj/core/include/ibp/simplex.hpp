#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace ibp {

/// Linear program  min c'x  s.t.  row_lower <= A x <= row_upper,
/// col_lower <= x <= col_upper, with A stored by columns.
struct LpData {
  int num_rows = 0;
  int num_cols = 0;
  std::vector<int> col_start;  // num_cols + 1
  std::vector<int> row_index;
  std::vector<double> value;
  std::vector<double> cost;
  std::vector<double> col_lower, col_upper;
  std::vector<double> row_lower, row_upper;
};

enum class LpStatus { Optimal, Infeasible, IterationLimit, NumericalFailure };

const char* to_string(LpStatus s);

/// Basis statuses for structural columns followed by row logicals.
struct LpBasis {
  enum : std::uint8_t { kBasic = 0, kLower = 1, kUpper = 2 };
  std::vector<std::uint8_t> status;
  bool empty() const { return status.empty(); }
};

/// Bounded-variable simplex solver.
///
/// Each solve starts from the current basis, which must be dual feasible
/// (the slack basis is, for nonnegative costs on columns with finite lower
/// bounds). The dual simplex restores primal feasibility; a primal phase
/// then removes dual infeasibilities left by cost perturbation or rounding.
/// Columns must have at least one finite bound.
class LpSolver {
 public:
  explicit LpSolver(const LpData& data);
  ~LpSolver();
  LpSolver(const LpSolver&) = delete;
  LpSolver& operator=(const LpSolver&) = delete;

  int num_rows() const;
  int num_cols() const;

  void set_col_bounds(int j, double lower, double upper);
  double col_lower(int j) const;
  double col_upper(int j) const;
  /// Replaces the objective; resets to the slack basis.
  void set_costs(const std::vector<double>& cost);

  LpBasis basis() const;
  /// Installs a basis taken from a solver over the same data.
  void set_basis(const LpBasis& basis);
  void reset_basis();
  void set_iteration_limit(int limit);
  /// Enables Bland's rule after this many iterations without progress.
  void set_stall_limit(int limit);

  LpStatus solve();

  double objective() const;
  std::vector<double> column_values() const;
  /// Row multipliers y of the last optimal basis: c - A'y is the reduced
  /// cost vector.
  std::vector<double> row_duals();
  int iterations() const;
  long total_iterations() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace ibp
