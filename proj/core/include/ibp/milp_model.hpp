#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "ibp/response.hpp"
#include "ibp/scenario.hpp"

namespace ibp {

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Big-M constants of the complementarity linearization.
///
/// M1..M4 are the largest row constants of each family; the model uses the
/// per-row values, which are tighter. Storage follows DemandResponse:
/// `[(c * T + t) * F + f]` for family 1, `[(c * T + t) * (F - 1) + f]` for
/// family 2 and `[c * T + t]` for families 3 and 4.
struct BigMSet {
  double M1 = 0.0;
  double M2 = 0.0;
  double M3 = 0.0;
  double M4 = 0.0;
  double lambda1_upper = 0.0;
  std::string derivation_log;

  double safety = 2.0;
  std::vector<double> m1_primal, m1_dual;
  std::vector<double> m2_primal, m2_dual;
  std::vector<double> m3_primal, m3_dual;
  std::vector<double> m4_primal, m4_dual;

  /// Variable boxes implied by the same derivation, per cluster.
  std::vector<double> rho_lower;
  std::vector<double> eta_lower, eta_upper;
  double peak_upper = 0.0;
};

BigMSet compute_big_m(const ScenarioConfig& cfg, double xi);

enum class Sense : char { Le = 'L', Ge = 'G', Eq = 'E' };

struct ModelVariable {
  std::string name;
  double lower = 0.0;
  double upper = 0.0;
  bool binary = false;
};

struct ModelRow {
  std::string name;
  Sense sense = Sense::Le;
  double rhs = 0.0;
  std::vector<int> cols;
  std::vector<double> coefs;
};

enum class PairKind { BlockEmpty, BlockFull, ShiftLower, ShiftUpper };

/// One linearized complementarity condition: `primal >= 0`, `dual >= 0`,
/// `primal * dual = 0`, with `primal <= w * primal_m` and
/// `dual <= (1 - w) * dual_m`.
struct ComplementarityPair {
  PairKind kind = PairKind::BlockEmpty;
  int t = 0;
  int c = 0;
  int f = 0;
  int binary = -1;
  int dual = -1;
  std::vector<int> primal_cols;
  std::vector<double> primal_coefs;
  double primal_constant = 0.0;
  double primal_m = 0.0;
  double dual_m = 0.0;
  int primal_row = -1;
  int dual_row = -1;

  double primal_value(const std::vector<double>& x) const;
};

/// Single-level mixed-integer model for a fixed price increment.
struct MilpModel {
  int T = 0;
  int C = 0;
  int F = 0;
  double xi = 0.0;
  double total_demand = 0.0;
  double flat_price = 0.0;
  BigMSet bigm;
  ScenarioConfig scenario;  // source configuration, used by the primal heuristic

  std::vector<ModelVariable> variables;
  std::vector<ModelRow> rows;
  std::vector<double> objective;  // dense, minimized
  std::vector<ComplementarityPair> pairs;

  // Column offsets of each variable family.
  int lambda1_col = -1;
  int q_begin = -1;
  int ds_begin = -1;
  int dsh_begin = -1;
  int rho_begin = -1;
  int mum_begin = -1;
  int mup_begin = -1;
  int phim_begin = -1;
  int phip_begin = -1;
  int eta_begin = -1;
  int peak_col = -1;
  int z_begin = -1;
  int w1_begin = -1;
  int w2_begin = -1;
  int w3_begin = -1;
  int w4_begin = -1;

  // Row indices of the upper-level coupling rows.
  int revenue_row = -1;
  int bill_row_begin = -1;

  int q(int f) const { return q_begin + f; }
  int ds(int t, int c, int f) const { return ds_begin + (c * T + t) * F + f; }
  int dsh(int t, int c) const { return dsh_begin + c * T + t; }
  int rho(int t, int c) const { return rho_begin + c * T + t; }
  int mum(int t, int c, int f) const { return mum_begin + (c * T + t) * F + f; }
  int mup(int t, int c, int f) const { return mup_begin + (c * T + t) * (F - 1) + f; }
  int phim(int t, int c) const { return phim_begin + c * T + t; }
  int phip(int t, int c) const { return phip_begin + c * T + t; }
  int eta(int c) const { return eta_begin + c; }
  int z(int t, int c) const { return z_begin + c * T + t; }
  int w1(int t, int c, int f) const { return w1_begin + (c * T + t) * F + f; }
  int w2(int t, int c, int f) const { return w2_begin + (c * T + t) * (F - 1) + f; }
  int w3(int t, int c) const { return w3_begin + c * T + t; }
  int w4(int t, int c) const { return w4_begin + c * T + t; }

  int num_columns() const { return static_cast<int>(variables.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }
  int num_binaries() const;
  int num_continuous() const { return num_columns() - num_binaries(); }
  long num_nonzeros() const;
};

MilpModel build_milp(const ScenarioConfig& cfg, double xi, const BigMSet& bigm);

/// Largest violation of any row, bound or integrality requirement.
double max_violation(const MilpModel& model, const std::vector<double>& x);

struct ExtractedSolution {
  PriceStructure prices;
  DemandResponse response;
  DualSolution duals;
  double peak = 0.0;
  double par = 0.0;
};

/// Typed view of an assignment. Throws ModelError if a row is violated by
/// more than `tol`.
ExtractedSolution extract_solution(const MilpModel& model, const std::vector<double>& x,
                                   double tol = 1e-6);

/// Builds a full model assignment from upper-level prices and a lower-level
/// solution: binaries follow the complementarity pattern, epigraph
/// auxiliaries take their exact value and the peak is the true peak.
std::vector<double> make_assignment(const MilpModel& model, const ScenarioConfig& cfg,
                                    const PriceStructure& prices,
                                    const ResponseSolution& lower);

/// Flat-tariff point: q = upper breakpoint bound, lambda1 = flat price,
/// zero shift.
std::vector<double> flat_price_assignment(const MilpModel& model, const ScenarioConfig& cfg);

/// Feasible lambda1 interval of the coupling rows for a fixed response.
/// Empty when `lower > upper`.
struct Lambda1Interval {
  double lower = 0.0;
  double upper = 0.0;
  bool empty() const { return lower > upper; }
  double midpoint() const { return 0.5 * (lower + upper); }
};

Lambda1Interval lambda1_interval(const ScenarioConfig& cfg, double xi,
                                 const std::vector<double>& breakpoints,
                                 const DemandResponse& response);

struct BigMFinding {
  std::string variable;
  double value = 0.0;
  double bound = 0.0;
};

struct BigMReport {
  std::vector<BigMFinding> flagged;
  double max_ratio = 0.0;
  bool clean() const { return flagged.empty(); }
};

/// Flags primal or dual quantities within `margin` (relative) of their M.
BigMReport validate_big_m(const MilpModel& model, const std::vector<double>& x,
                          double margin = 0.01);

/// Rows, columns, binaries and nonzeros as `key: value` lines.
void write_model_stats(const MilpModel& model, std::ostream& out);

/// MPS fixed-format export; byte-deterministic.
void export_mps(const MilpModel& model, std::ostream& out);
void export_mps_file(const MilpModel& model, const std::string& path);

}  // namespace ibp
