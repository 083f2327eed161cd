#pragma once

#include <stdexcept>
#include <vector>

#include "ibp/scenario.hpp"

namespace ibp {

/// Consumer demand response for every (t, c, f).
///
/// Storage is cluster-major: `block_demand[(c * T + t) * F + f]`,
/// `shift[c * T + t]`.
struct DemandResponse {
  int T = 0;
  int C = 0;
  int F = 0;
  std::vector<double> block_demand;
  std::vector<double> shift;
  double objective_value = 0.0;

  DemandResponse() = default;
  DemandResponse(int horizon, int clusters, int blocks);

  double& d(int t, int c, int f) { return block_demand[(c * T + t) * F + f]; }
  double d(int t, int c, int f) const { return block_demand[(c * T + t) * F + f]; }
  double& x(int t, int c) { return shift[c * T + t]; }
  double x(int t, int c) const { return shift[c * T + t]; }
  /// Total supplied demand sum_f d_tcf.
  double supplied(int t, int c) const;
};

/// Lower-level multipliers. mu_plus has F-1 entries per (t, c).
struct DualSolution {
  int T = 0;
  int C = 0;
  int F = 0;
  std::vector<double> rho;        // [c][t]
  std::vector<double> mu_minus;   // [c][t][f], f < F
  std::vector<double> mu_plus;    // [c][t][f], f < F-1
  std::vector<double> phi_minus;  // [c][t]
  std::vector<double> phi_plus;   // [c][t]
  std::vector<double> eta;        // [c]

  DualSolution() = default;
  DualSolution(int horizon, int clusters, int blocks);

  double& mum(int t, int c, int f) { return mu_minus[(c * T + t) * F + f]; }
  double mum(int t, int c, int f) const { return mu_minus[(c * T + t) * F + f]; }
  double& mup(int t, int c, int f) { return mu_plus[(c * T + t) * (F - 1) + f]; }
  double mup(int t, int c, int f) const { return mu_plus[(c * T + t) * (F - 1) + f]; }
};

class ResponseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kDefaultResponseTol = 1e-9;

/// Increasing-block bill for consuming `demand` in one slot.
double block_bill(double demand, const PriceStructure& prices);

struct ClusterResponse {
  std::vector<double> shift;         // [t]
  std::vector<double> block_demand;  // [t][f]
  std::vector<double> rho;           // [t]
  std::vector<double> mu_minus;      // [t][f]
  std::vector<double> mu_plus;       // [t][f < F-1]
  std::vector<double> phi_minus;     // [t]
  std::vector<double> phi_plus;      // [t]
  double eta = 0.0;
  double objective = 0.0;
  int iterations = 0;
};

/// Optimal response of one cluster to `prices`.
///
/// The neutrality constraint sum_t x_t = 0 is dualized; for a fixed
/// multiplier every slot is a one-dimensional convex problem solved exactly,
/// and the multiplier is bisected until |sum_t x_t| <= tol. The computation
/// only depends on the price increments, so the result is independent of
/// lambda1 bit for bit. With tau = 0 the minimum-norm optimal shift is
/// returned.
ClusterResponse solve_cluster_response(const ClusterProfile& cluster,
                                       const PriceStructure& prices,
                                       double tol = kDefaultResponseTol);

struct ResponseSolution {
  DemandResponse response;
  DualSolution duals;
};

ResponseSolution solve_response(const ScenarioConfig& cfg,
                                const PriceStructure& prices,
                                double tol = kDefaultResponseTol);

/// Lower-level objective sum_c n_c (bill + shifting cost) at `resp`.
double lower_level_objective(const ScenarioConfig& cfg, const PriceStructure& prices,
                             const DemandResponse& resp);

/// Largest violation of stationarity, complementary slackness, dual and
/// primal feasibility of the lower-level KKT system.
double kkt_residual(const ScenarioConfig& cfg, const PriceStructure& prices,
                    const DemandResponse& resp, const DualSolution& duals);

inline constexpr double kDefaultEnumerationCap = 1e7;

/// Exhaustive search over shift vectors on a grid of spacing `grid_step`.
/// Slots 1..T-1 take grid values; the last slot absorbs the remainder so the
/// shift is exactly energy neutral. Throws ResponseError if the grid exceeds
/// `cap` points for any cluster.
DemandResponse brute_force_response(const ScenarioConfig& cfg,
                                    const PriceStructure& prices, double grid_step,
                                    double cap = kDefaultEnumerationCap);

}  // namespace ibp
