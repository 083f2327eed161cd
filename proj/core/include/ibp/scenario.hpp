#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ibp {

/// Raised when a scenario document or configuration violates the schema.
/// `field_path()` points at the offending entry, e.g. "clusters[2].sigma".
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(std::string field_path, const std::string& message);

  const std::string& field_path() const noexcept { return field_path_; }

 private:
  std::string field_path_;
};

/// One consumer cluster: `n` identical households with a baseline profile.
struct ClusterProfile {
  int n = 1;
  std::vector<double> baseline;  // kWh per slot, length T
  double sigma = 0.0;            // shiftable fraction of each slot's demand
  double tau = 0.0;              // shifting cost, currency / kWh^2
  std::string name;
};

struct BreakpointBounds {
  double lower = 0.0;
  double upper = 0.0;
};

struct ScenarioConfig {
  int horizon = 0;
  std::vector<ClusterProfile> clusters;
  std::vector<double> wholesale_rates;  // currency / kWh, length T
  double rate_of_return = 1.0;
  int block_count = 2;
  std::optional<BreakpointBounds> breakpoint_bounds;
  std::string label;

  int num_clusters() const { return static_cast<int>(clusters.size()); }
};

/// Ladder tariff: block f (1-based) costs lambda1 + (f-1) * xi per kWh.
struct PriceStructure {
  double lambda1 = 0.0;
  double xi = 0.0;
  std::vector<double> breakpoints;  // q_1 .. q_{F-1}

  int block_count() const { return static_cast<int>(breakpoints.size()) + 1; }
  /// Price of block `f`, 0-based.
  double block_price(int f) const { return lambda1 + f * xi; }
};

struct ScenarioDerived {
  double flat_price = 0.0;
  double total_demand = 0.0;
  double baseline_par = 1.0;
  BreakpointBounds default_bounds;
};

/// Checks every invariant of the configuration; throws ScenarioError.
void validate(const ScenarioConfig& cfg);

ScenarioConfig load_scenario(std::istream& in);
ScenarioConfig load_scenario_file(const std::string& path);
/// Writes `cfg` in the same schema `load_scenario` reads.
void save_scenario(const ScenarioConfig& cfg, std::ostream& out);

/// Budget-balancing flat tariff r * sum(lw * n * D) / sum(n * D).
double flat_price(const ScenarioConfig& cfg);

/// Splits `demand` over F blocks by filling block 1 first, then block 2, ...
std::vector<double> baseline_block_split(double demand,
                                         std::span<const double> breakpoints);

/// Weighted block index sum_f (f-1) * d0_f for the split of `demand`.
double block_excess(double demand, std::span<const double> breakpoints);

BreakpointBounds default_breakpoint_bounds(const ScenarioConfig& cfg);

ScenarioDerived derive(const ScenarioConfig& cfg);

/// Aggregate baseline demand sum_c n_c D_tc for every slot.
std::vector<double> aggregate_baseline(const ScenarioConfig& cfg);

}  // namespace ibp
