#include "support/instances.hpp"

#include <random>

namespace ibp::testing {

ScenarioConfig toy_two_slot() {
  return single_cluster({1.0, 0.5}, 0.2, 0.03);
}

ScenarioConfig single_cluster(std::vector<double> baseline, double sigma, double tau, int n,
                              double wholesale) {
  ScenarioConfig cfg;
  cfg.horizon = static_cast<int>(baseline.size());
  cfg.wholesale_rates.assign(baseline.size(), wholesale);
  cfg.rate_of_return = 1.0;
  cfg.block_count = 2;
  ClusterProfile cl;
  cl.n = n;
  cl.baseline = std::move(baseline);
  cl.sigma = sigma;
  cl.tau = tau;
  cfg.clusters.push_back(std::move(cl));
  cfg.label = "test";
  return cfg;
}

ScenarioConfig random_scenario(std::uint64_t seed, const RandomSpec& spec) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> level(2, 30);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  ScenarioConfig cfg;
  cfg.horizon = spec.T;
  cfg.block_count = spec.F;
  cfg.rate_of_return = 1.0;
  cfg.label = "random-" + std::to_string(seed);
  for (int t = 0; t < spec.T; ++t) cfg.wholesale_rates.push_back(0.03 + 0.06 * unit(rng));
  for (int c = 0; c < spec.C; ++c) {
    ClusterProfile cl;
    cl.n = 1 + static_cast<int>(unit(rng) * spec.n_max);
    if (cl.n > spec.n_max) cl.n = spec.n_max;
    for (int t = 0; t < spec.T; ++t) cl.baseline.push_back(0.05 * level(rng));
    cl.sigma = 0.05 + (spec.sigma_max - 0.05) * unit(rng);
    cl.tau = spec.allow_zero_tau && unit(rng) < 0.25 ? 0.0 : 0.01 + (spec.tau_max - 0.01) * unit(rng);
    cfg.clusters.push_back(std::move(cl));
  }
  return cfg;
}

PriceStructure random_prices(std::uint64_t seed, const ScenarioConfig& cfg, double xi) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const auto bounds = default_breakpoint_bounds(cfg);
  std::uniform_real_distribution<double> q(bounds.lower, bounds.upper);
  PriceStructure p;
  p.lambda1 = 0.08;
  p.xi = xi;
  for (int f = 0; f + 1 < cfg.block_count; ++f) p.breakpoints.push_back(q(rng));
  return p;
}

}  // namespace ibp::testing
