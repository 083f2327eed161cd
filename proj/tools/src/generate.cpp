#include <cmath>
#include <random>
#include <stdexcept>

#include "ibp/cli.hpp"

namespace ibp::cli {

namespace {

// Uniform in [0, 1) from the raw engine output, so the values do not depend
// on the standard library's distribution implementation.
class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : rng_(seed) {}
  double operator()() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  double operator()(double lo, double hi) { return lo + (hi - lo) * (*this)(); }

 private:
  std::mt19937_64 rng_;
};

double bump(double hour, double centre, double width) {
  const double d = (hour - centre) / width;
  return std::exp(-0.5 * d * d);
}

double round4(double v) { return std::round(v * 1e4) / 1e4; }

// Winter-day wholesale curve in currency/kWh, cheapest overnight and
// highest around the early-evening peak.
double wholesale(double hour) {
  return 0.045 + 0.025 * bump(hour, 8.0, 1.5) + 0.13 * bump(hour, 18.0, 1.8);
}

}  // namespace

std::vector<double> default_xi_grid() {
  std::vector<double> grid;
  for (int k = 0; k <= 12; ++k) grid.push_back(0.005 * k);
  return grid;
}

ScenarioConfig generate_scenario(std::uint64_t seed, const std::string& template_name,
                                 int horizon, int clusters, int households) {
  if (horizon < 2) throw ScenarioError("horizon", "must be at least 2");
  if (clusters < 1) throw ScenarioError("clusters", "at least one cluster required");
  if (households < clusters) throw ScenarioError("households", "fewer households than clusters");
  if (template_name != "peaked" && template_name != "bimodal" && template_name != "flat") {
    throw ScenarioError("template", "unknown template '" + template_name + "'");
  }

  Uniform u(seed);
  ScenarioConfig cfg;
  cfg.label = template_name + "-seed" + std::to_string(seed);
  cfg.horizon = horizon;
  cfg.rate_of_return = 1.0;
  cfg.block_count = 2;
  const double hours_per_slot = 24.0 / horizon;
  for (int t = 0; t < horizon; ++t) {
    cfg.wholesale_rates.push_back(round4(wholesale((t + 0.5) * hours_per_slot)));
  }

  for (int c = 0; c < clusters; ++c) {
    ClusterProfile cl;
    cl.name = "cluster-" + std::to_string(c + 1);
    cl.n = households / clusters + (c < households % clusters ? 1 : 0);
    cl.sigma = 0.2;
    cl.tau = 0.03;
    const double scale = u(0.8, 1.2);
    if (template_name == "flat") {
      // Dyadic level so the aggregate is exactly constant.
      const double level = 0.25 * (1 + static_cast<int>(u() * 4));
      cl.baseline.assign(horizon, level);
    } else {
      const double morning = template_name == "bimodal" ? u(0.55, 0.75) : u(0.15, 0.35);
      const double evening = template_name == "bimodal" ? u(0.55, 0.75) : u(0.55, 0.8);
      const double centre = 18.5 + u(-1.0, 1.0);
      for (int t = 0; t < horizon; ++t) {
        const double hour = (t + 0.5) * hours_per_slot;
        const double shape = 0.3 + morning * bump(hour, 8.0, 1.5) +
                             evening * bump(hour, centre, 2.0);
        cl.baseline.push_back(round4(scale * shape * u(0.96, 1.04)));
      }
    }
    cfg.clusters.push_back(std::move(cl));
  }
  validate(cfg);
  return cfg;
}

}  // namespace ibp::cli
