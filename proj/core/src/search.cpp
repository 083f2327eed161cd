#include "ibp/search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "ibp/milp_model.hpp"
#include "ibp/response.hpp"

namespace ibp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double aggregate_peak(const ScenarioConfig& cfg, const DemandResponse& r) {
  double peak = 0.0;
  for (int t = 0; t < cfg.horizon; ++t) {
    double load = 0.0;
    for (int c = 0; c < cfg.num_clusters(); ++c) load += cfg.clusters[c].n * r.supplied(t, c);
    peak = std::max(peak, load);
  }
  return peak;
}

// lo, lo + step, ... strictly below hi, then hi itself. A step covering the
// whole range leaves lo alone.
std::vector<double> axis(double lo, double hi, double step) {
  std::vector<double> v;
  if (!(hi > lo)) return {hi};
  if (step >= hi - lo) return {lo};
  for (long k = 0;; ++k) {
    const double q = lo + static_cast<double>(k) * step;
    if (q >= hi - 1e-12 * (hi - lo)) break;
    v.push_back(q);
  }
  v.push_back(hi);
  return v;
}

std::vector<std::vector<double>> grid(double lo, double hi, double step, int dim) {
  const auto ax = axis(lo, hi, step);
  std::vector<std::vector<double>> pts;
  if (dim == 1) {
    for (double a : ax) pts.push_back({a});
  } else if (dim == 2) {
    for (double a : ax) {
      for (double b : ax) pts.push_back({a, b});
    }
  } else {
    throw SearchError("grid search supports 2 or 3 blocks");
  }
  return pts;
}

std::string fmt(const char* f, double v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

}  // namespace

void SweepSpec::check() const {
  if (xi_values.empty()) throw SearchError("sweep needs at least one xi value");
  for (std::size_t i = 0; i < xi_values.size(); ++i) {
    if (!std::isfinite(xi_values[i]) || xi_values[i] < 0.0) {
      throw SearchError("xi values must be finite and nonnegative");
    }
    if (i > 0 && xi_values[i] < xi_values[i - 1]) throw SearchError("xi values must be ascending");
  }
  if (block_counts.empty()) throw SearchError("sweep needs at least one block count");
  for (int F : block_counts) {
    if (F < 2) throw SearchError("block counts must be at least 2");
  }
}

SolutionReport solve_point(const ScenarioConfig& cfg, double xi, int blocks,
                           const SolveOptions& opts, SolveOutcome* outcome) {
  ScenarioConfig c = cfg;
  c.block_count = blocks;
  const auto model = build_milp(c, xi, compute_big_m(c, xi));
  auto out = solve(model, opts);
  SolutionReport rep;
  if (out.has_incumbent()) {
    const auto sol = extract_solution(model, out.assignment);
    rep = metrics(c, sol.prices, sol.response);
  } else {
    rep.label = c.label;
    rep.reference = reference_figures(c);
  }
  rep.xi = xi;
  rep.blocks = blocks;
  rep.solver = summarize(out);
  if (outcome) *outcome = std::move(out);
  return rep;
}

std::vector<SolutionReport> sweep(const ScenarioConfig& cfg, const SweepSpec& spec) {
  spec.check();
  validate(cfg);
  std::vector<SolutionReport> reports;
  for (int F : spec.block_counts) {
    for (double xi : spec.xi_values) {
      try {
        reports.push_back(solve_point(cfg, xi, F, spec.solve_options));
      } catch (const std::exception& e) {
        SolutionReport rep;
        rep.label = cfg.label;
        rep.xi = xi;
        rep.blocks = F;
        rep.solver.status = "error";
        rep.solver.gap = kInf;
        rep.solver.message = e.what();
        reports.push_back(std::move(rep));
      }
    }
  }
  return reports;
}

double default_xi_large(const ScenarioConfig& cfg) {
  double worst = 0.0;
  for (const auto& cl : cfg.clusters) {
    const double dmax = *std::max_element(cl.baseline.begin(), cl.baseline.end());
    worst = std::max(worst, cl.tau * 2.0 * cl.sigma * dmax);
  }
  return 2.0 * worst + 10.0 * flat_price(cfg);
}

double default_eps(const ScenarioConfig& cfg) {
  const auto b = default_breakpoint_bounds(cfg);
  return (b.upper - b.lower) / 500.0;
}

LowerBoundResult lower_bound(const ScenarioConfig& cfg, std::optional<double> eps,
                             std::optional<double> xi_large, int blocks) {
  validate(cfg);
  if (blocks != 2 && blocks != 3) throw SearchError("lower bound supports 2 or 3 blocks");
  const int T = cfg.horizon, C = cfg.num_clusters();
  const auto bounds = default_breakpoint_bounds(cfg);
  LowerBoundResult res;
  res.eps = eps.value_or(default_eps(cfg));
  res.xi_large = xi_large.value_or(default_xi_large(cfg));
  if (!(res.eps > 0.0)) throw SearchError("eps must be positive");
  if (!(res.xi_large > 0.0)) throw SearchError("xi_large must be positive");

  double worst = 0.0;
  for (const auto& cl : cfg.clusters) {
    worst = std::max(worst, cl.tau * 2.0 * cl.sigma *
                                *std::max_element(cl.baseline.begin(), cl.baseline.end()));
  }
  res.log += "largest marginal shifting cost max_c tau*2*sigma*maxD = " + fmt("%.9g", worst) + "\n";
  res.log += "flat price = " + fmt("%.9g", flat_price(cfg)) + "\n";
  res.log += "xi_large = " + fmt("%.9g", res.xi_large) +
             (xi_large ? " (override)\n" : " (2 * shifting cost + 10 * flat price)\n");
  if (res.xi_large < 2.0 * worst) {
    res.log += "warning: xi_large is below twice the largest marginal shifting cost\n";
  }
  res.log += "eps = " + fmt("%.9g", res.eps) + "\n";
  if (res.eps >= bounds.upper - bounds.lower) {
    res.log += "warning: eps covers the whole breakpoint range; a single iteration is run\n";
  }

  const double total = derive(cfg).total_demand;
  auto& env = res.envelopes;
  env.lower.assign(T * C, kInf);
  env.upper.assign(T * C, -kInf);
  env.aggregate_lower.assign(T, kInf);
  env.aggregate_upper.assign(T, -kInf);

  double best = kInf;
  for (const auto& q : grid(bounds.lower, bounds.upper, res.eps, blocks - 1)) {
    ScenarioConfig c = cfg;
    c.block_count = blocks;
    const PriceStructure prices{0.0, res.xi_large, q};
    const auto r = solve_response(c, prices).response;
    const double peak = aggregate_peak(c, r);
    res.per_iteration.push_back({q, peak, peak / (total / T)});
    if (peak < best) {
      best = peak;
      res.q_star = q;
    }
    for (int t = 0; t < T; ++t) {
      double load = 0.0;
      for (int k = 0; k < C; ++k) {
        const double s = r.supplied(t, k);
        env.lower[k * T + t] = std::min(env.lower[k * T + t], s);
        env.upper[k * T + t] = std::max(env.upper[k * T + t], s);
        load += cfg.clusters[k].n * s;
      }
      env.aggregate_lower[t] = std::min(env.aggregate_lower[t], load);
      env.aggregate_upper[t] = std::max(env.aggregate_upper[t], load);
    }
  }
  res.par_lower = best / (total / T);
  res.q1_star = res.q_star.front();
  res.log += "iterations = " + std::to_string(res.per_iteration.size()) + "\n";
  res.log += "par_lower = " + fmt("%.9g", res.par_lower) + " at q1 = " + fmt("%.9g", res.q1_star) +
             "\n";
  return res;
}

SolutionReport oracle_grid(const ScenarioConfig& cfg, double xi, int blocks, double q_step) {
  validate(cfg);
  if (blocks != 2 && blocks != 3) throw SearchError("oracle grid supports 2 or 3 blocks");
  if (!(q_step > 0.0)) throw SearchError("q_step must be positive");
  if (!(xi >= 0.0)) throw SearchError("xi must be nonnegative");
  ScenarioConfig c = cfg;
  c.block_count = blocks;
  const auto bounds = default_breakpoint_bounds(c);

  double best_peak = kInf;
  std::vector<double> best_q;
  Lambda1Interval best_iv;
  double nearest = kInf;  // smallest interval violation, for diagnostics
  std::vector<double> nearest_q;
  long points = 0, feasible = 0;
  for (const auto& q : grid(bounds.lower, bounds.upper, q_step, blocks - 1)) {
    ++points;
    const PriceStructure prices{0.0, xi, q};
    const auto r = solve_response(c, prices).response;
    const auto iv = lambda1_interval(c, xi, q, r);
    if (iv.empty()) {
      if (iv.lower - iv.upper < nearest) {
        nearest = iv.lower - iv.upper;
        nearest_q = q;
      }
      continue;
    }
    ++feasible;
    const double peak = aggregate_peak(c, r);
    if (peak < best_peak) {
      best_peak = peak;
      best_q = q;
      best_iv = iv;
    }
  }
  if (best_q.empty()) {
    std::string msg = "no grid point admits a feasible lambda1 (" + std::to_string(points) +
                      " points); nearest point q = (";
    for (std::size_t i = 0; i < nearest_q.size(); ++i) {
      msg += (i ? ", " : "") + fmt("%.6g", nearest_q[i]);
    }
    msg += ") misses by " + fmt("%.3g", nearest);
    throw SearchError(msg);
  }
  const PriceStructure prices{best_iv.midpoint(), xi, best_q};
  const auto r = solve_response(c, prices).response;
  auto rep = metrics(c, prices, r);
  rep.solver.status = "oracle";
  rep.solver.value = best_peak;
  rep.solver.bound = best_peak;
  rep.solver.nodes = points;
  rep.solver.lps = feasible;
  rep.solver.message = std::to_string(feasible) + " of " + std::to_string(points) +
                       " grid points feasible";
  return rep;
}

}  // namespace ibp
