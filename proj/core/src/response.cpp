#include "ibp/response.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace ibp {

DemandResponse::DemandResponse(int horizon, int clusters, int blocks)
    : T(horizon),
      C(clusters),
      F(blocks),
      block_demand(static_cast<std::size_t>(horizon) * clusters * blocks, 0.0),
      shift(static_cast<std::size_t>(horizon) * clusters, 0.0) {}

double DemandResponse::supplied(int t, int c) const {
  double s = 0.0;
  for (int f = 0; f < F; ++f) s += d(t, c, f);
  return s;
}

DualSolution::DualSolution(int horizon, int clusters, int blocks)
    : T(horizon),
      C(clusters),
      F(blocks),
      rho(static_cast<std::size_t>(horizon) * clusters, 0.0),
      mu_minus(static_cast<std::size_t>(horizon) * clusters * blocks, 0.0),
      mu_plus(static_cast<std::size_t>(horizon) * clusters * (blocks - 1), 0.0),
      phi_minus(static_cast<std::size_t>(horizon) * clusters, 0.0),
      phi_plus(static_cast<std::size_t>(horizon) * clusters, 0.0),
      eta(clusters, 0.0) {}

double block_bill(double demand, const PriceStructure& prices) {
  const auto split = baseline_block_split(demand, prices.breakpoints);
  double bill = 0.0;
  for (std::size_t f = 0; f < split.size(); ++f) {
    bill += prices.block_price(static_cast<int>(f)) * split[f];
  }
  return bill;
}

namespace {

constexpr int kMaxBisection = 200;

double snap_tol(double scale) { return 1e-12 * std::max(1.0, std::abs(scale)); }

// One time slot of the per-unit relative problem
//   min_x  P(D + x) + tau/2 x^2 + v x,   |x| <= sigma D,
// where P has slopes 0, xi, 2 xi, ... on consecutive blocks.
class SlotModel {
 public:
  SlotModel(double demand, double sigma, double tau, double xi,
            std::span<const double> cum_breaks)
      : demand_(demand), half_width_(sigma * demand), tau_(tau), xi_(xi) {
    // Kinks of the bill in shift coordinates, one per finite breakpoint.
    kinks_.reserve(cum_breaks.size());
    for (double q : cum_breaks) kinks_.push_back(q - demand);
  }

  double lower() const { return -half_width_; }
  double upper() const { return half_width_; }
  double demand() const { return demand_; }

  struct Point {
    double x;
    bool interior;  // strictly inside a linear piece; moves with v
  };

  /// Smallest minimizer for multiplier v.
  Point smallest_minimizer(double v) const {
    const double lo = lower();
    const double hi = upper();
    if (!(lo < hi)) return {lo, false};
    double a = lo;
    std::size_t next = first_kink_above(a);
    while (true) {
      const double b = next < kinks_.size() ? std::min(kinks_[next], hi) : hi;
      const double slope = xi_ * static_cast<double>(blocks_below(a));
      if (slope + tau_ * a + v >= 0.0) return {a, false};
      if (tau_ > 0.0) {
        const double root = -(slope + v) / tau_;
        if (root < b) return {root, true};
      }
      if (b >= hi) return {hi, false};
      a = b;
      next = first_kink_above(a);
    }
  }

  /// Largest minimizer for multiplier v.
  Point largest_minimizer(double v) const {
    const double lo = lower();
    const double hi = upper();
    if (!(lo < hi)) return {lo, false};
    double b = hi;
    std::ptrdiff_t prev = last_kink_below(b);
    while (true) {
      const double a = prev >= 0 ? std::max(kinks_[prev], lo) : lo;
      const double slope = xi_ * static_cast<double>(blocks_below(a));
      if (slope + tau_ * b + v <= 0.0) return {b, false};
      if (tau_ > 0.0) {
        const double root = -(slope + v) / tau_;
        if (root > a) return {root, true};
      }
      if (a <= lo) return {lo, false};
      b = a;
      prev = last_kink_below(b);
    }
  }

  /// Left and right slopes of the bill P at shift x, kinks within tolerance.
  std::pair<double, double> slopes_at(double x) const {
    const double tol = snap_tol(demand_ + x);
    std::size_t left = 0;
    std::size_t right = 0;
    for (double k : kinks_) {
      if (k < x - tol) ++left;
      if (k <= x + tol) ++right;
    }
    return {xi_ * static_cast<double>(left), xi_ * static_cast<double>(right)};
  }

  double tau() const { return tau_; }

 private:
  // Number of kinks at or below x: the 0-based block index of the piece that
  // starts at x.
  std::size_t blocks_below(double x) const {
    std::size_t n = 0;
    for (double k : kinks_) {
      if (k <= x) ++n;
    }
    return n;
  }
  std::size_t first_kink_above(double x) const {
    std::size_t i = 0;
    while (i < kinks_.size() && kinks_[i] <= x) ++i;
    return i;
  }
  std::ptrdiff_t last_kink_below(double x) const {
    std::ptrdiff_t i = static_cast<std::ptrdiff_t>(kinks_.size()) - 1;
    while (i >= 0 && kinks_[i] >= x) --i;
    return i;
  }

  double demand_;
  double half_width_;
  double tau_;
  double xi_;
  std::vector<double> kinks_;
};

// x_t = clamp(nu, lo_t, hi_t) with sum_t x_t = 0: the minimum-norm point of
// the box that is energy neutral.
std::vector<double> neutral_projection(const std::vector<double>& lo,
                                       const std::vector<double>& hi) {
  const std::size_t n = lo.size();
  auto total = [&](double nu) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::clamp(nu, lo[i], hi[i]);
    return s;
  };
  const double sum_lo = std::accumulate(lo.begin(), lo.end(), 0.0);
  const double sum_hi = std::accumulate(hi.begin(), hi.end(), 0.0);
  if (sum_lo >= 0.0) return lo;
  if (sum_hi <= 0.0) return hi;
  std::vector<double> knots;
  knots.reserve(2 * n);
  knots.insert(knots.end(), lo.begin(), lo.end());
  knots.insert(knots.end(), hi.begin(), hi.end());
  std::sort(knots.begin(), knots.end());
  double nu = 0.0;
  double prev_k = knots.front();
  double prev_g = total(prev_k);
  for (std::size_t i = 1; i < knots.size(); ++i) {
    const double k = knots[i];
    const double g = total(k);
    if (g >= 0.0) {
      nu = g > prev_g ? prev_k + (0.0 - prev_g) * (k - prev_k) / (g - prev_g) : k;
      break;
    }
    prev_k = k;
    prev_g = g;
  }
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = std::clamp(nu, lo[i], hi[i]);
  return x;
}

}  // namespace

ClusterResponse solve_cluster_response(const ClusterProfile& cluster,
                                       const PriceStructure& prices, double tol) {
  if (!(tol > 0.0)) throw ResponseError("tolerance must be positive");
  const int T = static_cast<int>(cluster.baseline.size());
  const int F = prices.block_count();
  const double xi = prices.xi;
  const double tau = cluster.tau;
  const double n = cluster.n;

  std::vector<double> cum(F - 1);
  {
    double acc = 0.0;
    for (int f = 0; f + 1 < F; ++f) {
      acc += prices.breakpoints[f];
      cum[f] = acc;
    }
  }
  std::vector<SlotModel> slots;
  slots.reserve(T);
  double max_half_width = 0.0;
  for (int t = 0; t < T; ++t) {
    slots.emplace_back(cluster.baseline[t], cluster.sigma, tau, xi, cum);
    max_half_width = std::max(max_half_width, slots.back().upper());
  }

  const double top_slope = xi * (F - 1);
  double v_lo = -(top_slope + tau * max_half_width) - 1.0;
  double v_hi = tau * max_half_width + 1.0;

  std::vector<double> x(T, 0.0);
  double v = 0.0;
  int iterations = 0;

  auto smallest = [&](double mult, std::vector<double>& out, int* free_count) {
    double s = 0.0;
    int free = 0;
    for (int t = 0; t < T; ++t) {
      const auto p = slots[t].smallest_minimizer(mult);
      out[t] = p.x;
      s += p.x;
      free += p.interior ? 1 : 0;
    }
    if (free_count) *free_count = free;
    return s;
  };

  if (tau > 0.0) {
    std::vector<double> trial(T);
    double best_abs = std::numeric_limits<double>::infinity();
    bool converged = false;
    for (; iterations < kMaxBisection; ++iterations) {
      v = 0.5 * (v_lo + v_hi);
      int free = 0;
      const double s = smallest(v, trial, &free);
      if (std::abs(s) < best_abs) {
        best_abs = std::abs(s);
        x = trial;
      }
      if (std::abs(s) <= tol) {
        // Newton polish on the piecewise-linear aggregate.
        double cur = s;
        for (int k = 0; k < 4 && free > 0 && cur != 0.0; ++k) {
          const double cand = std::clamp(v + cur * tau / free, v_lo, v_hi);
          int cand_free = 0;
          const double cs = smallest(cand, trial, &cand_free);
          if (std::abs(cs) >= std::abs(cur)) break;
          v = cand;
          cur = cs;
          free = cand_free;
          x = trial;
        }
        converged = true;
        break;
      }
      if (s > 0.0) {
        v_lo = v;
      } else {
        v_hi = v;
      }
      if (!(v_hi - v_lo > 0.0)) break;
    }
    if (!converged) {
      throw ResponseError("neutrality bisection did not reach tolerance " +
                          std::to_string(tol) + " (best residual " +
                          std::to_string(best_abs) + ")");
    }
  } else {
    // Piecewise-constant marginal costs: the aggregate shift only changes at
    // v = -f xi. Test those points and the open intervals between them.
    std::vector<double> candidates;
    for (int f = 0; f < F; ++f) candidates.push_back(-xi * f);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    std::vector<double> probe{v_lo};
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      probe.push_back(candidates[i]);
      probe.push_back(i + 1 < candidates.size()
                          ? 0.5 * (candidates[i] + candidates[i + 1])
                          : v_hi);
    }
    std::vector<double> lo(T), hi(T);
    bool found = false;
    for (double cand : probe) {
      ++iterations;
      double s_lo = 0.0, s_hi = 0.0;
      for (int t = 0; t < T; ++t) {
        lo[t] = slots[t].smallest_minimizer(cand).x;
        hi[t] = slots[t].largest_minimizer(cand).x;
        s_lo += lo[t];
        s_hi += hi[t];
      }
      if (s_lo <= tol && s_hi >= -tol) {
        v = cand;
        x = neutral_projection(lo, hi);
        found = true;
        break;
      }
    }
    if (!found) throw ResponseError("no neutral multiplier found for tau = 0");
  }

  ClusterResponse out;
  out.iterations = iterations;
  out.shift = x;
  out.block_demand.assign(static_cast<std::size_t>(T) * F, 0.0);
  out.rho.assign(T, 0.0);
  out.mu_minus.assign(static_cast<std::size_t>(T) * F, 0.0);
  out.mu_plus.assign(static_cast<std::size_t>(T) * (F - 1), 0.0);
  out.phi_minus.assign(T, 0.0);
  out.phi_plus.assign(T, 0.0);

  // Pin the multiplier inside the range where the response is unsaturated
  // and every slot stays optimal, so dual magnitudes match the big-M bounds.
  {
    double lo_v = -top_slope - tau * max_half_width;
    double hi_v = tau * max_half_width;
    for (int t = 0; t < T; ++t) {
      const auto& sm = slots[t];
      const double xt = x[t];
      const double xtol = snap_tol(sm.demand());
      const bool at_lo = xt <= sm.lower() + xtol;
      const bool at_hi = xt >= sm.upper() - xtol;
      const auto [pl, pr] = sm.slopes_at(xt);
      if (!at_lo) hi_v = std::min(hi_v, -(pl + tau * xt));
      if (!at_hi) lo_v = std::max(lo_v, -(pr + tau * xt));
    }
    if (lo_v <= hi_v) v = std::clamp(v, lo_v, hi_v);
  }

  const double lambda1 = prices.lambda1;
  double objective = 0.0;
  for (int t = 0; t < T; ++t) {
    const double demand = cluster.baseline[t];
    const double s = demand + x[t];
    const auto split = baseline_block_split(s, prices.breakpoints);
    for (int f = 0; f < F; ++f) {
      out.block_demand[t * F + f] = split[f];
      objective += prices.block_price(f) * split[f];
    }
    objective += 0.5 * tau * x[t] * x[t];

    // Canonical multipliers: the per-unit relative balance multiplier r is
    // the marginal block price within the interval allowed by the split.
    const double ztol = snap_tol(s);
    double r_lo = -top_slope;
    double r_hi = 0.0;
    enum class Fill { kEmpty, kPartial, kFull, kDegenerate };
    std::vector<Fill> fill(F);
    for (int f = 0; f < F; ++f) {
      const double d = split[f];
      const double p = xi * f;
      if (f + 1 < F && prices.breakpoints[f] <= ztol) {
        fill[f] = Fill::kDegenerate;
      } else if (d <= ztol) {
        fill[f] = Fill::kEmpty;
        r_lo = std::max(r_lo, -p);
      } else if (f + 1 < F && d >= prices.breakpoints[f] - ztol) {
        fill[f] = Fill::kFull;
        r_hi = std::min(r_hi, -p);
      } else {
        fill[f] = Fill::kPartial;
        r_lo = std::max(r_lo, -p);
        r_hi = std::min(r_hi, -p);
      }
    }
    const double r_star = tau * x[t] + v;
    const double r = r_lo <= r_hi ? std::clamp(r_star, r_lo, r_hi) : r_star;
    const double xtol = snap_tol(demand);
    const bool at_lo = x[t] <= slots[t].lower() + xtol;
    const bool at_hi = x[t] >= slots[t].upper() - xtol;
    const double gap = r_star - r;
    if (gap > 0.0 && at_lo) out.phi_minus[t] = n * gap;
    if (gap < 0.0 && at_hi) out.phi_plus[t] = -n * gap;
    out.rho[t] = n * (r - lambda1);
    for (int f = 0; f < F; ++f) {
      const double p = xi * f;
      double mum = 0.0, mup = 0.0;
      switch (fill[f]) {
        case Fill::kFull: mup = std::max(-p - r, 0.0); break;
        case Fill::kEmpty: mum = std::max(p + r, 0.0); break;
        case Fill::kDegenerate:
          mum = std::max(p + r, 0.0);
          mup = std::max(-p - r, 0.0);
          break;
        case Fill::kPartial: break;
      }
      out.mu_minus[t * F + f] = n * mum;
      if (f + 1 < F) out.mu_plus[t * (F - 1) + f] = n * mup;
    }
  }
  out.eta = n * (v - lambda1);
  out.objective = n * objective;
  return out;
}

ResponseSolution solve_response(const ScenarioConfig& cfg, const PriceStructure& prices,
                                double tol) {
  const int T = cfg.horizon;
  const int C = cfg.num_clusters();
  const int F = prices.block_count();
  ResponseSolution sol{DemandResponse(T, C, F), DualSolution(T, C, F)};
  double objective = 0.0;
  for (int c = 0; c < C; ++c) {
    const auto cr = solve_cluster_response(cfg.clusters[c], prices, tol);
    std::copy(cr.shift.begin(), cr.shift.end(), sol.response.shift.begin() + c * T);
    std::copy(cr.block_demand.begin(), cr.block_demand.end(),
              sol.response.block_demand.begin() + static_cast<std::ptrdiff_t>(c) * T * F);
    std::copy(cr.rho.begin(), cr.rho.end(), sol.duals.rho.begin() + c * T);
    std::copy(cr.phi_minus.begin(), cr.phi_minus.end(), sol.duals.phi_minus.begin() + c * T);
    std::copy(cr.phi_plus.begin(), cr.phi_plus.end(), sol.duals.phi_plus.begin() + c * T);
    std::copy(cr.mu_minus.begin(), cr.mu_minus.end(),
              sol.duals.mu_minus.begin() + static_cast<std::ptrdiff_t>(c) * T * F);
    std::copy(cr.mu_plus.begin(), cr.mu_plus.end(),
              sol.duals.mu_plus.begin() + static_cast<std::ptrdiff_t>(c) * T * (F - 1));
    sol.duals.eta[c] = cr.eta;
    objective += cr.objective;
  }
  sol.response.objective_value = objective;
  return sol;
}

double lower_level_objective(const ScenarioConfig& cfg, const PriceStructure& prices,
                             const DemandResponse& resp) {
  double total = 0.0;
  for (int c = 0; c < resp.C; ++c) {
    const auto& cl = cfg.clusters[c];
    double cluster_cost = 0.0;
    for (int t = 0; t < resp.T; ++t) {
      for (int f = 0; f < resp.F; ++f) cluster_cost += prices.block_price(f) * resp.d(t, c, f);
      cluster_cost += 0.5 * cl.tau * resp.x(t, c) * resp.x(t, c);
    }
    total += cl.n * cluster_cost;
  }
  return total;
}

double kkt_residual(const ScenarioConfig& cfg, const PriceStructure& prices,
                    const DemandResponse& resp, const DualSolution& duals) {
  const int T = resp.T;
  const int C = resp.C;
  const int F = resp.F;
  if (T != cfg.horizon || C != cfg.num_clusters() || F != prices.block_count() ||
      duals.T != T || duals.C != C || duals.F != F) {
    return std::numeric_limits<double>::infinity();
  }
  double worst = 0.0;
  auto note = [&](double v) { worst = std::max(worst, std::abs(v)); };
  for (int c = 0; c < C; ++c) {
    const auto& cl = cfg.clusters[c];
    const double n = cl.n;
    double neutrality = 0.0;
    for (int t = 0; t < T; ++t) {
      const double D = cl.baseline[t];
      const double x = resp.x(t, c);
      const double rho = duals.rho[c * T + t];
      const double phm = duals.phi_minus[c * T + t];
      const double php = duals.phi_plus[c * T + t];
      neutrality += x;
      // Stationarity in the shift.
      note(n * cl.tau * x - phm + php + duals.eta[c] - rho);
      // Shift box and its complementarity.
      note(std::max(-cl.sigma * D - x, 0.0));
      note(std::max(x - cl.sigma * D, 0.0));
      note(phm * (x + cl.sigma * D));
      note(php * (cl.sigma * D - x));
      note(std::min(phm, 0.0));
      note(std::min(php, 0.0));
      // Power balance.
      note(resp.supplied(t, c) - x - D);
      for (int f = 0; f < F; ++f) {
        const double d = resp.d(t, c, f);
        const double mum = duals.mum(t, c, f);
        const double mup = f + 1 < F ? duals.mup(t, c, f) : 0.0;
        note(n * prices.block_price(f) - mum + mup + rho);
        note(std::min(d, 0.0));
        note(mum * d);
        note(std::min(mum, 0.0));
        if (f + 1 < F) {
          const double q = prices.breakpoints[f];
          note(std::max(d - q, 0.0));
          note(mup * (q - d));
          note(std::min(mup, 0.0));
        }
      }
    }
    note(neutrality);
  }
  return worst;
}

DemandResponse brute_force_response(const ScenarioConfig& cfg, const PriceStructure& prices,
                                    double grid_step, double cap) {
  if (!(grid_step > 0.0)) throw ResponseError("grid step must be positive");
  const int T = cfg.horizon;
  const int C = cfg.num_clusters();
  const int F = prices.block_count();
  DemandResponse out(T, C, F);
  for (int c = 0; c < C; ++c) {
    const auto& cl = cfg.clusters[c];
    std::vector<long> reach(T);
    double points = 1.0;
    for (int t = 0; t + 1 < T; ++t) {
      reach[t] = static_cast<long>(std::floor(cl.sigma * cl.baseline[t] / grid_step + 1e-9));
      points *= static_cast<double>(2 * reach[t] + 1);
    }
    if (points > cap) {
      throw ResponseError("enumeration grid of " + std::to_string(points) +
                          " points exceeds cap " + std::to_string(cap));
    }
    const double last_box = cl.sigma * cl.baseline[T - 1];
    std::vector<long> k(T, 0);
    for (int t = 0; t + 1 < T; ++t) k[t] = -reach[t];
    std::vector<double> x(T), best_x(T, 0.0);
    double best = std::numeric_limits<double>::infinity();
    while (true) {
      double sum = 0.0;
      for (int t = 0; t + 1 < T; ++t) {
        x[t] = static_cast<double>(k[t]) * grid_step;
        sum += x[t];
      }
      x[T - 1] = -sum;
      if (std::abs(x[T - 1]) <= last_box + 1e-12) {
        double cost = 0.0;
        for (int t = 0; t < T; ++t) {
          cost += block_bill(cl.baseline[t] + x[t], prices) + 0.5 * cl.tau * x[t] * x[t];
        }
        if (cost < best) {
          best = cost;
          best_x = x;
        }
      }
      int t = 0;
      while (t + 1 < T && k[t] == reach[t]) {
        k[t] = -reach[t];
        ++t;
      }
      if (t + 1 >= T) break;
      ++k[t];
    }
    for (int t = 0; t < T; ++t) {
      out.x(t, c) = best_x[t];
      const auto split = baseline_block_split(cl.baseline[t] + best_x[t], prices.breakpoints);
      for (int f = 0; f < F; ++f) out.d(t, c, f) = split[f];
    }
  }
  out.objective_value = lower_level_objective(cfg, prices, out);
  return out;
}

}  // namespace ibp
