#include "ibp/milp_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

namespace ibp {

namespace {

std::string code(const char* family, int t, int c, int f = -1) {
  char buf[40];
  if (f < 0) {
    std::snprintf(buf, sizeof buf, "%s%03d%02d", family, t + 1, c + 1);
  } else {
    std::snprintf(buf, sizeof buf, "%s%03d%02d%d", family, t + 1, c + 1, f + 1);
  }
  return buf;
}

std::string code(const char* family, int index) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%s%02d", family, index + 1);
  return buf;
}

double max_baseline(const ClusterProfile& cl) {
  return *std::max_element(cl.baseline.begin(), cl.baseline.end());
}

// Every M must be strictly positive even where the derived bound is zero
// (e.g. sigma = 0 or xi = 0); any positive constant is then valid.
constexpr double kFloor = 1e-6;

}  // namespace

double ComplementarityPair::primal_value(const std::vector<double>& x) const {
  double v = primal_constant;
  for (std::size_t k = 0; k < primal_cols.size(); ++k) v += primal_coefs[k] * x[primal_cols[k]];
  return v;
}

BigMSet compute_big_m(const ScenarioConfig& cfg, double xi) {
  if (!(xi >= 0.0) || !std::isfinite(xi)) throw ModelError("price increment must be >= 0");
  validate(cfg);
  const int T = cfg.horizon;
  const int C = cfg.num_clusters();
  const int F = cfg.block_count;
  const auto derived = derive(cfg);
  const double lo = derived.flat_price;
  const double qhat = derived.default_bounds.upper;

  BigMSet m;
  const double s = m.safety;
  m.lambda1_upper = lo;
  m.m1_primal.resize(T * C * F);
  m.m1_dual.resize(T * C * F);
  m.m2_primal.resize(T * C * (F - 1));
  m.m2_dual.resize(T * C * (F - 1));
  m.m3_primal.resize(T * C);
  m.m3_dual.resize(T * C);
  m.m4_primal.resize(T * C);
  m.m4_dual.resize(T * C);
  m.rho_lower.resize(C);
  m.eta_lower.resize(C);
  m.eta_upper.resize(C);

  double dmax_all = 0.0;
  for (const auto& cl : cfg.clusters) dmax_all = std::max(dmax_all, max_baseline(cl));
  const double primal_floor = kFloor * std::max(1.0, dmax_all);

  std::ostringstream log;
  log.precision(10);
  log << "flat price lambda_o = " << lo << "\n"
      << "lambda1 <= lambda_o: bill protection with z >= 0 gives "
         "(lambda1 - lambda_o) * sum_t D_tc <= 0\n"
      << "breakpoint upper bound q_hat = " << qhat << "\n"
      << "safety factor = " << s << "\n"
      << "marginal slot price pi_tc in [lambda1, lambda1 + (F-1) xi]; rho = -n pi\n";

  double peak = 0.0;
  for (int c = 0; c < C; ++c) {
    const auto& cl = cfg.clusters[c];
    const double n = cl.n;
    const double dmax = max_baseline(cl);
    const double shift_cost = cl.tau * cl.sigma * dmax;
    const double dual_floor = kFloor * n * std::max(1.0, lo);
    peak += n * (1.0 + cl.sigma) * dmax;

    m.rho_lower[c] = -s * n * ((F - 1) * xi + lo);
    m.eta_lower[c] = -s * n * ((F - 1) * xi + lo + shift_cost);
    m.eta_upper[c] = s * n * shift_cost + dual_floor;

    log << "cluster " << c + 1 << ": n = " << n << ", max D = " << dmax
        << ", tau*sigma*maxD = " << shift_cost << "\n"
        << "  mu-_f <= n (f-1) xi, mu+_f <= n (F-f) xi\n"
        << "  phi <= n (tau sigma maxD + (F-1) xi - tau sigma D_t)\n"
        << "  rho in [" << m.rho_lower[c] << ", 0], eta in [" << m.eta_lower[c] << ", "
        << m.eta_upper[c] << "]\n";

    for (int t = 0; t < T; ++t) {
      const double D = cl.baseline[t];
      const double top = (1.0 + cl.sigma) * D;
      for (int f = 0; f < F; ++f) {
        const int k = (c * T + t) * F + f;
        const double primal = f + 1 < F ? std::min(qhat, top) : top;
        m.m1_primal[k] = s * std::max(primal, primal_floor);
        m.m1_dual[k] = s * std::max(n * f * xi, dual_floor);
        if (f + 1 < F) {
          const int k2 = (c * T + t) * (F - 1) + f;
          m.m2_primal[k2] = s * std::max(qhat, primal_floor);
          m.m2_dual[k2] = s * std::max(n * (F - 1 - f) * xi, dual_floor);
        }
      }
      const double box = 2.0 * cl.sigma * D;
      const double phi = n * (shift_cost + (F - 1) * xi - cl.tau * cl.sigma * D);
      m.m3_primal[c * T + t] = s * std::max(box, primal_floor);
      m.m4_primal[c * T + t] = s * std::max(box, primal_floor);
      m.m3_dual[c * T + t] = s * std::max(phi, dual_floor);
      m.m4_dual[c * T + t] = s * std::max(phi, dual_floor);
    }
  }
  m.peak_upper = peak;

  auto family_max = [](const std::vector<double>& a, const std::vector<double>& b) {
    double v = 0.0;
    for (double x : a) v = std::max(v, x);
    for (double x : b) v = std::max(v, x);
    return v;
  };
  m.M1 = family_max(m.m1_primal, m.m1_dual);
  m.M2 = family_max(m.m2_primal, m.m2_dual);
  m.M3 = family_max(m.m3_primal, m.m3_dual);
  m.M4 = family_max(m.m4_primal, m.m4_dual);
  log << "M1 = " << m.M1 << "\nM2 = " << m.M2 << "\nM3 = " << m.M3 << "\nM4 = " << m.M4
      << "\n";
  m.derivation_log = log.str();
  return m;
}

int MilpModel::num_binaries() const {
  return static_cast<int>(std::count_if(variables.begin(), variables.end(),
                                        [](const ModelVariable& v) { return v.binary; }));
}

long MilpModel::num_nonzeros() const {
  long nnz = 0;
  for (const auto& r : rows) nnz += static_cast<long>(r.cols.size());
  return nnz;
}

MilpModel build_milp(const ScenarioConfig& cfg, double xi, const BigMSet& bigm) {
  validate(cfg);
  const int T = cfg.horizon;
  const int C = cfg.num_clusters();
  const int F = cfg.block_count;
  if (T > 999 || C > 99 || F > 9) {
    throw ModelError("dimensions exceed the naming scheme (T <= 999, C <= 99, F <= 9)");
  }
  if (static_cast<int>(bigm.m1_primal.size()) != T * C * F ||
      static_cast<int>(bigm.m2_primal.size()) != T * C * (F - 1) ||
      static_cast<int>(bigm.m3_primal.size()) != T * C ||
      static_cast<int>(bigm.rho_lower.size()) != C) {
    throw ModelError("big-M set does not match the scenario dimensions");
  }
  for (const auto* v : {&bigm.m1_primal, &bigm.m1_dual, &bigm.m2_primal, &bigm.m2_dual,
                        &bigm.m3_primal, &bigm.m3_dual, &bigm.m4_primal, &bigm.m4_dual}) {
    for (double M : *v) {
      if (!(M > 0.0) || !std::isfinite(M)) throw ModelError("nonpositive big-M constant");
    }
  }
  if (!(xi >= 0.0) || !std::isfinite(xi)) throw ModelError("price increment must be >= 0");

  const auto derived = derive(cfg);
  const auto bounds = derived.default_bounds;

  MilpModel m;
  m.T = T;
  m.C = C;
  m.F = F;
  m.xi = xi;
  m.total_demand = derived.total_demand;
  m.flat_price = derived.flat_price;
  m.bigm = bigm;
  m.scenario = cfg;

  auto add_var = [&](std::string name, double lo, double hi, bool binary = false) {
    m.variables.push_back({std::move(name), lo, hi, binary});
    return static_cast<int>(m.variables.size()) - 1;
  };

  m.lambda1_col = add_var("LAM1", 0.0, bigm.lambda1_upper);
  m.q_begin = m.num_columns();
  for (int f = 0; f + 1 < F; ++f) add_var("Q" + std::to_string(f + 1), bounds.lower, bounds.upper);
  m.ds_begin = m.num_columns();
  for (int c = 0; c < C; ++c) {
    const auto& cl = cfg.clusters[c];
    for (int t = 0; t < T; ++t) {
      const double top = (1.0 + cl.sigma) * cl.baseline[t];
      for (int f = 0; f < F; ++f) {
        add_var(code("DS", t, c, f), 0.0, f + 1 < F ? std::min(bounds.upper, top) : top);
      }
    }
  }
  m.dsh_begin = m.num_columns();
  for (int c = 0; c < C; ++c) {
    const auto& cl = cfg.clusters[c];
    for (int t = 0; t < T; ++t) {
      const double box = cl.sigma * cl.baseline[t];
      add_var(code("DH", t, c), -box, box);
    }
  }
  m.rho_begin = m.num_columns();
  for (int c = 0; c < C; ++c) {
    for (int t = 0; t < T; ++t) add_var(code("RH", t, c), bigm.rho_lower[c], 0.0);
  }
  m.mum_begin = m.num_columns();
  for (int c = 0; c < C; ++c) {
    for (int t = 0; t < T; ++t) {
      for (int f = 0; f < F; ++f) {
        add_var(code("MM", t, c, f), 0.0, bigm.m1_dual[(c * T + t) * F + f]);
      }
    }
  }
  m.mup_begin = m.num_columns();
  for (int c = 0; c < C; ++c) {
    for (int t = 0; t < T; ++t) {
      for (int f = 0; f + 1 < F; ++f) {
        add_var(code("MP", t, c, f), 0.0, bigm.m2_dual[(c * T + t) * (F - 1) + f]);
      }
    }
  }
  m.phim_begin = m.num_columns();
  for (int c = 0; c < C; ++c) {
    for (int t = 0; t < T; ++t) add_var(code("FM", t, c), 0.0, bigm.m3_dual[c * T + t]);
  }
  m.phip_begin = m.num_columns();
  for (int c = 0; c < C; ++c) {
    for (int t = 0; t < T; ++t) add_var(code("FP", t, c), 0.0, bigm.m4_dual[c * T + t]);
  }
  m.eta_begin = m.num_columns();
  for (int c = 0; c < C; ++c) add_var(code("ET", c), bigm.eta_lower[c], bigm.eta_upper[c]);
  m.peak_col = add_var("DPEAK", 0.0, bigm.peak_upper);
  m.z_begin = m.num_columns();
  for (int c = 0; c < C; ++c) {
    for (int t = 0; t < T; ++t) {
      add_var(code("ZZ", t, c), 0.0, (F - 1) * cfg.clusters[c].baseline[t]);
    }
  }
  m.w1_begin = m.num_columns();
  for (int c = 0; c < C; ++c) {
    for (int t = 0; t < T; ++t) {
      for (int f = 0; f < F; ++f) add_var(code("W1", t, c, f), 0.0, 1.0, true);
    }
  }
  m.w2_begin = m.num_columns();
  for (int c = 0; c < C; ++c) {
    for (int t = 0; t < T; ++t) {
      for (int f = 0; f + 1 < F; ++f) add_var(code("W2", t, c, f), 0.0, 1.0, true);
    }
  }
  m.w3_begin = m.num_columns();
  for (int c = 0; c < C; ++c) {
    for (int t = 0; t < T; ++t) add_var(code("W3", t, c), 0.0, 1.0, true);
  }
  m.w4_begin = m.num_columns();
  for (int c = 0; c < C; ++c) {
    for (int t = 0; t < T; ++t) add_var(code("W4", t, c), 0.0, 1.0, true);
  }

  m.objective.assign(m.num_columns(), 0.0);
  m.objective[m.peak_col] = 1.0;

  auto add_row = [&](std::string name, Sense sense, double rhs) -> ModelRow& {
    m.rows.push_back({std::move(name), sense, rhs, {}, {}});
    return m.rows.back();
  };
  auto put = [](ModelRow& r, int col, double coef) {
    if (coef != 0.0) {
      r.cols.push_back(col);
      r.coefs.push_back(coef);
    }
  };

  // Peak: d_peak >= sum_c n_c sum_f d_tcf.
  for (int t = 0; t < T; ++t) {
    auto& r = add_row(code("PK", t), Sense::Ge, 0.0);
    put(r, m.peak_col, 1.0);
    for (int c = 0; c < C; ++c) {
      for (int f = 0; f < F; ++f) put(r, m.ds(t, c, f), -cfg.clusters[c].n);
    }
  }

  for (int c = 0; c < C; ++c) {
    const auto& cl = cfg.clusters[c];
    const double n = cl.n;
    for (int t = 0; t < T; ++t) {
      // Balance: sum_f d - x = D.
      auto& bal = add_row(code("BL", t, c), Sense::Eq, cl.baseline[t]);
      for (int f = 0; f < F; ++f) put(bal, m.ds(t, c, f), 1.0);
      put(bal, m.dsh(t, c), -1.0);
      // Block caps.
      for (int f = 0; f + 1 < F; ++f) {
        auto& cap = add_row(code("CP", t, c, f), Sense::Le, 0.0);
        put(cap, m.ds(t, c, f), 1.0);
        put(cap, m.q(f), -1.0);
      }
      // Stationarity in the shift.
      auto& sx = add_row(code("SX", t, c), Sense::Eq, 0.0);
      put(sx, m.dsh(t, c), n * cl.tau);
      put(sx, m.phim(t, c), -1.0);
      put(sx, m.phip(t, c), 1.0);
      put(sx, m.eta(c), 1.0);
      put(sx, m.rho(t, c), -1.0);
      // Stationarity in the block demands.
      for (int f = 0; f < F; ++f) {
        auto& sd = add_row(code("SD", t, c, f), Sense::Eq, -n * f * xi);
        put(sd, m.lambda1_col, n);
        put(sd, m.mum(t, c, f), -1.0);
        if (f + 1 < F) put(sd, m.mup(t, c, f), 1.0);
        put(sd, m.rho(t, c), 1.0);
      }
    }
    auto& nt = add_row(code("NT", c), Sense::Eq, 0.0);
    for (int t = 0; t < T; ++t) put(nt, m.dsh(t, c), 1.0);
  }

  // Complementarity pairs.
  auto add_pair = [&](PairKind kind, int t, int c, int f, int binary, int dual,
                      std::vector<int> cols, std::vector<double> coefs, double constant,
                      double mp, double md, const char* a, const char* b) {
    ComplementarityPair p;
    p.kind = kind;
    p.t = t;
    p.c = c;
    p.f = f;
    p.binary = binary;
    p.dual = dual;
    p.primal_cols = std::move(cols);
    p.primal_coefs = std::move(coefs);
    p.primal_constant = constant;
    p.primal_m = mp;
    p.dual_m = md;
    // primal <= w * mp
    p.primal_row = m.num_rows();
    auto& ra = add_row(f < 0 ? code(a, t, c) : code(a, t, c, f), Sense::Le, -constant);
    for (std::size_t k = 0; k < p.primal_cols.size(); ++k) put(ra, p.primal_cols[k], p.primal_coefs[k]);
    put(ra, binary, -mp);
    // dual <= (1 - w) * md
    p.dual_row = m.num_rows();
    auto& rb = add_row(f < 0 ? code(b, t, c) : code(b, t, c, f), Sense::Le, md);
    put(rb, dual, 1.0);
    put(rb, binary, md);
    m.pairs.push_back(std::move(p));
  };

  for (int c = 0; c < C; ++c) {
    const auto& cl = cfg.clusters[c];
    for (int t = 0; t < T; ++t) {
      for (int f = 0; f < F; ++f) {
        const int k = (c * T + t) * F + f;
        add_pair(PairKind::BlockEmpty, t, c, f, m.w1(t, c, f), m.mum(t, c, f),
                 {m.ds(t, c, f)}, {1.0}, 0.0, bigm.m1_primal[k], bigm.m1_dual[k], "A1", "B1");
      }
      for (int f = 0; f + 1 < F; ++f) {
        const int k = (c * T + t) * (F - 1) + f;
        add_pair(PairKind::BlockFull, t, c, f, m.w2(t, c, f), m.mup(t, c, f),
                 {m.q(f), m.ds(t, c, f)}, {1.0, -1.0}, 0.0, bigm.m2_primal[k],
                 bigm.m2_dual[k], "A2", "B2");
      }
      const double box = cl.sigma * cl.baseline[t];
      add_pair(PairKind::ShiftLower, t, c, -1, m.w3(t, c), m.phim(t, c), {m.dsh(t, c)}, {1.0},
               box, bigm.m3_primal[c * T + t], bigm.m3_dual[c * T + t], "A3", "B3");
      add_pair(PairKind::ShiftUpper, t, c, -1, m.w4(t, c), m.phip(t, c), {m.dsh(t, c)}, {-1.0},
               box, bigm.m4_primal[c * T + t], bigm.m4_dual[c * T + t], "A4", "B4");
    }
  }
  for (auto& p : m.pairs) {
    if (p.f < 0) p.f = 0;
  }

  // Revenue adequacy.
  m.revenue_row = m.num_rows();
  {
    auto& r = add_row("REV", Sense::Ge, 0.0);
    put(r, m.lambda1_col, derived.total_demand);
    for (int c = 0; c < C; ++c) {
      const double n = cfg.clusters[c].n;
      for (int t = 0; t < T; ++t) {
        for (int f = 0; f < F; ++f) {
          put(r, m.ds(t, c, f), (f * xi - cfg.rate_of_return * cfg.wholesale_rates[t]) * n);
        }
      }
    }
  }

  // Epigraph of the baseline block excess: z >= (k-1) D - sum_{j<k} (k-j) q_j.
  for (int c = 0; c < C; ++c) {
    for (int t = 0; t < T; ++t) {
      for (int k = 2; k <= F; ++k) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "E%d%03d%02d", k, t + 1, c + 1);
        auto& r = add_row(buf, Sense::Ge, (k - 1) * cfg.clusters[c].baseline[t]);
        put(r, m.z(t, c), 1.0);
        for (int j = 1; j < k; ++j) put(r, m.q(j - 1), static_cast<double>(k - j));
      }
    }
  }

  // Bill protection per cluster.
  m.bill_row_begin = m.num_rows();
  for (int c = 0; c < C; ++c) {
    const auto& cl = cfg.clusters[c];
    const double energy = std::accumulate(cl.baseline.begin(), cl.baseline.end(), 0.0);
    auto& r = add_row(code("PR", c), Sense::Le, derived.flat_price * energy);
    put(r, m.lambda1_col, energy);
    for (int t = 0; t < T; ++t) put(r, m.z(t, c), xi);
  }

  for (const auto& r : m.rows) {
    if (!std::isfinite(r.rhs)) throw ModelError("non-finite right-hand side in row " + r.name);
    for (double v : r.coefs) {
      if (!std::isfinite(v)) throw ModelError("non-finite coefficient in row " + r.name);
    }
  }
  return m;
}

double max_violation(const MilpModel& model, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != model.num_columns()) {
    return std::numeric_limits<double>::infinity();
  }
  double worst = 0.0;
  for (int j = 0; j < model.num_columns(); ++j) {
    const auto& v = model.variables[j];
    if (!std::isfinite(x[j])) return std::numeric_limits<double>::infinity();
    worst = std::max({worst, v.lower - x[j], x[j] - v.upper});
    if (v.binary) worst = std::max(worst, std::abs(x[j] - std::round(x[j])));
  }
  for (const auto& r : model.rows) {
    double a = 0.0;
    for (std::size_t k = 0; k < r.cols.size(); ++k) a += r.coefs[k] * x[r.cols[k]];
    switch (r.sense) {
      case Sense::Le: worst = std::max(worst, a - r.rhs); break;
      case Sense::Ge: worst = std::max(worst, r.rhs - a); break;
      case Sense::Eq: worst = std::max(worst, std::abs(a - r.rhs)); break;
    }
  }
  return worst;
}

ExtractedSolution extract_solution(const MilpModel& model, const std::vector<double>& x,
                                   double tol) {
  const double viol = max_violation(model, x);
  if (!(viol <= tol)) {
    throw ModelError("assignment violates the model by " + std::to_string(viol));
  }
  const int T = model.T, C = model.C, F = model.F;
  ExtractedSolution s;
  s.prices.lambda1 = x[model.lambda1_col];
  s.prices.xi = model.xi;
  for (int f = 0; f + 1 < F; ++f) s.prices.breakpoints.push_back(x[model.q(f)]);
  s.response = DemandResponse(T, C, F);
  s.duals = DualSolution(T, C, F);
  for (int c = 0; c < C; ++c) {
    for (int t = 0; t < T; ++t) {
      s.response.x(t, c) = x[model.dsh(t, c)];
      s.duals.rho[c * T + t] = x[model.rho(t, c)];
      s.duals.phi_minus[c * T + t] = x[model.phim(t, c)];
      s.duals.phi_plus[c * T + t] = x[model.phip(t, c)];
      for (int f = 0; f < F; ++f) {
        s.response.d(t, c, f) = x[model.ds(t, c, f)];
        s.duals.mum(t, c, f) = x[model.mum(t, c, f)];
        if (f + 1 < F) s.duals.mup(t, c, f) = x[model.mup(t, c, f)];
      }
    }
    s.duals.eta[c] = x[model.eta(c)];
  }
  s.peak = x[model.peak_col];
  s.par = s.peak / (model.total_demand / T);
  return s;
}

Lambda1Interval lambda1_interval(const ScenarioConfig& cfg, double xi,
                                 const std::vector<double>& breakpoints,
                                 const DemandResponse& response) {
  const int T = cfg.horizon;
  const double lo = flat_price(cfg);
  double cost = 0.0, excess = 0.0, total = 0.0;
  Lambda1Interval out{0.0, lo};
  for (int c = 0; c < cfg.num_clusters(); ++c) {
    const auto& cl = cfg.clusters[c];
    double g = 0.0, energy = 0.0;
    for (int t = 0; t < T; ++t) {
      total += cl.n * cl.baseline[t];
      energy += cl.baseline[t];
      g += block_excess(cl.baseline[t], breakpoints);
      for (int f = 0; f < response.F; ++f) {
        const double d = cl.n * response.d(t, c, f);
        cost += cfg.rate_of_return * cfg.wholesale_rates[t] * d;
        excess += f * d;
      }
    }
    out.upper = std::min(out.upper, lo - xi * g / energy);
  }
  out.lower = std::max(0.0, (cost - xi * excess) / total);
  return out;
}

std::vector<double> make_assignment(const MilpModel& model, const ScenarioConfig& cfg,
                                    const PriceStructure& prices,
                                    const ResponseSolution& lower) {
  const int T = model.T, C = model.C, F = model.F;
  std::vector<double> x(model.num_columns(), 0.0);
  x[model.lambda1_col] = prices.lambda1;
  for (int f = 0; f + 1 < F; ++f) x[model.q(f)] = prices.breakpoints[f];
  const auto& r = lower.response;
  const auto& d = lower.duals;
  double peak = 0.0;
  for (int t = 0; t < T; ++t) {
    double load = 0.0;
    for (int c = 0; c < C; ++c) {
      for (int f = 0; f < F; ++f) load += cfg.clusters[c].n * r.d(t, c, f);
    }
    peak = std::max(peak, load);
  }
  x[model.peak_col] = peak;
  for (int c = 0; c < C; ++c) {
    for (int t = 0; t < T; ++t) {
      x[model.dsh(t, c)] = r.x(t, c);
      x[model.rho(t, c)] = d.rho[c * T + t];
      x[model.phim(t, c)] = d.phi_minus[c * T + t];
      x[model.phip(t, c)] = d.phi_plus[c * T + t];
      x[model.z(t, c)] = block_excess(cfg.clusters[c].baseline[t], prices.breakpoints);
      for (int f = 0; f < F; ++f) {
        x[model.ds(t, c, f)] = r.d(t, c, f);
        x[model.mum(t, c, f)] = d.mum(t, c, f);
        if (f + 1 < F) x[model.mup(t, c, f)] = d.mup(t, c, f);
      }
    }
    x[model.eta(c)] = d.eta[c];
  }
  for (const auto& p : model.pairs) {
    x[p.binary] = p.primal_value(x) > x[p.dual] ? 1.0 : 0.0;
  }
  return x;
}

std::vector<double> flat_price_assignment(const MilpModel& model, const ScenarioConfig& cfg) {
  const int T = model.T, C = model.C, F = model.F;
  const double qhat = default_breakpoint_bounds(cfg).upper;
  PriceStructure prices{model.flat_price, model.xi, std::vector<double>(F - 1, qhat)};
  ResponseSolution lower{DemandResponse(T, C, F), DualSolution(T, C, F)};
  for (int c = 0; c < C; ++c) {
    const double n = cfg.clusters[c].n;
    for (int t = 0; t < T; ++t) {
      const auto split = baseline_block_split(cfg.clusters[c].baseline[t], prices.breakpoints);
      for (int f = 0; f < F; ++f) {
        lower.response.d(t, c, f) = split[f];
        lower.duals.mum(t, c, f) = n * f * model.xi;
      }
      lower.duals.rho[c * T + t] = -n * prices.lambda1;
    }
    lower.duals.eta[c] = -n * prices.lambda1;
  }
  return make_assignment(model, cfg, prices, lower);
}

BigMReport validate_big_m(const MilpModel& model, const std::vector<double>& x,
                          double margin) {
  BigMReport report;
  auto check = [&](const std::string& name, double value, double bound) {
    const double ratio = value / bound;
    report.max_ratio = std::max(report.max_ratio, ratio);
    if (value >= (1.0 - margin) * bound) report.flagged.push_back({name, value, bound});
  };
  for (const auto& p : model.pairs) {
    check(model.rows[p.primal_row].name, p.primal_value(x), p.primal_m);
    check(model.variables[p.dual].name, x[p.dual], p.dual_m);
  }
  return report;
}

void write_model_stats(const MilpModel& model, std::ostream& out) {
  out << "xi: " << model.xi << "\n"
      << "horizon: " << model.T << "\n"
      << "clusters: " << model.C << "\n"
      << "blocks: " << model.F << "\n"
      << "rows: " << model.num_rows() << "\n"
      << "columns: " << model.num_columns() << "\n"
      << "continuous: " << model.num_continuous() << "\n"
      << "binaries: " << model.num_binaries() << "\n"
      << "nonzeros: " << model.num_nonzeros() << "\n"
      << "complementarity_pairs: " << model.pairs.size() << "\n";
}

}  // namespace ibp
