#include "ibp/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace ibp {

namespace {

double pct_reduction(double value, double reference) {
  if (reference == 0.0) return 0.0;
  return 100.0 * (reference - value) / reference;
}

double slot_load(const ScenarioConfig& cfg, const DemandResponse& r, int t) {
  double load = 0.0;
  for (int c = 0; c < cfg.num_clusters(); ++c) load += cfg.clusters[c].n * r.supplied(t, c);
  return load;
}

template <class Emit>
void to_file(const std::string& path, Emit emit) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  emit(out);
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_percent(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  return s == "-0.00" ? "0.00" : s;
}

SolverSummary summarize(const SolveOutcome& o) {
  SolverSummary s;
  s.status = to_string(o.status);
  s.value = o.has_incumbent() ? o.value : std::numeric_limits<double>::infinity();
  s.bound = o.bound;
  s.gap = o.gap;
  s.nodes = o.node_count;
  s.lps = o.lp_count;
  s.seconds = o.seconds;
  return s;
}

ReferenceFigures reference_figures(const ScenarioConfig& cfg) {
  const auto d = derive(cfg);
  ReferenceFigures ref;
  ref.flat_price = d.flat_price;
  ref.par = d.baseline_par;
  const auto agg = aggregate_baseline(cfg);
  ref.peak = *std::max_element(agg.begin(), agg.end());
  for (int c = 0; c < cfg.num_clusters(); ++c) {
    const auto& cl = cfg.clusters[c];
    for (int t = 0; t < cfg.horizon; ++t) {
      ref.utility_cost += cfg.rate_of_return * cfg.wholesale_rates[t] * cl.n * cl.baseline[t];
    }
  }
  ref.consumer_bill = d.flat_price * d.total_demand;
  return ref;
}

SolutionReport metrics(const ScenarioConfig& cfg, const PriceStructure& prices,
                       const DemandResponse& response) {
  const int T = cfg.horizon;
  SolutionReport rep;
  rep.label = cfg.label;
  rep.has_solution = true;
  rep.xi = prices.xi;
  rep.blocks = prices.block_count();
  rep.prices = prices;
  rep.response = response;
  rep.reference = reference_figures(cfg);

  const double total = derive(cfg).total_demand;
  for (int t = 0; t < T; ++t) rep.peak = std::max(rep.peak, slot_load(cfg, response, t));
  rep.par = rep.peak / (total / T);

  for (int c = 0; c < cfg.num_clusters(); ++c) {
    const auto& cl = cfg.clusters[c];
    double bill = 0.0;
    for (int t = 0; t < T; ++t) {
      for (int f = 0; f < response.F; ++f) {
        const double d = cl.n * response.d(t, c, f);
        rep.utility_cost += cfg.rate_of_return * cfg.wholesale_rates[t] * d;
        rep.consumer_bill += prices.block_price(f) * d;
      }
      const double x = response.x(t, c);
      rep.consumer_total_cost += cl.n * 0.5 * cl.tau * x * x;
      bill += block_bill(cl.baseline[t], prices);
    }
    rep.cluster_bill.push_back(bill);
  }
  rep.consumer_total_cost += rep.consumer_bill;

  const auto& ref = rep.reference;
  rep.par_reduction_pct = pct_reduction(rep.par, ref.par);
  rep.utility_cost_reduction_pct = pct_reduction(rep.utility_cost, ref.utility_cost);
  rep.consumer_bill_reduction_pct = pct_reduction(rep.consumer_bill, ref.consumer_bill);
  rep.consumer_total_cost_reduction_pct = pct_reduction(rep.consumer_total_cost, ref.consumer_bill);
  return rep;
}

Certification certify(const ScenarioConfig& cfg, const PriceStructure& prices,
                      const DemandResponse& response) {
  const double flat = flat_price(cfg);
  Certification cert;
  double revenue = 0.0, cost = 0.0;
  cert.min_bill_slack = std::numeric_limits<double>::infinity();
  for (int c = 0; c < cfg.num_clusters(); ++c) {
    const auto& cl = cfg.clusters[c];
    double ladder = 0.0, reference = 0.0;
    for (int t = 0; t < cfg.horizon; ++t) {
      for (int f = 0; f < response.F; ++f) {
        const double d = cl.n * response.d(t, c, f);
        revenue += prices.block_price(f) * d;
        cost += cfg.rate_of_return * cfg.wholesale_rates[t] * d;
      }
      ladder += block_bill(cl.baseline[t], prices);
      reference += flat * cl.baseline[t];
    }
    cert.min_bill_slack = std::min(cert.min_bill_slack, reference - ladder);
  }
  cert.revenue_slack = revenue - cost;
  return cert;
}

void emit_sweep_csv(const std::vector<SolutionReport>& reports, std::ostream& out) {
  if (reports.empty()) throw std::invalid_argument("no reports to emit");
  int max_blocks = 1;
  for (const auto& r : reports) max_blocks = std::max(max_blocks, r.blocks);
  out << "xi,F";
  for (int f = 1; f < max_blocks; ++f) out << ",q_" << f;
  out << ",lambda_1,par,par_reduction_pct,utility_cost_reduction_pct,"
         "consumer_bill_reduction_pct,consumer_total_cost_reduction_pct,status,gap\n";
  for (const auto& r : reports) {
    out << format_number(r.xi) << ',' << r.blocks;
    for (int f = 0; f + 1 < max_blocks; ++f) {
      out << ',';
      if (r.has_solution && f < static_cast<int>(r.prices.breakpoints.size())) {
        out << format_number(r.prices.breakpoints[f]);
      }
    }
    if (r.has_solution) {
      out << ',' << format_number(r.prices.lambda1) << ',' << format_number(r.par) << ','
          << format_percent(r.par_reduction_pct) << ','
          << format_percent(r.utility_cost_reduction_pct) << ','
          << format_percent(r.consumer_bill_reduction_pct) << ','
          << format_percent(r.consumer_total_cost_reduction_pct);
    } else {
      out << ",,,,,,";
    }
    out << ',' << r.solver.status << ',' << format_number(r.solver.gap) << '\n';
  }
}

void emit_sweep_csv_file(const std::vector<SolutionReport>& reports, const std::string& path) {
  to_file(path, [&](std::ostream& o) { emit_sweep_csv(reports, o); });
}

void emit_profiles(const ScenarioConfig& cfg, const DemandResponse& response,
                   const std::optional<Envelopes>& env, std::ostream& out) {
  const int T = cfg.horizon, C = cfg.num_clusters();
  out << "cluster,t,baseline,response,envelope_lower,envelope_upper\n";
  auto row = [&](const std::string& who, int t, double base, double resp, double lo, double hi) {
    out << who << ',' << t + 1 << ',' << format_number(base) << ',' << format_number(resp);
    if (env) {
      out << ',' << format_number(lo) << ',' << format_number(hi) << '\n';
    } else {
      out << ",,\n";
    }
  };
  for (int c = 0; c < C; ++c) {
    const auto& cl = cfg.clusters[c];
    const std::string who = cl.name.empty() ? "c" + std::to_string(c + 1) : cl.name;
    for (int t = 0; t < T; ++t) {
      const int k = c * T + t;
      row(who, t, cl.baseline[t], response.supplied(t, c), env ? env->lower[k] : 0.0,
          env ? env->upper[k] : 0.0);
    }
  }
  const auto agg = aggregate_baseline(cfg);
  for (int t = 0; t < T; ++t) {
    row("aggregate", t, agg[t], slot_load(cfg, response, t), env ? env->aggregate_lower[t] : 0.0,
        env ? env->aggregate_upper[t] : 0.0);
  }
}

void emit_profiles_file(const ScenarioConfig& cfg, const DemandResponse& response,
                        const std::optional<Envelopes>& envelopes, const std::string& path) {
  to_file(path, [&](std::ostream& o) { emit_profiles(cfg, response, envelopes, o); });
}

void emit_summary(const ScenarioConfig& cfg, const std::vector<SolutionReport>& reports,
                  std::ostream& out, bool include_time) {
  using nlohmann::ordered_json;
  const auto ref = reference_figures(cfg);
  ordered_json j;
  j["scenario"] = cfg.label;
  j["flat_price"] = ref.flat_price;
  j["baseline_par"] = ref.par;
  j["points"] = reports.size();
  const SolutionReport* best = nullptr;
  for (const auto& r : reports) {
    if (r.has_solution && (!best || r.par < best->par)) best = &r;
  }
  if (best) {
    ordered_json b;
    b["xi"] = best->xi;
    b["blocks"] = best->blocks;
    b["lambda_1"] = best->prices.lambda1;
    b["breakpoints"] = best->prices.breakpoints;
    b["par"] = best->par;
    b["par_reduction_pct"] = best->par_reduction_pct;
    b["utility_cost_reduction_pct"] = best->utility_cost_reduction_pct;
    b["consumer_bill_reduction_pct"] = best->consumer_bill_reduction_pct;
    b["consumer_total_cost_reduction_pct"] = best->consumer_total_cost_reduction_pct;
    b["status"] = best->solver.status;
    b["gap"] = std::isfinite(best->solver.gap) ? ordered_json(best->solver.gap) : ordered_json("inf");
    b["nodes"] = best->solver.nodes;
    if (include_time) b["seconds"] = best->solver.seconds;
    j["best"] = b;
  } else {
    j["best"] = nullptr;
  }
  out << j.dump(2) << '\n';
}

}  // namespace ibp
