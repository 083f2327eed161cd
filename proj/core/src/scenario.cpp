#include "ibp/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace ibp {

using nlohmann::json;

ScenarioError::ScenarioError(std::string field_path, const std::string& message)
    : std::runtime_error(field_path.empty() ? message
                                            : field_path + ": " + message),
      field_path_(std::move(field_path)) {}

namespace {

std::string at(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

void check_series(const std::vector<double>& values, int horizon,
                  const std::string& path) {
  if (static_cast<int>(values.size()) != horizon) {
    throw ScenarioError(path, "length mismatch: expected " +
                                  std::to_string(horizon) + " entries, got " +
                                  std::to_string(values.size()));
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw ScenarioError(at(path, i), "value is not finite");
    }
    if (values[i] < 0.0) {
      throw ScenarioError(at(path, i), "negative value");
    }
  }
}

const json& require(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ScenarioError(path.empty() ? key : path + "." + key,
                        "missing required field");
  }
  return *it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ScenarioError(path, "expected a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ScenarioError(path, "expected an integer");
  return j.get<int>();
}

std::vector<double> number_array(const json& j, const std::string& path) {
  if (!j.is_array()) throw ScenarioError(path, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(number(j[i], at(path, i)));
  }
  return out;
}

std::vector<double> prefix_sums(std::span<const double> q) {
  std::vector<double> cum(q.size() + 1, 0.0);
  for (std::size_t j = 0; j < q.size(); ++j) cum[j + 1] = cum[j] + q[j];
  return cum;
}

}  // namespace

void validate(const ScenarioConfig& cfg) {
  if (cfg.horizon < 2) throw ScenarioError("horizon", "must be at least 2");
  if (!(cfg.rate_of_return >= 1.0) || !std::isfinite(cfg.rate_of_return)) {
    throw ScenarioError("rate_of_return", "must be finite and >= 1");
  }
  if (cfg.block_count < 2) throw ScenarioError("block_count", "must be at least 2");
  check_series(cfg.wholesale_rates, cfg.horizon, "wholesale_rates");
  if (cfg.clusters.empty()) throw ScenarioError("clusters", "at least one cluster required");
  for (std::size_t c = 0; c < cfg.clusters.size(); ++c) {
    const auto& cl = cfg.clusters[c];
    const std::string path = at("clusters", c);
    if (cl.n < 1) throw ScenarioError(path + ".n", "consumer count must be >= 1");
    if (!(cl.sigma >= 0.0 && cl.sigma <= 1.0)) {
      throw ScenarioError(path + ".sigma", "sigma out of range [0, 1]");
    }
    if (!(cl.tau >= 0.0) || !std::isfinite(cl.tau)) {
      throw ScenarioError(path + ".tau", "tau must be finite and >= 0");
    }
    check_series(cl.baseline, cfg.horizon, path + ".baseline");
    if (std::none_of(cl.baseline.begin(), cl.baseline.end(),
                     [](double d) { return d > 0.0; })) {
      throw ScenarioError(path + ".baseline", "at least one slot must have positive demand");
    }
  }
  if (cfg.breakpoint_bounds) {
    const auto& b = *cfg.breakpoint_bounds;
    if (!(b.lower >= 0.0) || !std::isfinite(b.upper) || !(b.lower <= b.upper)) {
      throw ScenarioError("breakpoint_bounds", "require 0 <= lower <= upper");
    }
  }
}

ScenarioConfig load_scenario(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ScenarioError("", std::string("malformed document: ") + e.what());
  }
  if (!doc.is_object()) throw ScenarioError("", "document must be an object");

  ScenarioConfig cfg;
  cfg.horizon = integer(require(doc, "horizon", ""), "horizon");
  cfg.rate_of_return = number(require(doc, "rate_of_return", ""), "rate_of_return");
  cfg.block_count = integer(require(doc, "block_count", ""), "block_count");
  cfg.wholesale_rates = number_array(require(doc, "wholesale_rates", ""), "wholesale_rates");
  if (auto it = doc.find("label"); it != doc.end()) {
    if (!it->is_string()) throw ScenarioError("label", "expected a string");
    cfg.label = it->get<std::string>();
  }
  if (auto it = doc.find("breakpoint_bounds"); it != doc.end() && !it->is_null()) {
    if (!it->is_object()) throw ScenarioError("breakpoint_bounds", "expected an object");
    BreakpointBounds b;
    b.lower = number(require(*it, "lower", "breakpoint_bounds"), "breakpoint_bounds.lower");
    b.upper = number(require(*it, "upper", "breakpoint_bounds"), "breakpoint_bounds.upper");
    cfg.breakpoint_bounds = b;
  }
  const json& clusters = require(doc, "clusters", "");
  if (!clusters.is_array()) throw ScenarioError("clusters", "expected an array");
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    const std::string path = at("clusters", c);
    const json& jc = clusters[c];
    if (!jc.is_object()) throw ScenarioError(path, "expected an object");
    ClusterProfile cl;
    cl.n = integer(require(jc, "n", path), path + ".n");
    cl.sigma = number(require(jc, "sigma", path), path + ".sigma");
    cl.tau = number(require(jc, "tau", path), path + ".tau");
    cl.baseline = number_array(require(jc, "baseline", path), path + ".baseline");
    if (auto it = jc.find("name"); it != jc.end() && it->is_string()) {
      cl.name = it->get<std::string>();
    }
    cfg.clusters.push_back(std::move(cl));
  }
  validate(cfg);
  return cfg;
}

ScenarioConfig load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("", "cannot open scenario file '" + path + "'");
  return load_scenario(in);
}

void save_scenario(const ScenarioConfig& cfg, std::ostream& out) {
  json doc;
  doc["label"] = cfg.label;
  doc["horizon"] = cfg.horizon;
  doc["rate_of_return"] = cfg.rate_of_return;
  doc["block_count"] = cfg.block_count;
  doc["wholesale_rates"] = cfg.wholesale_rates;
  if (cfg.breakpoint_bounds) {
    doc["breakpoint_bounds"] = {{"lower", cfg.breakpoint_bounds->lower},
                                {"upper", cfg.breakpoint_bounds->upper}};
  }
  json clusters = json::array();
  for (const auto& cl : cfg.clusters) {
    json jc;
    if (!cl.name.empty()) jc["name"] = cl.name;
    jc["n"] = cl.n;
    jc["sigma"] = cl.sigma;
    jc["tau"] = cl.tau;
    jc["baseline"] = cl.baseline;
    clusters.push_back(std::move(jc));
  }
  doc["clusters"] = std::move(clusters);
  out << doc.dump(2) << '\n';
}

double flat_price(const ScenarioConfig& cfg) {
  double cost = 0.0;
  double energy = 0.0;
  for (const auto& cl : cfg.clusters) {
    for (int t = 0; t < cfg.horizon; ++t) {
      cost += cfg.wholesale_rates[t] * cl.n * cl.baseline[t];
      energy += cl.n * cl.baseline[t];
    }
  }
  if (!(energy > 0.0)) throw ScenarioError("clusters", "zero total demand");
  return cfg.rate_of_return * cost / energy;
}

std::vector<double> baseline_block_split(double demand,
                                         std::span<const double> breakpoints) {
  const std::size_t blocks = breakpoints.size() + 1;
  const auto cum = prefix_sums(breakpoints);
  std::vector<double> split(blocks, 0.0);
  for (std::size_t f = 0; f + 1 < blocks; ++f) {
    split[f] = std::min(std::max(demand - cum[f], 0.0), breakpoints[f]);
  }
  split[blocks - 1] = std::max(demand - cum[blocks - 1], 0.0);
  return split;
}

double block_excess(double demand, std::span<const double> breakpoints) {
  const auto split = baseline_block_split(demand, breakpoints);
  double g = 0.0;
  for (std::size_t f = 1; f < split.size(); ++f) g += static_cast<double>(f) * split[f];
  return g;
}

BreakpointBounds default_breakpoint_bounds(const ScenarioConfig& cfg) {
  if (cfg.breakpoint_bounds) return *cfg.breakpoint_bounds;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& cl : cfg.clusters) {
    for (double d : cl.baseline) {
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
  }
  return {lo, hi};
}

std::vector<double> aggregate_baseline(const ScenarioConfig& cfg) {
  std::vector<double> agg(cfg.horizon, 0.0);
  for (const auto& cl : cfg.clusters) {
    for (int t = 0; t < cfg.horizon; ++t) agg[t] += cl.n * cl.baseline[t];
  }
  return agg;
}

ScenarioDerived derive(const ScenarioConfig& cfg) {
  ScenarioDerived out;
  out.flat_price = flat_price(cfg);
  const auto agg = aggregate_baseline(cfg);
  double total = 0.0;
  for (const auto& cl : cfg.clusters) {
    for (int t = 0; t < cfg.horizon; ++t) total += cl.n * cl.baseline[t];
  }
  out.total_demand = total;
  const double peak = *std::max_element(agg.begin(), agg.end());
  out.baseline_par = peak / (total / cfg.horizon);
  out.default_bounds = default_breakpoint_bounds(cfg);
  return out;
}

}  // namespace ibp
