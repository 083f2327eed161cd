#include "ibp/bb_solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <memory>
#include <stdexcept>
#include <set>
#include <tuple>

#include "ibp/response.hpp"

namespace ibp {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::FeasibleGap: return "feasible-gap";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::LimitReached: return "limit-reached";
  }
  return "unknown";
}

void SolveOptions::check() const {
  if (!(gap_tol >= 0.0)) throw std::invalid_argument("gap_tol must be >= 0");
  if (!(time_limit > 0.0)) throw std::invalid_argument("time_limit must be positive");
  if (node_limit <= 0) throw std::invalid_argument("node_limit must be positive");
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFeasTol = 1e-6;
constexpr double kViolation = 1e-9;

double equal_tol(double v) { return 1e-9 * std::max(1.0, std::abs(v)); }

// LP relaxation with per-pair fixings and partner propagation.
class Relaxation {
 public:
  explicit Relaxation(const MilpModel& model) : model_(model), lp_(relaxation_data(model)) {
    const int n = model.num_columns();
    lower_.resize(n);
    upper_.resize(n);
    for (int j = 0; j < n; ++j) {
      lower_[j] = model.variables[j].lower;
      upper_[j] = model.variables[j].upper;
    }
  }

  const MilpModel& model() const { return model_; }
  LpSolver& lp() { return lp_; }

  // Installs the bounds implied by `fix` (-1 free, 0 or 1 per pair).
  // Returns false when the bounds alone are contradictory.
  bool apply(const std::vector<signed char>& fix) {
    std::vector<double> lo = lower_, up = upper_;
    for (std::size_t k = 0; k < fix.size(); ++k) {
      if (fix[k] < 0) continue;
      const auto& p = model_.pairs[k];
      lo[p.binary] = up[p.binary] = fix[k];
      if (fix[k] == 1) {
        up[p.dual] = 0.0;
      } else if (p.primal_cols.size() == 1) {
        // a * x + k <= 0
        const double a = p.primal_coefs[0];
        const double lim = -p.primal_constant / a;
        const int j = p.primal_cols[0];
        if (a > 0) {
          up[j] = std::min(up[j], lim);
        } else {
          lo[j] = std::max(lo[j], lim);
        }
      }
    }
    for (std::size_t j = 0; j < lo.size(); ++j) {
      if (lo[j] > up[j] + 1e-12) return false;
      if (lo[j] > up[j]) lo[j] = up[j];
      lp_.set_col_bounds(static_cast<int>(j), lo[j], up[j]);
    }
    return true;
  }

 private:
  const MilpModel& model_;
  LpSolver lp_;
  std::vector<double> lower_, upper_;
};

struct PairState {
  double primal = 0.0;  // normalized
  double dual = 0.0;
};

PairState pair_state(const ComplementarityPair& p, const std::vector<double>& x) {
  return {std::max(p.primal_value(x), 0.0) / p.primal_m, std::max(x[p.dual], 0.0) / p.dual_m};
}

struct Node {
  std::vector<signed char> fix;
  LpBasis basis;
  double bound = -kInf;
  int depth = 0;
  long id = 0;
};

struct NodeOrder {
  bool plunge = false;
  bool operator()(const Node* a, const Node* b) const {
    // Returns true when `a` ranks below `b`.
    if (plunge) {
      if (a->depth != b->depth) return a->depth < b->depth;
      return a->id > b->id;
    }
    if (a->bound != b->bound) return a->bound > b->bound;
    if (a->depth != b->depth) return a->depth < b->depth;
    return a->id > b->id;
  }
};

class BranchAndBound {
 public:
  BranchAndBound(const MilpModel& model, const SolveOptions& opts)
      : model_(model), opts_(opts), relax_(model), cfg_(model.scenario) {
    qbounds_ = default_breakpoint_bounds(cfg_);
    // Branching scans pairs in (t, c, f) order so that ties go to the first.
    order_.resize(model.pairs.size());
    for (std::size_t k = 0; k < order_.size(); ++k) order_[k] = k;
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      const auto& p = model.pairs[a];
      const auto& q = model.pairs[b];
      return std::tie(p.t, p.c, p.f) < std::tie(q.t, q.c, q.f);
    });
  }

  SolveOutcome run(const std::vector<double>* warm);

 private:
  bool limits_hit() const {
    if (out_.node_count >= opts_.node_limit) return true;
    if (!opts_.deterministic && elapsed() > opts_.time_limit) return true;
    return false;
  }
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }
  bool offer(std::vector<double> x, const char* source);
  double try_breakpoints(std::vector<double> q, bool submit);
  void root_heuristic();
  LpStatus solve_node_lp(const Node& node, LpResult& res, bool warm);
  void log_line(const char* tag, double bound);
  void polish();
  void center_lambda1();

  const MilpModel& model_;
  SolveOptions opts_;
  Relaxation relax_;
  const ScenarioConfig& cfg_;
  BreakpointBounds qbounds_;
  std::vector<std::size_t> order_;
  SolveOutcome out_;
  double incumbent_ = kInf;
  std::set<std::vector<long long>> tried_;
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

bool BranchAndBound::offer(std::vector<double> x, const char* source) {
  for (const auto& p : model_.pairs) x[p.binary] = std::round(x[p.binary]);
  if (!(max_violation(model_, x) <= kFeasTol)) return false;
  const double v = x[model_.peak_col];
  if (!(v < incumbent_ - equal_tol(incumbent_ == kInf ? v : incumbent_))) return false;
  incumbent_ = v;
  out_.assignment = std::move(x);
  out_.value = v;
  out_.incumbent_source = source;
  log_line(source, out_.bound);
  return true;
}

// Evaluates the lower level at breakpoints `q` and returns the resulting
// peak, or +inf when no lambda1 satisfies the coupling rows.
double BranchAndBound::try_breakpoints(std::vector<double> q, bool submit) {
  for (double& v : q) v = std::clamp(v, qbounds_.lower, qbounds_.upper);
  std::vector<long long> key;
  for (double v : q) key.push_back(std::llround(v * 1e10));
  if (submit && !tried_.insert(key).second) return kInf;

  PriceStructure prices{0.0, model_.xi, q};
  auto lower = solve_response(cfg_, prices);
  const auto iv = lambda1_interval(cfg_, model_.xi, q, lower.response);
  if (iv.empty()) return kInf;
  double peak = 0.0;
  for (int t = 0; t < model_.T; ++t) {
    double load = 0.0;
    for (int c = 0; c < model_.C; ++c) load += cfg_.clusters[c].n * lower.response.supplied(t, c);
    peak = std::max(peak, load);
  }
  if (submit && peak < incumbent_ - equal_tol(incumbent_)) {
    prices.lambda1 = iv.midpoint();
    lower = solve_response(cfg_, prices);
    offer(make_assignment(model_, cfg_, prices, lower), "heuristic");
  }
  return peak;
}

void BranchAndBound::root_heuristic() {
  const int dim = model_.F - 1;
  const double lo = qbounds_.lower, hi = qbounds_.upper;
  if (dim == 0 || !(hi > lo)) {
    try_breakpoints(std::vector<double>(dim, hi), true);
    return;
  }
  std::vector<double> best(dim, hi);
  double best_peak = try_breakpoints(best, true);
  auto consider = [&](const std::vector<double>& q) {
    const double v = try_breakpoints(q, true);
    if (v < best_peak) {
      best_peak = v;
      best = q;
    }
  };
  if (dim == 1) {
    const int n = 200;
    for (int k = 0; k <= n; ++k) consider({lo + (hi - lo) * k / n});
  } else if (dim == 2) {
    const int n = 40;
    for (int a = 0; a <= n; ++a) {
      for (int b = 0; b <= n; ++b) consider({lo + (hi - lo) * a / n, lo + (hi - lo) * b / n});
    }
  } else {
    const int n = 20;
    for (int k = 0; k <= n; ++k) consider(std::vector<double>(dim, lo + (hi - lo) * k / n));
  }
  // Pattern search around the best grid point.
  double step = (hi - lo) / (dim == 1 ? 200 : dim == 2 ? 40 : 20);
  while (step > 1e-7 * (hi - lo)) {
    bool moved = false;
    for (int i = 0; i < dim; ++i) {
      for (double s : {-step, step}) {
        auto q = best;
        q[i] = std::clamp(q[i] + s, lo, hi);
        const double before = best_peak;
        consider(q);
        moved = moved || best_peak < before;
      }
    }
    if (!moved) step *= 0.5;
  }
}

LpStatus BranchAndBound::solve_node_lp(const Node& node, LpResult& res, bool warm) {
  auto& lp = relax_.lp();
  if (!relax_.apply(node.fix)) return LpStatus::Infeasible;
  if (warm && !node.basis.empty()) lp.set_basis(node.basis);
  LpStatus st = lp.solve();
  ++out_.lp_count;
  if (st == LpStatus::NumericalFailure || st == LpStatus::IterationLimit) {
    lp.reset_basis();
    st = lp.solve();
    ++out_.lp_count;
  }
  out_.lp_iterations = lp.total_iterations();
  res.status = st;
  if (st == LpStatus::Optimal) {
    res.value = lp.objective();
    res.point = lp.column_values();
  }
  return st;
}

void BranchAndBound::log_line(const char* tag, double bound) {
  if (!opts_.log) return;
  char buf[160];
  const double gap = incumbent_ < kInf ? (incumbent_ - bound) / std::max(std::abs(incumbent_), 1e-12)
                                       : kInf;
  std::snprintf(buf, sizeof buf, "%-9s nodes %7ld  lps %7ld  bound %.10g  incumbent %.10g  gap %.3e\n",
                tag, out_.node_count, out_.lp_count, bound, incumbent_, gap);
  *opts_.log << buf;
}

// Re-solves the dual side with every binary and primal quantity fixed,
// preferring multipliers far from their big-M limits.
void BranchAndBound::polish() {
  if (!out_.has_incumbent()) return;
  if (validate_big_m(model_, out_.assignment).clean()) return;
  const auto& x = out_.assignment;
  auto data = relaxation_data(model_);
  std::vector<int> fixed = {model_.lambda1_col, model_.peak_col};
  for (int f = 0; f + 1 < model_.F; ++f) fixed.push_back(model_.q(f));
  for (int c = 0; c < model_.C; ++c) {
    for (int t = 0; t < model_.T; ++t) {
      fixed.push_back(model_.dsh(t, c));
      fixed.push_back(model_.z(t, c));
      for (int f = 0; f < model_.F; ++f) fixed.push_back(model_.ds(t, c, f));
    }
  }
  for (const auto& p : model_.pairs) fixed.push_back(p.binary);
  for (int j : fixed) data.col_lower[j] = data.col_upper[j] = x[j];
  std::fill(data.cost.begin(), data.cost.end(), 0.0);
  for (const auto& p : model_.pairs) data.cost[p.dual] = 1.0 / p.dual_m;
  LpSolver lp(data);
  if (lp.solve() != LpStatus::Optimal) return;
  auto y = lp.column_values();
  for (int j : fixed) y[j] = x[j];
  if (max_violation(model_, y) <= kFeasTol &&
      validate_big_m(model_, y).max_ratio < validate_big_m(model_, x).max_ratio) {
    out_.assignment = std::move(y);
  }
}

// Sets the epigraph auxiliaries to their exact values and moves lambda1 to
// the middle of its feasible interval. Both multipliers that carry lambda1
// shift by -n * delta, which keeps every stationarity row intact.
void BranchAndBound::center_lambda1() {
  auto x = out_.assignment;
  std::vector<double> q;
  for (int f = 0; f + 1 < model_.F; ++f) q.push_back(x[model_.q(f)]);
  for (int c = 0; c < model_.C; ++c) {
    for (int t = 0; t < model_.T; ++t) {
      x[model_.z(t, c)] = block_excess(cfg_.clusters[c].baseline[t], q);
    }
  }
  DemandResponse r(model_.T, model_.C, model_.F);
  for (int c = 0; c < model_.C; ++c) {
    for (int t = 0; t < model_.T; ++t) {
      for (int f = 0; f < model_.F; ++f) r.d(t, c, f) = x[model_.ds(t, c, f)];
    }
  }
  const auto iv = lambda1_interval(cfg_, model_.xi, q, r);
  if (!iv.empty()) {
    const double delta = iv.midpoint() - x[model_.lambda1_col];
    x[model_.lambda1_col] += delta;
    for (int c = 0; c < model_.C; ++c) {
      const double n = cfg_.clusters[c].n;
      for (int t = 0; t < model_.T; ++t) x[model_.rho(t, c)] -= n * delta;
      x[model_.eta(c)] -= n * delta;
    }
  }
  if (max_violation(model_, x) <= kFeasTol) out_.assignment = std::move(x);
}

SolveOutcome BranchAndBound::run(const std::vector<double>* warm) {
  opts_.check();
  out_.bound = -kInf;
  if (warm && !offer(*warm, "warm-start")) {
    // A rejected warm start is not an error; the flat tariff is tried next.
  }
  offer(flat_price_assignment(model_, cfg_), "warm-start");
  root_heuristic();

  const std::size_t P = model_.pairs.size();
  std::vector<std::unique_ptr<Node>> storage;
  NodeOrder order;
  auto cmp = [&order](const Node* a, const Node* b) { return order(a, b); };
  std::vector<Node*> open;
  long next_id = 0;
  double pruned_bound = kInf;  // smallest bound among nodes cut by the gap tolerance
  double unresolved = kInf;    // nodes dropped after numerical failure

  auto root = std::make_unique<Node>();
  root->fix.assign(P, -1);
  root->id = next_id++;
  open.push_back(root.get());
  storage.push_back(std::move(root));
  order.plunge = incumbent_ == kInf;

  auto cutoff = [&]() {
    if (incumbent_ == kInf) return kInf;
    return incumbent_ - std::max(equal_tol(incumbent_), opts_.gap_tol * std::abs(incumbent_));
  };
  auto record_prune = [&](double bound) {
    if (bound < incumbent_ - equal_tol(incumbent_)) pruned_bound = std::min(pruned_bound, bound);
  };
  auto open_bound = [&]() {
    if (open.empty()) return kInf;
    if (!order.plunge) return open.front()->bound;
    double b = kInf;
    for (const Node* n : open) b = std::min(b, n->bound);
    return b;
  };
  auto update_bound = [&]() {
    const double b = std::min({open_bound(), pruned_bound, unresolved, incumbent_});
    if (b > out_.bound) out_.bound = b;
  };

  LpResult res;
  order.plunge = incumbent_ == kInf;
  while (!open.empty()) {
    if (order.plunge != (incumbent_ == kInf)) {
      order.plunge = incumbent_ == kInf;
      std::make_heap(open.begin(), open.end(), cmp);
    }
    update_bound();
    if (limits_hit()) break;
    std::pop_heap(open.begin(), open.end(), cmp);
    Node* node = open.back();
    open.pop_back();

    if (node->bound >= cutoff()) {
      record_prune(node->bound);
      continue;
    }
    ++out_.node_count;
    const LpStatus st = solve_node_lp(*node, res, true);
    if (st == LpStatus::Infeasible) continue;
    if (st != LpStatus::Optimal) {
      unresolved = std::min(unresolved, node->bound);
      continue;
    }
    const double value = std::max(res.value, node->bound);
    if (out_.node_count == 1) {
      out_.bound = std::max(out_.bound, std::min(value, incumbent_));
      log_line("root", value);
    }
    if (value >= cutoff()) {
      record_prune(value);
      continue;
    }
    const LpBasis basis = relax_.lp().basis();

    // Primal heuristic from the node's breakpoints.
    {
      std::vector<double> q;
      for (int f = 0; f + 1 < model_.F; ++f) q.push_back(res.point[model_.q(f)]);
      try_breakpoints(q, true);
    }

    // Branching candidate.
    int branch = -1;
    double best_score = 0.0;
    PairState best_state;
    std::vector<PairState> states(P);
    for (const std::size_t k : order_) {
      if (node->fix[k] >= 0) continue;
      states[k] = pair_state(model_.pairs[k], res.point);
      const double viol = std::min(states[k].primal, states[k].dual);
      if (viol <= kViolation) continue;
      const double score = opts_.branching == Branching::MostViolated
                               ? states[k].primal * states[k].dual
                               : (branch < 0 ? 1.0 : 0.0);
      if (score > best_score) {
        best_score = score;
        branch = static_cast<int>(k);
        best_state = states[k];
      }
    }

    if (branch < 0) {
      // Complementarity holds: complete the pattern and solve it exactly.
      Node leaf;
      leaf.fix = node->fix;
      for (std::size_t k = 0; k < P; ++k) {
        if (leaf.fix[k] < 0) leaf.fix[k] = states[k].primal > states[k].dual ? 1 : 0;
      }
      leaf.basis = basis;
      LpResult exact;
      if (solve_node_lp(leaf, exact, true) == LpStatus::Optimal) {
        offer(exact.point, "node");
        if (exact.value <= value + equal_tol(value)) continue;
      }
      // Rounding lost value; branch on the largest remaining product.
      double best_min = 0.0;
      for (std::size_t k = 0; k < P; ++k) {
        if (node->fix[k] >= 0) continue;
        const double v = std::min(states[k].primal, states[k].dual);
        if (v > best_min) {
          best_min = v;
          branch = static_cast<int>(k);
          best_state = states[k];
        }
      }
      if (branch < 0) continue;
    }

    // Children: the side with the smaller normalized value is zeroed first.
    const signed char first = best_state.primal < best_state.dual ? 0 : 1;
    for (signed char v : {first, static_cast<signed char>(1 - first)}) {
      auto child = std::make_unique<Node>();
      child->fix = node->fix;
      child->fix[branch] = v;
      child->basis = basis;
      child->bound = value;
      child->depth = node->depth + 1;
      child->id = next_id++;
      open.push_back(child.get());
      std::push_heap(open.begin(), open.end(), cmp);
      storage.push_back(std::move(child));
    }
    if (opts_.log && out_.node_count % opts_.log_every == 0) log_line("progress", out_.bound);
    // Free processed nodes' fixings and bases.
    node->fix.clear();
    node->fix.shrink_to_fit();
    node->basis.status.clear();
    node->basis.status.shrink_to_fit();
  }

  const bool exhausted = open.empty();
  double final_bound = std::min({open_bound(), pruned_bound, unresolved, incumbent_});
  if (exhausted && pruned_bound == kInf && unresolved == kInf) final_bound = incumbent_;
  out_.bound = std::max(out_.bound, std::min(final_bound, incumbent_));
  if (incumbent_ == kInf) {
    out_.status = exhausted && unresolved == kInf ? SolveStatus::Infeasible : SolveStatus::LimitReached;
    out_.gap = kInf;
  } else {
    out_.bound = std::min(out_.bound, incumbent_);
    out_.gap = (incumbent_ - out_.bound) / std::max(std::abs(incumbent_), 1e-12);
    if (out_.gap < 0.0) out_.gap = 0.0;
    out_.status = out_.gap <= opts_.gap_tol ? SolveStatus::Optimal : SolveStatus::FeasibleGap;
    center_lambda1();
    polish();
  }
  out_.seconds = elapsed();
  log_line("done", out_.bound);
  return out_;
}

}  // namespace

LpData relaxation_data(const MilpModel& model) {
  const int n = model.num_columns();
  const int m = model.num_rows();
  LpData d;
  d.num_rows = m;
  d.num_cols = n;
  std::vector<int> count(n, 0);
  for (const auto& r : model.rows) {
    for (int j : r.cols) ++count[j];
  }
  d.col_start.assign(n + 1, 0);
  for (int j = 0; j < n; ++j) d.col_start[j + 1] = d.col_start[j] + count[j];
  d.row_index.resize(d.col_start[n]);
  d.value.resize(d.col_start[n]);
  std::vector<int> fill(d.col_start.begin(), d.col_start.end() - 1);
  for (int i = 0; i < m; ++i) {
    const auto& r = model.rows[i];
    for (std::size_t k = 0; k < r.cols.size(); ++k) {
      d.row_index[fill[r.cols[k]]] = i;
      d.value[fill[r.cols[k]]++] = r.coefs[k];
    }
    switch (r.sense) {
      case Sense::Le:
        d.row_lower.push_back(-kInf);
        d.row_upper.push_back(r.rhs);
        break;
      case Sense::Ge:
        d.row_lower.push_back(r.rhs);
        d.row_upper.push_back(kInf);
        break;
      case Sense::Eq:
        d.row_lower.push_back(r.rhs);
        d.row_upper.push_back(r.rhs);
        break;
    }
  }
  d.cost = model.objective;
  for (const auto& v : model.variables) {
    d.col_lower.push_back(v.binary ? 0.0 : v.lower);
    d.col_upper.push_back(v.binary ? 1.0 : v.upper);
  }
  return d;
}

LpResult solve_lp_relaxation(const MilpModel& model, const Fixings& fixings) {
  std::vector<int> pair_of(model.num_columns(), -1);
  for (std::size_t k = 0; k < model.pairs.size(); ++k) {
    pair_of[model.pairs[k].binary] = static_cast<int>(k);
  }
  std::vector<signed char> fix(model.pairs.size(), -1);
  for (const auto& [col, v] : fixings) {
    if (col < 0 || col >= model.num_columns() || pair_of[col] < 0) {
      throw ModelError("fixing refers to a non-binary column");
    }
    if (v != 0 && v != 1) throw ModelError("binary fixings must be 0 or 1");
    fix[pair_of[col]] = static_cast<signed char>(v);
  }
  Relaxation relax(model);
  LpResult res;
  if (!relax.apply(fix)) return res;
  res.status = relax.lp().solve();
  if (res.status == LpStatus::Optimal) {
    res.value = relax.lp().objective();
    res.point = relax.lp().column_values();
  }
  return res;
}

SolveOutcome solve(const MilpModel& model, const SolveOptions& opts,
                   const std::vector<double>* warm) {
  BranchAndBound bb(model, opts);
  return bb.run(warm);
}

SolveOutcome enumerate_patterns(const MilpModel& model, int cap) {
  const int P = static_cast<int>(model.pairs.size());
  if (P > cap) {
    throw ModelError("model has " + std::to_string(P) + " binaries, above the enumeration cap of " +
                     std::to_string(cap));
  }
  const auto start = std::chrono::steady_clock::now();
  Relaxation relax(model);
  SolveOutcome out;
  double best = kInf;
  std::vector<signed char> fix(P, -1);
  std::vector<LpBasis> bases(P + 1);

  // Depth-first: level k fixes pair k. A node is discarded only when its LP
  // is infeasible, so every feasible pattern reaches a leaf.
  auto visit = [&](auto&& self, int k) -> void {
    if (!relax.apply(fix)) return;
    if (!bases[k].empty()) relax.lp().set_basis(bases[k]);
    const LpStatus st = relax.lp().solve();
    ++out.lp_count;
    ++out.node_count;
    if (st == LpStatus::Infeasible) return;
    if (st != LpStatus::Optimal) throw ModelError(std::string("LP failure: ") + to_string(st));
    if (k == P) {
      const double v = relax.lp().objective();
      auto x = relax.lp().column_values();
      for (int i = 0; i < P; ++i) x[model.pairs[i].binary] = fix[i];
      if (v < best && max_violation(model, x) <= kFeasTol) {
        best = v;
        out.assignment = std::move(x);
      }
      return;
    }
    bases[k + 1] = relax.lp().basis();
    for (signed char v : {0, 1}) {
      fix[k] = v;
      self(self, k + 1);
    }
    fix[k] = -1;
  };
  visit(visit, 0);

  if (out.has_incumbent()) {
    out.status = SolveStatus::Optimal;
    out.value = out.bound = best;
    out.gap = 0.0;
    out.incumbent_source = "enumeration";
  } else {
    out.status = SolveStatus::Infeasible;
    out.gap = kInf;
  }
  out.lp_iterations = relax.lp().total_iterations();
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

void write_solve_summary(const SolveOutcome& o, std::ostream& out, bool include_time) {
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::string(buf);
  };
  out << "status: " << to_string(o.status) << "\n";
  out << "value: " << (o.has_incumbent() ? num(o.value) : std::string("none")) << "\n";
  out << "bound: " << num(o.bound) << "\n";
  out << "gap: " << num(o.gap) << "\n";
  out << "nodes: " << o.node_count << "\n";
  out << "lps: " << o.lp_count << "\n";
  out << "simplex_iterations: " << o.lp_iterations << "\n";
  out << "incumbent_source: " << (o.incumbent_source.empty() ? "none" : o.incumbent_source) << "\n";
  if (include_time) out << "seconds: " << num(o.seconds) << "\n";
}

}  // namespace ibp
