#include "ibp/simplex.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ibp {

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::IterationLimit: return "iteration-limit";
    case LpStatus::NumericalFailure: return "numerical-failure";
  }
  return "unknown";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPrimalTol = 1e-9;
constexpr double kDualTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr double kDropTol = 1e-14;
constexpr int kRefactorInterval = 80;

double pow2_round(double v) { return std::exp2(std::round(std::log2(v))); }

struct Eta {
  int pos;
  double pivot;
  std::vector<int> idx;
  std::vector<double> val;
};

}  // namespace

struct LpSolver::Impl {
  using SpMat = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;

  int m = 0;
  int n = 0;
  int N = 0;

  // Scaled matrix, column and row wise.
  std::vector<int> cstart, cidx;
  std::vector<double> cval;
  std::vector<int> rstart, ridx;
  std::vector<double> rval;
  std::vector<double> row_scale, col_scale;

  std::vector<double> cost;  // scaled, size N
  std::vector<double> work_cost;
  std::vector<double> lo, up;  // scaled, size N

  std::vector<std::uint8_t> status;
  std::vector<int> head;  // basic variable per position
  std::vector<int> pos;   // position per variable or -1
  std::vector<double> x, d, y;
  std::vector<double> dse;

  mutable Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> lu;
  bool factored = false;
  std::vector<Eta> etas;

  int iteration_limit = 1000000;
  int stall_limit = 400;
  int last_iterations = 0;
  long all_iterations = 0;
  std::uint64_t perturb_state = 0x9e3779b97f4a7c15ULL;

  // Scratch.
  Eigen::VectorXd work;
  std::vector<double> alpha_row;
  std::vector<int> alpha_touched;
  std::vector<char> alpha_mark;

  explicit Impl(const LpData& data);

  bool is_fixed(int j) const { return lo[j] == up[j]; }

  void column(int j, Eigen::VectorXd& v) const {
    v.setZero(m);
    if (j < n) {
      for (int k = cstart[j]; k < cstart[j + 1]; ++k) v[cidx[k]] = cval[k];
    } else {
      v[j - n] = -1.0;
    }
  }

  bool factorize();
  void ftran(Eigen::VectorXd& v) const;
  void btran(Eigen::VectorXd& v) const;
  void compute_primal();
  void compute_duals(const std::vector<double>& c);
  void compute_pivot_row(const Eigen::VectorXd& rho);
  void slack_basis();
  void place_nonbasic(int j);
  double next_uniform() {
    perturb_state ^= perturb_state << 13;
    perturb_state ^= perturb_state >> 7;
    perturb_state ^= perturb_state << 17;
    return static_cast<double>(perturb_state >> 11) * 0x1.0p-53;
  }

  LpStatus dual_phase(int& iters);
  LpStatus primal_phase(int& iters);
  LpStatus solve();
};

LpSolver::Impl::Impl(const LpData& data) : m(data.num_rows), n(data.num_cols), N(m + n) {
  if (static_cast<int>(data.col_start.size()) != n + 1) throw std::invalid_argument("bad LP data");
  // Geometric scaling rounded to powers of two.
  row_scale.assign(m, 1.0);
  col_scale.assign(n, 1.0);
  for (int pass = 0; pass < 6; ++pass) {
    std::vector<double> rmin(m, kInf), rmax(m, 0.0);
    for (int j = 0; j < n; ++j) {
      for (int k = data.col_start[j]; k < data.col_start[j + 1]; ++k) {
        const double a = std::abs(data.value[k]) * col_scale[j];
        if (a == 0.0) continue;
        rmin[data.row_index[k]] = std::min(rmin[data.row_index[k]], a);
        rmax[data.row_index[k]] = std::max(rmax[data.row_index[k]], a);
      }
    }
    for (int i = 0; i < m; ++i) {
      row_scale[i] = rmax[i] > 0.0 ? pow2_round(1.0 / std::sqrt(rmin[i] * rmax[i])) : 1.0;
    }
    for (int j = 0; j < n; ++j) {
      double cmin = kInf, cmax = 0.0;
      for (int k = data.col_start[j]; k < data.col_start[j + 1]; ++k) {
        const double a = std::abs(data.value[k]) * row_scale[data.row_index[k]];
        if (a == 0.0) continue;
        cmin = std::min(cmin, a);
        cmax = std::max(cmax, a);
      }
      col_scale[j] = cmax > 0.0 ? pow2_round(1.0 / std::sqrt(cmin * cmax)) : 1.0;
    }
  }

  cstart = data.col_start;
  cidx.reserve(data.row_index.size());
  cval.reserve(data.value.size());
  std::vector<int> count(m, 0);
  for (int j = 0; j < n; ++j) {
    const int begin = static_cast<int>(cidx.size());
    for (int k = data.col_start[j]; k < data.col_start[j + 1]; ++k) {
      if (data.value[k] == 0.0) continue;
      cidx.push_back(data.row_index[k]);
      cval.push_back(data.value[k] * row_scale[data.row_index[k]] * col_scale[j]);
      ++count[data.row_index[k]];
    }
    cstart[j] = begin;
  }
  cstart[n] = static_cast<int>(cidx.size());
  rstart.assign(m + 1, 0);
  for (int i = 0; i < m; ++i) rstart[i + 1] = rstart[i] + count[i];
  ridx.resize(cidx.size());
  rval.resize(cidx.size());
  std::vector<int> fill(rstart.begin(), rstart.end() - 1);
  for (int j = 0; j < n; ++j) {
    for (int k = cstart[j]; k < cstart[j + 1]; ++k) {
      ridx[fill[cidx[k]]] = j;
      rval[fill[cidx[k]]++] = cval[k];
    }
  }

  cost.assign(N, 0.0);
  lo.assign(N, 0.0);
  up.assign(N, 0.0);
  for (int j = 0; j < n; ++j) {
    cost[j] = data.cost[j] * col_scale[j];
    lo[j] = data.col_lower[j] / col_scale[j];
    up[j] = data.col_upper[j] / col_scale[j];
    if (std::isinf(lo[j]) && std::isinf(up[j])) {
      throw std::invalid_argument("free columns are not supported");
    }
  }
  for (int i = 0; i < m; ++i) {
    lo[n + i] = data.row_lower[i] * row_scale[i];
    up[n + i] = data.row_upper[i] * row_scale[i];
  }
  work.resize(m);
  alpha_row.assign(N, 0.0);
  alpha_mark.assign(N, 0);
  slack_basis();
}

void LpSolver::Impl::place_nonbasic(int j) {
  if (status[j] == LpBasis::kLower && std::isinf(lo[j])) status[j] = LpBasis::kUpper;
  if (status[j] == LpBasis::kUpper && std::isinf(up[j])) status[j] = LpBasis::kLower;
  x[j] = status[j] == LpBasis::kLower ? lo[j] : up[j];
}

void LpSolver::Impl::slack_basis() {
  status.assign(N, LpBasis::kLower);
  head.resize(m);
  pos.assign(N, -1);
  x.assign(N, 0.0);
  d.assign(N, 0.0);
  for (int j = 0; j < n; ++j) {
    status[j] = cost[j] >= 0.0 ? LpBasis::kLower : LpBasis::kUpper;
    place_nonbasic(j);
  }
  for (int i = 0; i < m; ++i) {
    status[n + i] = LpBasis::kBasic;
    head[i] = n + i;
    pos[n + i] = i;
  }
  dse.assign(m, 1.0);
  factored = false;
  etas.clear();
}

bool LpSolver::Impl::factorize() {
  etas.clear();
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(m * 3);
  for (int r = 0; r < m; ++r) {
    const int j = head[r];
    if (j < n) {
      for (int k = cstart[j]; k < cstart[j + 1]; ++k) trip.emplace_back(cidx[k], r, cval[k]);
    } else {
      trip.emplace_back(j - n, r, -1.0);
    }
  }
  SpMat B(m, m);
  B.setFromTriplets(trip.begin(), trip.end());
  B.makeCompressed();
  lu.analyzePattern(B);
  lu.factorize(B);
  factored = lu.info() == Eigen::Success;
  return factored;
}

void LpSolver::Impl::ftran(Eigen::VectorXd& v) const {
  v = lu.solve(v);
  for (const auto& e : etas) {
    const double vr = v[e.pos] / e.pivot;
    v[e.pos] = vr;
    if (vr == 0.0) continue;
    for (std::size_t k = 0; k < e.idx.size(); ++k) v[e.idx[k]] -= e.val[k] * vr;
  }
}

void LpSolver::Impl::btran(Eigen::VectorXd& v) const {
  for (auto it = etas.rbegin(); it != etas.rend(); ++it) {
    double s = v[it->pos];
    for (std::size_t k = 0; k < it->idx.size(); ++k) s -= it->val[k] * v[it->idx[k]];
    v[it->pos] = s / it->pivot;
  }
  v = lu.transpose().solve(v);
}

void LpSolver::Impl::compute_primal() {
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
  for (int j = 0; j < N; ++j) {
    if (status[j] == LpBasis::kBasic) continue;
    place_nonbasic(j);
    if (x[j] == 0.0) continue;
    if (j < n) {
      for (int k = cstart[j]; k < cstart[j + 1]; ++k) rhs[cidx[k]] -= cval[k] * x[j];
    } else {
      rhs[j - n] += x[j];
    }
  }
  ftran(rhs);
  for (int r = 0; r < m; ++r) x[head[r]] = rhs[r];
}

void LpSolver::Impl::compute_duals(const std::vector<double>& c) {
  Eigen::VectorXd yv(m);
  for (int r = 0; r < m; ++r) yv[r] = c[head[r]];
  btran(yv);
  y.assign(yv.data(), yv.data() + m);
  for (int j = 0; j < n; ++j) {
    if (status[j] == LpBasis::kBasic) {
      d[j] = 0.0;
      continue;
    }
    double s = c[j];
    for (int k = cstart[j]; k < cstart[j + 1]; ++k) s -= y[cidx[k]] * cval[k];
    d[j] = s;
  }
  for (int i = 0; i < m; ++i) d[n + i] = status[n + i] == LpBasis::kBasic ? 0.0 : y[i];
}

void LpSolver::Impl::compute_pivot_row(const Eigen::VectorXd& rho) {
  for (int j : alpha_touched) {
    alpha_row[j] = 0.0;
    alpha_mark[j] = 0;
  }
  alpha_touched.clear();
  for (int i = 0; i < m; ++i) {
    const double ri = rho[i];
    if (std::abs(ri) <= kDropTol) continue;
    for (int k = rstart[i]; k < rstart[i + 1]; ++k) {
      const int j = ridx[k];
      if (!alpha_mark[j]) {
        alpha_mark[j] = 1;
        alpha_touched.push_back(j);
      }
      alpha_row[j] += ri * rval[k];
    }
    const int s = n + i;
    if (!alpha_mark[s]) {
      alpha_mark[s] = 1;
      alpha_touched.push_back(s);
    }
    alpha_row[s] -= ri;
  }
}

LpStatus LpSolver::Impl::dual_phase(int& iters) {
  Eigen::VectorXd rho(m), col(m), tau(m);
  double best_obj = -kInf;
  int since_progress = 0;
  bool bland = false;
  int infeasible_checks = 0;
  while (true) {
    if (iters >= iteration_limit) return LpStatus::IterationLimit;
    if (static_cast<int>(etas.size()) >= kRefactorInterval) {
      if (!factorize()) return LpStatus::NumericalFailure;
      compute_primal();
      compute_duals(work_cost);
    }

    // Leaving row.
    int r = -1;
    double best = 0.0;
    for (int p = 0; p < m; ++p) {
      const int j = head[p];
      double infeas = 0.0;
      if (x[j] < lo[j] - kPrimalTol) {
        infeas = lo[j] - x[j];
      } else if (x[j] > up[j] + kPrimalTol) {
        infeas = x[j] - up[j];
      } else {
        continue;
      }
      if (bland) {
        if (r < 0 || j < head[r]) r = p;
        continue;
      }
      const double score = infeas * infeas / dse[p];
      if (score > best) {
        best = score;
        r = p;
      }
    }
    if (r < 0) return LpStatus::Optimal;

    const int leave = head[r];
    const bool to_lower = x[leave] < lo[leave];
    const double target = to_lower ? lo[leave] : up[leave];

    rho.setZero();
    rho[r] = 1.0;
    btran(rho);
    compute_pivot_row(rho);

    // Harris two-pass ratio test over the pivot row.
    double theta_max = kInf;
    for (int j : alpha_touched) {
      if (status[j] == LpBasis::kBasic || is_fixed(j)) continue;
      const double a = alpha_row[j];
      if (std::abs(a) <= kPivotTol) continue;
      const bool at_lower = status[j] == LpBasis::kLower;
      const bool eligible = to_lower ? (at_lower ? a < 0 : a > 0) : (at_lower ? a > 0 : a < 0);
      if (!eligible) continue;
      const double dj = at_lower ? d[j] : -d[j];
      theta_max = std::min(theta_max, (std::max(dj, 0.0) + kDualTol) / std::abs(a));
    }
    int enter = -1;
    double best_alpha = 0.0;
    double best_ratio = kInf;
    for (int j : alpha_touched) {
      if (status[j] == LpBasis::kBasic || is_fixed(j)) continue;
      const double a = alpha_row[j];
      if (std::abs(a) <= kPivotTol) continue;
      const bool at_lower = status[j] == LpBasis::kLower;
      const bool eligible = to_lower ? (at_lower ? a < 0 : a > 0) : (at_lower ? a > 0 : a < 0);
      if (!eligible) continue;
      const double ratio = std::max(at_lower ? d[j] : -d[j], 0.0) / std::abs(a);
      if (bland) {
        if (ratio < best_ratio || (ratio == best_ratio && j < enter)) {
          best_ratio = ratio;
          enter = j;
        }
        continue;
      }
      if (ratio <= theta_max &&
          (std::abs(a) > best_alpha || (std::abs(a) == best_alpha && j < enter))) {
        best_alpha = std::abs(a);
        enter = j;
      }
    }
    if (enter < 0) {
      // Dual unbounded: confirm on a fresh factorization before reporting.
      if (infeasible_checks++ == 0 && !etas.empty()) {
        if (!factorize()) return LpStatus::NumericalFailure;
        compute_primal();
        compute_duals(work_cost);
        continue;
      }
      return LpStatus::Infeasible;
    }
    infeasible_checks = 0;

    column(enter, col);
    ftran(col);
    const double a_rq = col[r];
    if (std::abs(a_rq) < 1e-11 ||
        std::abs(a_rq - alpha_row[enter]) > 1e-7 * (1.0 + std::abs(a_rq))) {
      if (etas.empty()) return LpStatus::NumericalFailure;
      if (!factorize()) return LpStatus::NumericalFailure;
      compute_primal();
      compute_duals(work_cost);
      continue;
    }

    // Dual step; entering reduced costs with the wrong sign are treated as 0.
    double dq = d[enter];
    if (status[enter] == LpBasis::kLower ? dq < 0 : dq > 0) dq = 0.0;
    const double theta_d = dq / a_rq;
    for (int j : alpha_touched) {
      if (status[j] == LpBasis::kBasic) continue;
      d[j] -= theta_d * alpha_row[j];
    }
    d[enter] = 0.0;
    d[leave] = -theta_d;

    // Primal step.
    const double delta = (x[leave] - target) / a_rq;
    x[enter] += delta;
    for (int p = 0; p < m; ++p) {
      if (col[p] != 0.0) x[head[p]] -= delta * col[p];
    }

    // Dual steepest-edge weights.
    tau = rho;
    ftran(tau);
    const double w_r = std::max(rho.squaredNorm(), 1e-12);
    for (int p = 0; p < m; ++p) {
      if (p == r || col[p] == 0.0) continue;
      const double ratio = col[p] / a_rq;
      dse[p] = std::max(dse[p] + ratio * (ratio * w_r - 2.0 * tau[p]), 1e-8);
    }
    dse[r] = std::max(w_r / (a_rq * a_rq), 1e-8);

    // Basis change.
    Eta eta;
    eta.pos = r;
    eta.pivot = a_rq;
    for (int p = 0; p < m; ++p) {
      if (p != r && std::abs(col[p]) > kDropTol) {
        eta.idx.push_back(p);
        eta.val.push_back(col[p]);
      }
    }
    etas.push_back(std::move(eta));
    head[r] = enter;
    pos[enter] = r;
    status[enter] = LpBasis::kBasic;
    pos[leave] = -1;
    status[leave] = to_lower ? LpBasis::kLower : LpBasis::kUpper;
    x[leave] = target;
    ++iters;

    double obj = 0.0;
    for (int p = 0; p < m; ++p) obj += work_cost[head[p]] * x[head[p]];
    for (int j = 0; j < N; ++j) {
      if (status[j] != LpBasis::kBasic && x[j] != 0.0) obj += work_cost[j] * x[j];
    }
    if (obj > best_obj + 1e-12 * (1.0 + std::abs(best_obj))) {
      best_obj = obj;
      since_progress = 0;
      bland = false;
    } else if (++since_progress > stall_limit) {
      bland = true;
    }
  }
}

LpStatus LpSolver::Impl::primal_phase(int& iters) {
  Eigen::VectorXd col(m);
  int since_progress = 0;
  while (true) {
    if (iters >= iteration_limit) return LpStatus::IterationLimit;
    if (static_cast<int>(etas.size()) >= kRefactorInterval) {
      if (!factorize()) return LpStatus::NumericalFailure;
      compute_primal();
    }
    compute_duals(cost);
    const bool bland = since_progress > stall_limit;
    int enter = -1;
    double best = 0.0;
    for (int j = 0; j < N; ++j) {
      if (status[j] == LpBasis::kBasic || is_fixed(j)) continue;
      double infeas = 0.0;
      if (status[j] == LpBasis::kLower && d[j] < -kDualTol) infeas = -d[j];
      if (status[j] == LpBasis::kUpper && d[j] > kDualTol) infeas = d[j];
      if (infeas == 0.0) continue;
      if (bland) {
        enter = j;
        break;
      }
      if (infeas > best) {
        best = infeas;
        enter = j;
      }
    }
    if (enter < 0) return LpStatus::Optimal;

    const double dir = status[enter] == LpBasis::kLower ? 1.0 : -1.0;
    column(enter, col);
    ftran(col);
    // x_B moves by -t * dir * col.
    double t_max = up[enter] - lo[enter];
    for (int p = 0; p < m; ++p) {
      const double a = dir * col[p];
      if (std::abs(a) <= kPivotTol) continue;
      const int j = head[p];
      const double room = a > 0 ? x[j] - lo[j] : up[j] - x[j];
      t_max = std::min(t_max, (std::max(room, 0.0) + kPrimalTol) / std::abs(a));
    }
    int r = -1;
    double best_alpha = 0.0;
    for (int p = 0; p < m; ++p) {
      const double a = dir * col[p];
      if (std::abs(a) <= kPivotTol) continue;
      const int j = head[p];
      const double room = std::max(a > 0 ? x[j] - lo[j] : up[j] - x[j], 0.0);
      if (room / std::abs(a) <= t_max && std::abs(a) > best_alpha) {
        best_alpha = std::abs(a);
        r = p;
      }
    }
    const double span = up[enter] - lo[enter];
    double t;
    if (r < 0 || (span <= t_max && span < kInf)) {
      if (std::isinf(span)) return LpStatus::NumericalFailure;  // unbounded
      t = span;
      for (int p = 0; p < m; ++p) x[head[p]] -= t * dir * col[p];
      status[enter] = status[enter] == LpBasis::kLower ? LpBasis::kUpper : LpBasis::kLower;
      x[enter] = status[enter] == LpBasis::kLower ? lo[enter] : up[enter];
      ++iters;
      since_progress = 0;
      continue;
    }
    const int leave = head[r];
    const double a = dir * col[r];
    const double bound = a > 0 ? lo[leave] : up[leave];
    t = std::max((x[leave] - bound) / a, 0.0);
    for (int p = 0; p < m; ++p) x[head[p]] -= t * dir * col[p];
    x[enter] += t * dir;
    since_progress = t > 1e-12 ? 0 : since_progress + 1;

    Eta eta;
    eta.pos = r;
    eta.pivot = col[r];
    for (int p = 0; p < m; ++p) {
      if (p != r && std::abs(col[p]) > kDropTol) {
        eta.idx.push_back(p);
        eta.val.push_back(col[p]);
      }
    }
    etas.push_back(std::move(eta));
    head[r] = enter;
    pos[enter] = r;
    status[enter] = LpBasis::kBasic;
    pos[leave] = -1;
    status[leave] = a > 0 ? LpBasis::kLower : LpBasis::kUpper;
    x[leave] = bound;
    dse[r] = 1.0;
    ++iters;
  }
}

LpStatus LpSolver::Impl::solve() {
  int iters = 0;
  for (int attempt = 0; attempt < 2; ++attempt) {
    if (!factorize()) {
      slack_basis();
      if (!factorize()) return LpStatus::NumericalFailure;
    }
    // Perturb nonbasic costs away from zero in the dual-feasible direction.
    work_cost = cost;
    perturb_state = 0x9e3779b97f4a7c15ULL;
    for (int j = 0; j < n; ++j) {
      if (status[j] == LpBasis::kBasic || is_fixed(j)) continue;
      const double eps = (1e-7 + 1e-7 * next_uniform()) * (1.0 + std::abs(cost[j]));
      work_cost[j] += status[j] == LpBasis::kLower ? eps : -eps;
    }
    compute_primal();
    compute_duals(work_cost);
    // Repair dual infeasibilities of boxed columns by moving them to the other bound.
    bool dual_ok = true;
    for (int j = 0; j < N; ++j) {
      if (status[j] == LpBasis::kBasic || is_fixed(j)) continue;
      const bool wrong = status[j] == LpBasis::kLower ? d[j] < -kDualTol : d[j] > kDualTol;
      if (!wrong) continue;
      const std::uint8_t other = status[j] == LpBasis::kLower ? LpBasis::kUpper : LpBasis::kLower;
      if ((other == LpBasis::kUpper && std::isinf(up[j])) ||
          (other == LpBasis::kLower && std::isinf(lo[j]))) {
        dual_ok = false;
        continue;
      }
      status[j] = other;
    }
    if (!dual_ok) {
      slack_basis();
      continue;
    }
    compute_primal();

    LpStatus st = dual_phase(iters);
    if (st == LpStatus::NumericalFailure && attempt == 0) {
      slack_basis();
      continue;
    }
    if (st != LpStatus::Optimal) {
      last_iterations = iters;
      all_iterations += iters;
      return st;
    }
    if (!factorize()) {
      if (attempt == 0) {
        slack_basis();
        continue;
      }
      return LpStatus::NumericalFailure;
    }
    compute_primal();
    st = primal_phase(iters);
    last_iterations = iters;
    all_iterations += iters;
    if (st == LpStatus::Optimal) {
      // Final primal feasibility check on a fresh factorization.
      if (!factorize()) return LpStatus::NumericalFailure;
      compute_primal();
      double worst = 0.0;
      for (int p = 0; p < m; ++p) {
        const int j = head[p];
        worst = std::max({worst, lo[j] - x[j], x[j] - up[j]});
      }
      if (worst > 1e-7) {
        if (attempt == 0) continue;
        return LpStatus::NumericalFailure;
      }
    }
    return st;
  }
  return LpStatus::NumericalFailure;
}

LpSolver::LpSolver(const LpData& data) : impl_(std::make_unique<Impl>(data)) {}
LpSolver::~LpSolver() = default;

int LpSolver::num_rows() const { return impl_->m; }
int LpSolver::num_cols() const { return impl_->n; }

void LpSolver::set_col_bounds(int j, double lower, double upper) {
  auto& s = *impl_;
  s.lo[j] = lower / s.col_scale[j];
  s.up[j] = upper / s.col_scale[j];
}

double LpSolver::col_lower(int j) const { return impl_->lo[j] * impl_->col_scale[j]; }
double LpSolver::col_upper(int j) const { return impl_->up[j] * impl_->col_scale[j]; }

void LpSolver::set_costs(const std::vector<double>& cost) {
  auto& s = *impl_;
  for (int j = 0; j < s.n; ++j) s.cost[j] = cost[j] * s.col_scale[j];
  s.slack_basis();
}

LpBasis LpSolver::basis() const { return LpBasis{impl_->status}; }

void LpSolver::set_basis(const LpBasis& basis) {
  auto& s = *impl_;
  if (static_cast<int>(basis.status.size()) != s.N) throw std::invalid_argument("basis size");
  int count = 0;
  for (auto v : basis.status) count += v == LpBasis::kBasic;
  if (count != s.m) throw std::invalid_argument("basis must have one basic variable per row");
  s.status = basis.status;
  int r = 0;
  for (int j = 0; j < s.N; ++j) {
    if (s.status[j] == LpBasis::kBasic) {
      s.head[r] = j;
      s.pos[j] = r++;
    } else {
      s.pos[j] = -1;
    }
  }
  s.dse.assign(s.m, 1.0);
  s.factored = false;
}

void LpSolver::reset_basis() { impl_->slack_basis(); }
void LpSolver::set_iteration_limit(int limit) { impl_->iteration_limit = limit; }
void LpSolver::set_stall_limit(int limit) { impl_->stall_limit = limit; }

LpStatus LpSolver::solve() { return impl_->solve(); }

double LpSolver::objective() const {
  const auto& s = *impl_;
  double v = 0.0;
  for (int j = 0; j < s.n; ++j) v += s.cost[j] * s.x[j];
  return v;
}

std::vector<double> LpSolver::row_duals() {
  auto& s = *impl_;
  s.compute_duals(s.cost);
  std::vector<double> out(s.m);
  for (int i = 0; i < s.m; ++i) out[i] = s.y[i] * s.row_scale[i];
  return out;
}

std::vector<double> LpSolver::column_values() const {
  const auto& s = *impl_;
  std::vector<double> out(s.n);
  for (int j = 0; j < s.n; ++j) out[j] = s.x[j] * s.col_scale[j];
  return out;
}

int LpSolver::iterations() const { return impl_->last_iterations; }
long LpSolver::total_iterations() const { return impl_->all_iterations; }

}  // namespace ibp
