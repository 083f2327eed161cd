#include "ibp/milp_model.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "ibp/bb_solver.hpp"
#include "support/instances.hpp"
#include "support/mps_reader.hpp"

namespace ibp {
namespace {

MilpModel build(const ScenarioConfig& cfg, double xi) {
  return build_milp(cfg, xi, compute_big_m(cfg, xi));
}

// Same layout as a 24 x 4 case study without generating one.
ScenarioConfig wide(int F) {
  auto cfg = testing::random_scenario(7, {.T = 24, .C = 4, .F = F});
  return cfg;
}

TEST(MilpBuilder, ClosedFormCounts) {
  for (int F : {2, 3}) {
    const auto cfg = wide(F);
    const auto m = build(cfg, 0.03);
    const int T = 24, C = 4;
    EXPECT_EQ(m.num_binaries(), T * C * (2 * F + 1));
    // Per (t, c): F block demands, the shift, rho, F + (F-1) block
    // multipliers, two shift multipliers and the epigraph auxiliary. Then
    // eta per cluster, F-1 breakpoints, lambda1 and the peak.
    EXPECT_EQ(m.num_continuous(), T * C * (3 * F + 3) + T * C + C + (F - 1) + 1 + 1);
  }
  EXPECT_EQ(build(wide(3), 0.03).num_binaries(), 672);
}

TEST(MilpBuilder, FrozenDimensions) {
  const auto m = build(wide(2), 0.03);
  EXPECT_EQ(m.num_rows(), 1569);
  EXPECT_EQ(m.num_columns(), 1447);
  EXPECT_EQ(m.num_binaries(), 480);
}

TEST(MilpBuilder, RejectsBadInputs) {
  const auto cfg = testing::toy_two_slot();
  EXPECT_THROW(build(cfg, -0.01), ModelError);
  auto bigm = compute_big_m(cfg, 0.03);
  bigm.m1_dual[0] = 0.0;
  EXPECT_THROW(build_milp(cfg, 0.03, bigm), ModelError);
  bigm = compute_big_m(cfg, 0.03);
  bigm.m3_primal.pop_back();
  EXPECT_THROW(build_milp(cfg, 0.03, bigm), ModelError);
}

TEST(MilpBuilder, EpigraphIdentityThreeBlocks) {
  // max(0, D - q1, 2D - 2q1 - q2) against the block split of D.
  const std::vector<double> q = {0.5, 0.3};
  const auto split = baseline_block_split(1.0, q);
  ASSERT_EQ(split.size(), 3u);
  EXPECT_NEAR(split[1] + 2.0 * split[2], 0.7, 1e-12);
  EXPECT_NEAR(block_excess(1.0, q), 0.7, 1e-12);
}

TEST(MilpBuilder, TwoBlockEpigraphRows) {
  // z >= 0 from the bound and z + q1 >= D from a single row.
  const auto cfg = testing::single_cluster({0.9, 0.4, 0.6}, 0.2, 0.03);
  const auto m = build(cfg, 0.02);
  for (int t = 0; t < cfg.horizon; ++t) {
    const int z = m.z(t, 0);
    EXPECT_EQ(m.variables[z].lower, 0.0);
    int found = 0;
    for (const auto& r : m.rows) {
      if (r.cols.size() != 2 || r.cols[0] != z) continue;
      ++found;
      EXPECT_EQ(r.sense, Sense::Ge);
      EXPECT_EQ(r.cols[1], m.q(0));
      EXPECT_EQ(r.coefs[0], 1.0);
      EXPECT_EQ(r.coefs[1], 1.0);
      EXPECT_EQ(r.rhs, cfg.clusters[0].baseline[t]);
    }
    EXPECT_EQ(found, 1) << "slot " << t;
  }
}

TEST(MilpBuilder, FlatTariffPointIsFeasible) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto cfg = testing::random_scenario(seed, {.T = 6, .C = 2, .F = 2 + static_cast<int>(seed % 2)});
    for (double xi : {0.0, 0.01, 0.05}) {
      const auto m = build(cfg, xi);
      const auto x = flat_price_assignment(m, cfg);
      EXPECT_LE(max_violation(m, x), 1e-9) << "seed " << seed << " xi " << xi;
      const auto sol = extract_solution(m, x);
      EXPECT_NEAR(sol.par, derive(cfg).baseline_par, 1e-12);
      EXPECT_GE(sol.par, 1.0);
    }
  }
}

TEST(MilpBuilder, AssignmentRoundTrip) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto cfg = testing::random_scenario(seed, {.T = 5, .C = 2, .F = 3});
    const double xi = 0.02;
    const auto m = build(cfg, xi);
    auto prices = testing::random_prices(seed, cfg, xi);
    const auto lower = solve_response(cfg, prices);
    const auto iv = lambda1_interval(cfg, xi, prices.breakpoints, lower.response);
    if (iv.empty()) continue;
    prices.lambda1 = iv.midpoint();
    const auto again = solve_response(cfg, prices);
    const auto x = make_assignment(m, cfg, prices, again);
    EXPECT_LE(max_violation(m, x), 1e-6) << "seed " << seed;
    const auto sol = extract_solution(m, x);
    EXPECT_NEAR(sol.prices.lambda1, prices.lambda1, 1e-12);
    EXPECT_EQ(sol.prices.xi, xi);
    for (std::size_t k = 0; k < sol.response.shift.size(); ++k) {
      EXPECT_NEAR(sol.response.shift[k], again.response.shift[k], 1e-12);
    }
  }
}

TEST(MilpBuilder, ExtractRejectsInfeasibleAssignment) {
  const auto cfg = testing::toy_two_slot();
  const auto m = build(cfg, 0.03);
  auto x = flat_price_assignment(m, cfg);
  x[m.lambda1_col] = 10.0 * m.flat_price;
  EXPECT_THROW(extract_solution(m, x), ModelError);
}

TEST(MilpBuilder, LowerLevelOptimalityAtSolvedPoint) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto cfg = testing::random_scenario(seed, {.T = 3, .C = 1, .F = 2});
    const auto m = build(cfg, 0.03);
    SolveOptions opts;
    opts.deterministic = true;
    const auto out = solve(m, opts);
    ASSERT_TRUE(out.has_incumbent());
    const auto sol = extract_solution(m, out.assignment);
    EXPECT_LE(kkt_residual(cfg, sol.prices, sol.response, sol.duals), 1e-6) << "seed " << seed;
    // Epigraph auxiliaries sit on the convex function.
    for (int t = 0; t < cfg.horizon; ++t) {
      EXPECT_NEAR(out.assignment[m.z(t, 0)],
                  block_excess(cfg.clusters[0].baseline[t], sol.prices.breakpoints), 1e-9);
    }
  }
}

TEST(BigMValidation, ThresholdRule) {
  const auto cfg = testing::toy_two_slot();
  const auto m = build(cfg, 0.03);
  SolveOptions opts;
  opts.deterministic = true;
  const auto out = solve(m, opts);
  ASSERT_TRUE(out.has_incumbent());
  EXPECT_TRUE(validate_big_m(m, out.assignment).clean());
  // Safety factor 2: nothing exceeds half its constant.
  EXPECT_LE(validate_big_m(m, out.assignment).max_ratio, 0.5 + 1e-12);

  auto x = out.assignment;
  x[m.mum(0, 0, 0)] = 0.99 * m.bigm.m1_dual[0];
  const auto rep = validate_big_m(m, x);
  ASSERT_FALSE(rep.clean());
  EXPECT_GE(rep.max_ratio, 0.99 - 1e-12);
}

TEST(BigMValidation, UndersizedConstantIsFlagged) {
  // Find a positive block multiplier, then rebuild with M just above it.
  const auto cfg = testing::toy_two_slot();
  const double xi = 0.03;
  const auto base = build(cfg, xi);
  SolveOptions opts;
  opts.deterministic = true;
  const auto out = solve(base, opts);
  ASSERT_TRUE(out.has_incumbent());
  int idx = -1;
  double val = 0.0;
  for (int t = 0; t < cfg.horizon; ++t) {
    for (int f = 0; f < 2; ++f) {
      const double v = out.assignment[base.mum(t, 0, f)];
      if (v > val) {
        val = v;
        idx = t * 2 + f;
      }
    }
  }
  ASSERT_GE(idx, 0);
  auto bigm = compute_big_m(cfg, xi);
  bigm.m1_dual[idx] = 1.005 * val;
  const auto tight = build_milp(cfg, xi, bigm);
  const auto res = solve(tight, opts);
  ASSERT_TRUE(res.has_incumbent());
  EXPECT_FALSE(validate_big_m(tight, res.assignment).clean());
}

TEST(MpsExport, ByteDeterministic) {
  const auto m1 = build(testing::random_scenario(3, {.T = 6, .C = 2, .F = 3}), 0.02);
  const auto m2 = build(testing::random_scenario(3, {.T = 6, .C = 2, .F = 3}), 0.02);
  std::ostringstream a, b;
  export_mps(m1, a);
  export_mps(m2, b);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_FALSE(a.str().empty());
}

TEST(MpsExport, IndependentReaderCounts) {
  for (int F : {2, 3}) {
    const auto cfg = testing::random_scenario(5, {.T = 8, .C = 3, .F = F});
    const auto m = build(cfg, 0.02);
    std::stringstream s;
    export_mps(m, s);
    const auto c = testing::read_mps(s);
    EXPECT_EQ(c.rows, m.num_rows());
    EXPECT_EQ(c.cols, m.num_columns());
    EXPECT_EQ(c.nonzeros, m.num_nonzeros());
    EXPECT_EQ(c.binaries, 8 * 3 * (2 * F + 1));
    for (int j = 0; j < m.num_columns(); ++j) {
      EXPECT_EQ(c.marked.count(m.variables[j].name) == 1, m.variables[j].binary);
    }
  }
}

TEST(MpsExport, ModelStats) {
  const auto m = build(wide(2), 0.03);
  std::ostringstream s;
  write_model_stats(m, s);
  const auto text = s.str();
  EXPECT_NE(text.find("rows: 1569"), std::string::npos);
  EXPECT_NE(text.find("columns: 1447"), std::string::npos);
  EXPECT_NE(text.find("binaries: 480"), std::string::npos);
  EXPECT_NE(text.find("nonzeros: " + std::to_string(m.num_nonzeros())), std::string::npos);
}

}  // namespace
}  // namespace ibp
