#include "ibp/bb_solver.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "support/instances.hpp"

namespace ibp {
namespace {

MilpModel build(const ScenarioConfig& cfg, double xi) {
  return build_milp(cfg, xi, compute_big_m(cfg, xi));
}

SolveOptions det() {
  SolveOptions o;
  o.deterministic = true;
  return o;
}

TEST(SolveOptions, Validation) {
  SolveOptions o;
  EXPECT_NO_THROW(o.check());
  o.gap_tol = -1.0;
  EXPECT_THROW(o.check(), std::invalid_argument);
  o = {};
  o.node_limit = 0;
  EXPECT_THROW(o.check(), std::invalid_argument);
  o = {};
  o.time_limit = 0.0;
  EXPECT_THROW(o.check(), std::invalid_argument);
}

TEST(Relaxation, InfeasibleFixing) {
  // Block 1 empty (w1 = 0 zeroes d) while block 1 is not full (w2 = 0
  // zeroes q1 - d): q1 = 0 is below the breakpoint box.
  const auto cfg = testing::toy_two_slot();
  const auto m = build(cfg, 0.03);
  const auto res = solve_lp_relaxation(m, {{m.w1(0, 0, 0), 0}, {m.w2(0, 0, 0), 0}});
  EXPECT_EQ(res.status, LpStatus::Infeasible);
}

TEST(Relaxation, RejectsBadFixings) {
  const auto m = build(testing::toy_two_slot(), 0.03);
  EXPECT_THROW(solve_lp_relaxation(m, {{m.lambda1_col, 1}}), ModelError);
  EXPECT_THROW(solve_lp_relaxation(m, {{m.w3(0, 0), 2}}), ModelError);
}

TEST(Relaxation, CompletePatternEqualsPatternValue) {
  const auto cfg = testing::random_scenario(2, {.T = 3, .C = 1, .F = 2});
  const auto m = build(cfg, 0.03);
  const auto out = solve(m, det());
  ASSERT_TRUE(out.has_incumbent());
  Fixings fix;
  for (int j = 0; j < m.num_columns(); ++j) {
    if (m.variables[j].binary) fix.emplace_back(j, static_cast<int>(std::lround(out.assignment[j])));
  }
  const auto lp = solve_lp_relaxation(m, fix);
  ASSERT_EQ(lp.status, LpStatus::Optimal);
  EXPECT_NEAR(lp.value, out.value, 1e-8 * std::max(1.0, out.value));
}

TEST(BranchAndBound, MatchesEnumeration) {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const int T = seed % 3 == 0 ? 2 : 3;
    const auto cfg = testing::random_scenario(seed, {.T = T, .C = 1, .F = 2});
    for (double xi : {0.01, 0.04}) {
      const auto m = build(cfg, xi);
      ASSERT_LE(m.num_binaries(), kDefaultPatternCap);
      auto opts = det();
      opts.gap_tol = 0.0;
      const auto bb = solve(m, opts);
      const auto en = enumerate_patterns(m);
      ASSERT_EQ(en.status, SolveStatus::Optimal) << "seed " << seed;
      ASSERT_EQ(bb.status, SolveStatus::Optimal) << "seed " << seed;
      EXPECT_NEAR(bb.value, en.value, 1e-8) << "seed " << seed << " xi " << xi;
      EXPECT_EQ(bb.gap, 0.0);
      EXPECT_LE(max_violation(m, bb.assignment), 1e-6);

      // The relaxation bounds the optimum from below.
      const auto root = solve_lp_relaxation(m);
      ASSERT_EQ(root.status, LpStatus::Optimal);
      EXPECT_LE(root.value, en.value + 1e-8);
    }
  }
}

TEST(BranchAndBound, TwoClusterMatchesEnumeration) {
  for (std::uint64_t seed = 21; seed <= 24; ++seed) {
    const auto cfg = testing::random_scenario(seed, {.T = 2, .C = 2, .F = 2});
    const auto m = build(cfg, 0.02);
    const auto bb = solve(m, det());
    const auto en = enumerate_patterns(m);
    EXPECT_NEAR(bb.value, en.value, 1e-8) << "seed " << seed;
  }
}

TEST(BranchAndBound, FirstViolatedBranchingAgrees) {
  for (std::uint64_t seed = 31; seed <= 36; ++seed) {
    const auto cfg = testing::random_scenario(seed, {.T = 3, .C = 1, .F = 2});
    const auto m = build(cfg, 0.03);
    auto opts = det();
    const auto a = solve(m, opts);
    opts.branching = Branching::FirstViolated;
    const auto b = solve(m, opts);
    EXPECT_NEAR(a.value, b.value, 1e-8) << "seed " << seed;
  }
}

TEST(BranchAndBound, NeverInfeasibleOnValidScenarios) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto cfg = testing::random_scenario(seed, {.T = 6, .C = 2, .F = 3});
    const auto m = build(cfg, 0.02);
    auto opts = det();
    opts.node_limit = 5;
    const auto out = solve(m, opts);
    EXPECT_TRUE(out.has_incumbent()) << "seed " << seed;
    EXPECT_NE(out.status, SolveStatus::Infeasible);
    EXPECT_LE(out.bound, out.value + 1e-9);
    EXPECT_LE(max_violation(m, out.assignment), 1e-6);
  }
}

TEST(BranchAndBound, HeuristicIncumbentIsLowerLevelOptimal) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto cfg = testing::random_scenario(seed, {.T = 8, .C = 2, .F = 2});
    const auto m = build(cfg, 0.03);
    auto opts = det();
    opts.node_limit = 1;
    const auto out = solve(m, opts);
    ASSERT_TRUE(out.has_incumbent());
    const auto sol = extract_solution(m, out.assignment, 1e-6);
    EXPECT_LE(kkt_residual(cfg, sol.prices, sol.response, sol.duals), 1e-6) << "seed " << seed;
    const auto cert = lambda1_interval(cfg, 0.03, sol.prices.breakpoints, sol.response);
    EXPECT_GE(sol.prices.lambda1, cert.lower - 1e-9);
    EXPECT_LE(sol.prices.lambda1, cert.upper + 1e-9);
  }
}

TEST(BranchAndBound, WarmStartIsAccepted) {
  const auto cfg = testing::random_scenario(4, {.T = 3, .C = 1, .F = 2});
  const auto m = build(cfg, 0.03);
  const auto warm = flat_price_assignment(m, cfg);
  auto opts = det();
  const auto out = solve(m, opts, &warm);
  EXPECT_EQ(out.status, SolveStatus::Optimal);
  EXPECT_LE(out.value, warm[m.peak_col] + 1e-12);
}

// Parses the bound column of the solver log.
TEST(BranchAndBound, LoggedBoundIsMonotone) {
  const auto cfg = testing::random_scenario(9, {.T = 4, .C = 2, .F = 2});
  const auto m = build(cfg, 0.01);
  std::ostringstream log;
  auto opts = det();
  opts.log = &log;
  opts.log_every = 1;
  const auto out = solve(m, opts);
  std::istringstream in(log.str());
  double last = -INFINITY;
  int lines = 0;
  for (std::string line; std::getline(in, line);) {
    const auto p = line.find(" bound ");
    if (p == std::string::npos) continue;
    const double b = std::stod(line.substr(p + 7));
    EXPECT_GE(b, last - 1e-9) << line;
    last = std::max(last, b);
    ++lines;
  }
  EXPECT_GT(lines, 0);
  EXPECT_LE(out.bound, out.value + 1e-9);
}

TEST(BranchAndBound, DeterministicRunsAgree) {
  const auto cfg = testing::random_scenario(12, {.T = 6, .C = 2, .F = 2});
  const auto m = build(cfg, 0.01);
  auto opts = det();
  opts.node_limit = 200;
  const auto a = solve(m, opts);
  const auto b = solve(m, opts);
  EXPECT_EQ(a.assignment, b.assignment);
  EXPECT_EQ(a.bound, b.bound);
  EXPECT_EQ(a.node_count, b.node_count);
  std::ostringstream sa, sb;
  write_solve_summary(a, sa);
  write_solve_summary(b, sb);
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_EQ(sa.str().find("seconds"), std::string::npos);
}

TEST(Enumeration, CapExceededThrows) {
  const auto cfg = testing::random_scenario(1, {.T = 5, .C = 1, .F = 2});
  const auto m = build(cfg, 0.03);
  ASSERT_GT(m.num_binaries(), kDefaultPatternCap);
  EXPECT_THROW(enumerate_patterns(m), ModelError);
}

TEST(Enumeration, ContradictoryModelIsInfeasible) {
  const auto cfg = testing::toy_two_slot();
  auto m = build(cfg, 0.03);
  // Revenue far beyond anything the bounded prices can collect.
  m.rows[m.revenue_row].rhs = 1e6;
  const auto en = enumerate_patterns(m);
  EXPECT_EQ(en.status, SolveStatus::Infeasible);
  EXPECT_FALSE(en.has_incumbent());
}

}  // namespace
}  // namespace ibp
