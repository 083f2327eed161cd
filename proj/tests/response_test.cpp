#include "ibp/response.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "support/instances.hpp"

namespace ibp {
namespace {

PriceStructure toy_prices(double lambda1 = 0.08) { return {lambda1, 0.03, {0.8}}; }

TEST(ClusterResponse, TwoSlotReference) {
  const auto cfg = testing::toy_two_slot();
  const auto sol = solve_response(cfg, toy_prices());
  const auto& r = sol.response;
  EXPECT_NEAR(r.x(0, 0), -0.1, 1e-9);
  EXPECT_NEAR(r.x(1, 0), 0.1, 1e-9);
  EXPECT_NEAR(r.d(0, 0, 0), 0.8, 1e-9);
  EXPECT_NEAR(r.d(0, 0, 1), 0.1, 1e-9);
  EXPECT_NEAR(r.d(1, 0, 0), 0.6, 1e-9);
  EXPECT_NEAR(r.d(1, 0, 1), 0.0, 1e-9);
  EXPECT_NEAR(lower_level_objective(cfg, toy_prices(), r), 0.1233, 1e-9);
  EXPECT_LE(kkt_residual(cfg, toy_prices(), r, sol.duals), 1e-8);
}

TEST(ClusterResponse, NoFlexibilityMeansBaseline) {
  auto cfg = testing::random_scenario(3, {.T = 5, .C = 2});
  for (auto& cl : cfg.clusters) cl.sigma = 0.0;
  const auto prices = testing::random_prices(3, cfg, 0.04);
  const auto sol = solve_response(cfg, prices);
  for (int c = 0; c < cfg.num_clusters(); ++c) {
    for (int t = 0; t < cfg.horizon; ++t) {
      EXPECT_EQ(sol.response.x(t, c), 0.0);
      const auto split = baseline_block_split(cfg.clusters[c].baseline[t], prices.breakpoints);
      for (int f = 0; f < prices.block_count(); ++f) {
        EXPECT_NEAR(sol.response.d(t, c, f), split[f], 1e-12);
      }
    }
  }
}

TEST(ClusterResponse, FlatLadderMeansNoShift) {
  const auto cfg = testing::random_scenario(5, {.T = 6, .C = 3});
  auto prices = testing::random_prices(5, cfg, 0.0);
  const auto sol = solve_response(cfg, prices);
  for (double x : sol.response.shift) EXPECT_NEAR(x, 0.0, 1e-9);
}

TEST(ClusterResponse, InvariantToLambdaOne) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto cfg = testing::random_scenario(seed, {.T = 6, .C = 2, .F = 3});
    auto a = testing::random_prices(seed, cfg, 0.03);
    auto b = a;
    b.lambda1 = 0.21;
    const auto ra = solve_response(cfg, a).response;
    const auto rb = solve_response(cfg, b).response;
    EXPECT_EQ(ra.shift, rb.shift) << "seed " << seed;
    EXPECT_EQ(ra.block_demand, rb.block_demand) << "seed " << seed;
  }
}

TEST(ClusterResponse, FeasibleAndKktOnRandomInstances) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const int blocks = 2 + static_cast<int>(seed % 3);
    const auto cfg = testing::random_scenario(
        seed, {.T = 2 + static_cast<int>(seed % 7), .C = 2, .F = blocks,
               .allow_zero_tau = true});
    const auto prices = testing::random_prices(seed, cfg, 0.005 + 0.01 * (seed % 5));
    const auto sol = solve_response(cfg, prices);
    const auto& r = sol.response;
    for (int c = 0; c < cfg.num_clusters(); ++c) {
      const auto& cl = cfg.clusters[c];
      double net = 0.0;
      for (int t = 0; t < cfg.horizon; ++t) {
        net += r.x(t, c);
        EXPECT_LE(std::abs(r.x(t, c)), cl.sigma * cl.baseline[t] + 1e-12);
        EXPECT_NEAR(r.supplied(t, c), cl.baseline[t] + r.x(t, c), 1e-12);
        for (int f = 0; f + 1 < blocks; ++f) {
          EXPECT_LE(r.d(t, c, f), prices.breakpoints[f] + 1e-12);
          EXPECT_GE(r.d(t, c, f), -1e-12);
        }
      }
      EXPECT_LE(std::abs(net), 1e-9);
    }
    EXPECT_LE(kkt_residual(cfg, prices, r, sol.duals), 1e-8) << "seed " << seed;
  }
}

TEST(ClusterResponse, MatchesExhaustiveGrid) {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const auto cfg = testing::random_scenario(seed, {.T = 3, .C = 1, .F = 2 + int(seed % 2)});
    const auto prices = testing::random_prices(seed, cfg, 0.02 + 0.01 * (seed % 3));
    const auto exact = solve_response(cfg, prices).response;
    const auto grid = brute_force_response(cfg, prices, 0.002);
    const double fe = lower_level_objective(cfg, prices, exact);
    const double fg = lower_level_objective(cfg, prices, grid);
    EXPECT_LE(fe, fg + 1e-12) << "seed " << seed;
    // Grid optimum is within a discretisation error of the exact one.
    EXPECT_LE(fg - fe, 5e-4) << "seed " << seed;
  }
}

TEST(ClusterResponse, NeverWorseThanStayingPut) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto cfg = testing::random_scenario(seed, {.T = 8, .C = 3, .F = 3});
    const auto prices = testing::random_prices(seed, cfg, 0.04);
    const auto sol = solve_response(cfg, prices);
    DemandResponse stay(cfg.horizon, cfg.num_clusters(), prices.block_count());
    for (int c = 0; c < cfg.num_clusters(); ++c) {
      for (int t = 0; t < cfg.horizon; ++t) {
        const auto split = baseline_block_split(cfg.clusters[c].baseline[t], prices.breakpoints);
        for (int f = 0; f < prices.block_count(); ++f) stay.d(t, c, f) = split[f];
      }
    }
    EXPECT_LE(lower_level_objective(cfg, prices, sol.response),
              lower_level_objective(cfg, prices, stay) + 1e-12);
  }
}

TEST(ClusterResponse, PerturbedShiftDoesNotImprove) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto cfg = testing::random_scenario(seed, {.T = 5, .C = 1, .F = 3});
    const auto prices = testing::random_prices(seed, cfg, 0.03);
    const auto& cl = cfg.clusters[0];
    const auto base = solve_response(cfg, prices).response;
    const double best = lower_level_objective(cfg, prices, base);
    for (int i = 0; i < cfg.horizon; ++i) {
      for (int j = 0; j < cfg.horizon; ++j) {
        if (i == j) continue;
        const double step = 1e-3;
        DemandResponse moved = base;
        const double xi = base.x(i, 0) + step;
        const double xj = base.x(j, 0) - step;
        if (std::abs(xi) > cl.sigma * cl.baseline[i] ||
            std::abs(xj) > cl.sigma * cl.baseline[j]) {
          continue;
        }
        for (auto [t, x] : {std::pair{i, xi}, std::pair{j, xj}}) {
          moved.x(t, 0) = x;
          const auto split = baseline_block_split(cl.baseline[t] + x, prices.breakpoints);
          for (int f = 0; f < prices.block_count(); ++f) moved.d(t, 0, f) = split[f];
        }
        EXPECT_GE(lower_level_objective(cfg, prices, moved), best - 1e-12);
      }
    }
  }
}

TEST(ClusterResponse, ZeroTauGivesOptimalMinimumNormShift) {
  // Cheap slot 1 and expensive slot 0: all flexibility moves.
  auto cfg = testing::single_cluster({1.0, 0.4}, 0.25, 0.0);
  const PriceStructure prices{0.05, 0.1, {0.6}};
  const auto sol = solve_response(cfg, prices);
  EXPECT_NEAR(sol.response.x(0, 0), -0.1, 1e-9);
  EXPECT_NEAR(sol.response.x(1, 0), 0.1, 1e-9);
  EXPECT_LE(kkt_residual(cfg, prices, sol.response, sol.duals), 1e-8);

  // Both slots inside block 1: any shift is optimal, the minimum-norm one is zero.
  cfg = testing::single_cluster({0.3, 0.4}, 0.25, 0.0);
  const auto flat = solve_response(cfg, prices);
  EXPECT_NEAR(flat.response.x(0, 0), 0.0, 1e-12);
  EXPECT_NEAR(flat.response.x(1, 0), 0.0, 1e-12);
}

TEST(ClusterResponse, ScalesDualsByConsumerCount) {
  auto one = testing::toy_two_slot();
  auto many = one;
  many.clusters[0].n = 7;
  const auto a = solve_response(one, toy_prices());
  const auto b = solve_response(many, toy_prices());
  EXPECT_EQ(a.response.shift, b.response.shift);
  EXPECT_NEAR(b.duals.eta[0], 7 * a.duals.eta[0], 1e-12);
  EXPECT_NEAR(b.duals.rho[0], 7 * a.duals.rho[0], 1e-12);
  EXPECT_LE(kkt_residual(many, toy_prices(), b.response, b.duals), 1e-8);
}

TEST(BruteForce, RejectsHugeGrids) {
  const auto cfg = testing::random_scenario(1, {.T = 8, .C = 1});
  const auto prices = testing::random_prices(1, cfg, 0.03);
  EXPECT_THROW(brute_force_response(cfg, prices, 1e-4, 1e6), ResponseError);
}

TEST(BlockBill, PiecewiseLinear) {
  const PriceStructure p{0.1, 0.05, {1.0, 0.5}};
  EXPECT_NEAR(block_bill(0.5, p), 0.05, 1e-15);
  EXPECT_NEAR(block_bill(1.2, p), 0.1 + 0.2 * 0.15, 1e-15);
  EXPECT_NEAR(block_bill(2.0, p), 0.1 + 0.5 * 0.15 + 0.5 * 0.2, 1e-15);
}

}  // namespace
}  // namespace ibp
