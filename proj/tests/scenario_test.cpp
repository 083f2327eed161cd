#include "ibp/scenario.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cstring>
#include <numeric>
#include <random>
#include <sstream>

#include "support/instances.hpp"

namespace ibp {
namespace {

std::string uk_like_document(int horizon, int rates) {
  std::ostringstream doc;
  doc << R"({"label": "doc", "horizon": )" << horizon
      << R"(, "rate_of_return": 1.0, "block_count": 2, "wholesale_rates": [)";
  for (int t = 0; t < rates; ++t) doc << (t ? ", " : "") << 0.05 + 0.001 * t;
  doc << R"(], "clusters": [)";
  for (int c = 0; c < 4; ++c) {
    doc << (c ? ", " : "") << R"({"n": 250, "sigma": 0.2, "tau": 0.03, "baseline": [)";
    for (int t = 0; t < horizon; ++t) doc << (t ? ", " : "") << 0.3 + 0.05 * ((t + c) % 7);
    doc << "]}";
  }
  doc << "]}";
  return doc.str();
}

ScenarioConfig load(const std::string& text) {
  std::istringstream in(text);
  return load_scenario(in);
}

TEST(LoadScenario, ValidTwentyFourSlotFourClusters) {
  const auto cfg = load(uk_like_document(24, 24));
  EXPECT_EQ(cfg.horizon, 24);
  EXPECT_EQ(cfg.num_clusters(), 4);
  EXPECT_EQ(cfg.clusters[3].n, 250);
  EXPECT_FALSE(cfg.breakpoint_bounds.has_value());
}

TEST(LoadScenario, SigmaOutOfRangeNamesField) {
  auto text = uk_like_document(24, 24);
  const auto pos = text.find("\"sigma\": 0.2");
  text.replace(pos, 12, "\"sigma\": 1.2");
  try {
    load(text);
    FAIL() << "expected ScenarioError";
  } catch (const ScenarioError& e) {
    EXPECT_EQ(e.field_path(), "clusters[0].sigma");
    EXPECT_NE(std::string(e.what()).find("sigma out of range"), std::string::npos);
  }
}

TEST(LoadScenario, WholesaleLengthMismatch) {
  try {
    load(uk_like_document(24, 23));
    FAIL() << "expected ScenarioError";
  } catch (const ScenarioError& e) {
    EXPECT_EQ(e.field_path(), "wholesale_rates");
    EXPECT_NE(std::string(e.what()).find("length mismatch"), std::string::npos);
  }
}

TEST(LoadScenario, NegativeDemandAndMissingField) {
  auto text = uk_like_document(4, 4);
  const auto pos = text.find("\"baseline\": [");
  text.replace(pos, 13, "\"baseline\": [-");
  EXPECT_THROW(load(text), ScenarioError);
  try {
    load(R"({"horizon": 2, "rate_of_return": 1, "block_count": 2, "clusters": []})");
    FAIL();
  } catch (const ScenarioError& e) {
    EXPECT_EQ(e.field_path(), "wholesale_rates");
  }
  EXPECT_THROW(load("{not json"), ScenarioError);
}

TEST(LoadScenario, SaveRoundTrip) {
  auto cfg = load(uk_like_document(6, 6));
  cfg.breakpoint_bounds = BreakpointBounds{0.1, 2.0};
  std::ostringstream out;
  save_scenario(cfg, out);
  const auto again = load(out.str());
  EXPECT_EQ(again.horizon, cfg.horizon);
  EXPECT_EQ(again.wholesale_rates, cfg.wholesale_rates);
  EXPECT_EQ(again.clusters[2].baseline, cfg.clusters[2].baseline);
  ASSERT_TRUE(again.breakpoint_bounds);
  EXPECT_EQ(again.breakpoint_bounds->upper, 2.0);
}

TEST(FlatPrice, ConstantRate) {
  auto cfg = testing::single_cluster({1.0, 0.4, 0.7}, 0.2, 0.03, 3, 0.05);
  EXPECT_NEAR(flat_price(cfg), 0.05, 1e-15);
  cfg.rate_of_return = 1.1;
  EXPECT_NEAR(flat_price(cfg), 0.055, 1e-15);
}

TEST(FlatPrice, WeightedByDemand) {
  auto cfg = testing::single_cluster({1.0, 1.0}, 0.2, 0.03);
  cfg.wholesale_rates = {0.04, 0.06};
  EXPECT_NEAR(flat_price(cfg), 0.05, 1e-15);
}

TEST(FlatPrice, ZeroDemandIsAnError) {
  auto cfg = testing::single_cluster({0.0, 0.0}, 0.2, 0.03);
  EXPECT_THROW(flat_price(cfg), ScenarioError);
}

TEST(FlatPrice, WithinWholesaleRangeWhenReturnIsOne) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto cfg = testing::random_scenario(seed, {.T = 6, .C = 3});
    const double lo = *std::min_element(cfg.wholesale_rates.begin(), cfg.wholesale_rates.end());
    const double hi = *std::max_element(cfg.wholesale_rates.begin(), cfg.wholesale_rates.end());
    const double price = flat_price(cfg);
    EXPECT_GE(price, lo - 1e-15);
    EXPECT_LE(price, hi + 1e-15);
  }
}

TEST(BlockSplit, Examples) {
  const std::vector<double> one{1.0};
  EXPECT_EQ(baseline_block_split(1.5, one), (std::vector<double>{1.0, 0.5}));
  const std::vector<double> two{0.5, 0.3};
  EXPECT_EQ(baseline_block_split(0.4, two), (std::vector<double>{0.4, 0.0, 0.0}));
  const auto fill = baseline_block_split(1.0, two);
  EXPECT_DOUBLE_EQ(fill[0], 0.5);
  EXPECT_DOUBLE_EQ(fill[1], 0.3);
  EXPECT_NEAR(fill[2], 0.2, 1e-15);
}

TEST(BlockSplit, PreservesTotalAndIsMonotone) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const int blocks = 2 + trial % 4;
    std::vector<double> q(blocks - 1);
    for (auto& v : q) v = 0.05 + u(rng);
    const double d = 3.0 * u(rng);
    const auto split = baseline_block_split(d, q);
    EXPECT_NEAR(std::accumulate(split.begin(), split.end(), 0.0), d, 1e-12);

    const auto more = baseline_block_split(d + 0.5 * u(rng), q);
    double a = 0.0, b = 0.0;
    for (int f = 0; f < blocks; ++f) {
      a += split[f];
      b += more[f];
      EXPECT_GE(b, a - 1e-15);
    }
  }
}

TEST(BlockExcess, MatchesWeightedSplit) {
  const std::vector<double> q{0.5, 0.3};
  EXPECT_NEAR(block_excess(1.0, q), 0.3 + 2 * 0.2, 1e-15);
  EXPECT_EQ(block_excess(0.4, q), 0.0);
}

TEST(DefaultBounds, MinMaxAndOverride) {
  ScenarioConfig cfg = testing::single_cluster({0.2, 0.5}, 0.1, 0.03);
  cfg.clusters.push_back(cfg.clusters[0]);
  cfg.clusters[1].baseline = {1.3, 0.5};
  auto b = default_breakpoint_bounds(cfg);
  EXPECT_EQ(b.lower, 0.2);
  EXPECT_EQ(b.upper, 1.3);

  const auto flat = testing::single_cluster({0.7, 0.7, 0.7}, 0.1, 0.03);
  b = default_breakpoint_bounds(flat);
  EXPECT_EQ(b.lower, 0.7);
  EXPECT_EQ(b.upper, 0.7);

  cfg.breakpoint_bounds = BreakpointBounds{0.1, 2.0};
  b = default_breakpoint_bounds(cfg);
  EXPECT_EQ(b.lower, 0.1);
  EXPECT_EQ(b.upper, 2.0);
}

TEST(Derive, BaselineParAndTotals) {
  EXPECT_DOUBLE_EQ(derive(testing::single_cluster({1, 1, 1, 1}, 0.1, 0.03)).baseline_par, 1.0);
  EXPECT_DOUBLE_EQ(derive(testing::single_cluster({2, 1, 1}, 0.1, 0.03)).baseline_par, 1.5);
  EXPECT_EQ(derive(testing::single_cluster({1, 1}, 0.1, 0.03, 2)).total_demand, 4.0);
}

TEST(Derive, IsPureAndParAtLeastOne) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto cfg = testing::random_scenario(seed, {.T = 8, .C = 3});
    const auto a = derive(cfg);
    const auto b = derive(cfg);
    EXPECT_EQ(std::memcmp(&a, &b, sizeof(a)), 0);
    EXPECT_GE(a.baseline_par, 1.0);
    double total = 0.0;
    for (const auto& cl : cfg.clusters) {
      for (double d : cl.baseline) total += cl.n * d;
    }
    EXPECT_EQ(a.total_demand, total);
  }
}

}  // namespace
}  // namespace ibp
