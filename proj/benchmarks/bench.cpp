#include <benchmark/benchmark.h>

#include <sstream>

#include "ibp/bb_solver.hpp"
#include "ibp/milp_model.hpp"
#include "ibp/response.hpp"
#include "ibp/search.hpp"

namespace {

const ibp::ScenarioConfig& scenario() {
  static const auto cfg = ibp::load_scenario_file(IBP_DATA_DIR "/uk_like.json");
  return cfg;
}

ibp::PriceStructure prices(int F) {
  const auto b = ibp::default_breakpoint_bounds(scenario());
  ibp::PriceStructure p{0.08, 0.03, {}};
  for (int f = 1; f < F; ++f) p.breakpoints.push_back(b.lower + (b.upper - b.lower) * f / F);
  return p;
}

void BM_SolveResponse(benchmark::State& state) {
  auto cfg = scenario();
  cfg.block_count = static_cast<int>(state.range(0));
  const auto p = prices(cfg.block_count);
  for (auto _ : state) benchmark::DoNotOptimize(ibp::solve_response(cfg, p));
}
BENCHMARK(BM_SolveResponse)->Arg(2)->Arg(3);

void BM_BuildMilp(benchmark::State& state) {
  auto cfg = scenario();
  cfg.block_count = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ibp::build_milp(cfg, 0.03, ibp::compute_big_m(cfg, 0.03)));
  }
}
BENCHMARK(BM_BuildMilp)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_ExportMps(benchmark::State& state) {
  const auto model = ibp::build_milp(scenario(), 0.03, ibp::compute_big_m(scenario(), 0.03));
  for (auto _ : state) {
    std::ostringstream out;
    ibp::export_mps(model, out);
    benchmark::DoNotOptimize(out.str().size());
  }
}
BENCHMARK(BM_ExportMps)->Unit(benchmark::kMillisecond);

void BM_RootRelaxation(benchmark::State& state) {
  auto cfg = scenario();
  const int T = static_cast<int>(state.range(0));
  cfg.horizon = T;
  cfg.wholesale_rates.resize(T);
  for (auto& cl : cfg.clusters) cl.baseline.resize(T);
  const auto model = ibp::build_milp(cfg, 0.03, ibp::compute_big_m(cfg, 0.03));
  for (auto _ : state) benchmark::DoNotOptimize(ibp::solve_lp_relaxation(model));
}
BENCHMARK(BM_RootRelaxation)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_LowerBound(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ibp::lower_bound(scenario()));
}
BENCHMARK(BM_LowerBound)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
