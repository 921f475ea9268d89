#include <benchmark/benchmark.h>

#include "crossfire/agent.hpp"
#include "crossfire/fis_tables.hpp"
#include "crossfire/network_sim.hpp"
#include "crossfire/traffic_model.hpp"

using namespace crossfire;

static void BM_GreenFis(benchmark::State& state) {
  const auto fis = tables::default_green_fis();
  double v = 0.0;
  for (auto _ : state) {
    v = v + 37.0 > 3500.0 ? 0.0 : v + 37.0;
    benchmark::DoNotOptimize(fis.evaluate({{"v_ns", v}, {"v_we", 3500 - v}}));
  }
}
BENCHMARK(BM_GreenFis);

static void BM_WeightFis(benchmark::State& state) {
  const auto fis = tables::default_weight_fis();
  for (auto _ : state) {
    benchmark::DoNotOptimize(fis.evaluate({{"own_green", 40.0}, {"neighbor_green", 65.0}, {"volume", 2100.0}}));
  }
}
BENCHMARK(BM_WeightFis);

static void BM_HcmDelay(benchmark::State& state) {
  double x = 0.0;
  for (auto _ : state) {
    x = x > 1.0 ? 0.0 : x + 0.001;
    benchmark::DoNotOptimize(traffic::hcm_delay(100.0, 0.5, x));
  }
}
BENCHMARK(BM_HcmDelay);

static void BM_CycleStep(benchmark::State& state) {
  sim::SimConfig cfg;
  cfg.horizon = 1;
  const auto kind = static_cast<agent::ControllerKind>(state.range(0));
  sim::Network net(cfg, {{kind}}, sim::default_models(cfg));
  for (auto _ : state) benchmark::DoNotOptimize(net.step_cycle());
  state.SetLabel(std::string(agent::short_name(kind)));
}
BENCHMARK(BM_CycleStep)->DenseRange(0, 4);

static void BM_FullRun(benchmark::State& state) {
  sim::SimConfig cfg;
  const auto models = sim::default_models(cfg);
  for (auto _ : state) benchmark::DoNotOptimize(sim::run(cfg, {{agent::ControllerKind::game_fql}}, models));
}
BENCHMARK(BM_FullRun)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
