#include <benchmark/benchmark.h>

#include <optional>
#include <random>
#include <vector>

#include "pmlab/sim/simulator.hpp"
#include "pmlab/stats/kernel_regression.hpp"
#include "pmlab/stats/ks_test.hpp"
#include "pmlab/stats/subsample.hpp"

using namespace pmlab;

static void BM_nw_predict(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> x;
  std::vector<double> y;
  for (int i = 0; i < n; ++i) {
    for (int m = 0; m < 4; ++m) x.push_back(unit(rng));
    y.push_back(rng() & 1 ? 1.0 : 0.0);
  }
  const stats::NwModel model = stats::NwModel::fit(std::move(x), std::move(y), 4);
  const std::vector<double> query{0.4, 0.6, 0.2, 0.8};
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.predict(query));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_nw_predict)->Arg(1000)->Arg(10000);

static void BM_ks_statistic(benchmark::State& state) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<std::vector<double>> samples(3);
  for (auto& s : samples) {
    for (int i = 0; i < static_cast<int>(state.range(0)); ++i) s.push_back(normal(rng));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(stats::ks_k_sample_statistic(samples));
  }
}
BENCHMARK(BM_ks_statistic)->Arg(200)->Arg(2000);

static void BM_subsample_mean(benchmark::State& state) {
  std::mt19937_64 gen(9);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> days(365);
  for (double& v : days) v = normal(gen);
  const stats::BlockEstimator mean = [&days](std::span<const int> idx) -> std::optional<double> {
    double sum = 0.0;
    for (int d : idx) sum += days[d];
    return sum / static_cast<double>(idx.size());
  };
  for (auto _ : state) {
    std::mt19937_64 rng(11);
    const stats::SubsampleResult res = stats::subsample(365, mean, 90, 500, rng);
    benchmark::DoNotOptimize(res.norms.back());
  }
}
BENCHMARK(BM_subsample_mean);

static void BM_simulation_run(benchmark::State& state) {
  sim::SimConfig config;
  config.contracts = 2;
  config.true_state_prob = {0.5, 0.5};
  config.n_informed = 50;
  config.n_noise = 50;
  config.belief = sim::ScalarDist::parse("beta:2,2");
  config.hazard = 20.0;
  config.order_size = sim::SizeDist::parse("uniform_int:1,4");
  config.noise_side = sim::NoiseSideRule::parse("mix:0.5");
  config.noise_band_lo = 30;
  config.noise_band_hi = 70;
  config.exec_prob = sim::ExecProbSpec::parse("logistic:2,0,-14,0");
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const sim::SimResult result = sim::run_simulation(config, ++seed);
    benchmark::DoNotOptimize(result.events.size());
  }
}
BENCHMARK(BM_simulation_run);

BENCHMARK_MAIN();
