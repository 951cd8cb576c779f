#include <benchmark/benchmark.h>

#include <random>

#include "dlinucb/dlinucb.hpp"

using namespace dlinucb;

namespace {

std::vector<Arm> pool(std::size_t n, std::size_t d, Rng& rng) {
  std::vector<Arm> out;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<double> x(d);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (double& e : x) e = u(rng) / std::sqrt(static_cast<double>(d));
    out.push_back({static_cast<ArmId>(k), Vector(std::move(x))});
  }
  return out;
}

}  // namespace

static void BM_SlaveAbsorb(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  const auto arms = pool(64, d, rng);
  SlaveModel m(d, 0.1, 0);
  std::size_t i = 0;
  for (auto _ : state) {
    m.absorb(arms[i++ % arms.size()].x, 0.5);
    benchmark::DoNotOptimize(m.theta_hat());
  }
}
BENCHMARK(BM_SlaveAbsorb)->Arg(5)->Arg(10)->Arg(25)->Arg(50);

static void BM_SlaveSelectArm(benchmark::State& state) {
  const std::size_t d = 10;
  Rng rng(2);
  const auto arms = pool(static_cast<std::size_t>(state.range(0)), d, rng);
  SlaveModel m(d, 0.1, 0);
  for (std::size_t i = 0; i < 200; ++i) m.absorb(arms[i % arms.size()].x, 0.3);
  const auto noise = NoiseSpec::make(0.05, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(m.select_arm(arms, noise));
}
BENCHMARK(BM_SlaveSelectArm)->Arg(10)->Arg(100);

static void BM_MasterObserve(benchmark::State& state) {
  Hyperparams h;
  Rng rng(3);
  const auto arms = pool(10, h.dim, rng);
  MasterPolicy master(h);
  std::normal_distribution<double> noise(0.0, h.sigma);
  for (auto _ : state) {
    const auto choice = master.choose_arm(arms);
    const Vector& x = arms[choice.arm].x;
    benchmark::DoNotOptimize(master.observe(x, 0.4 + noise(rng)));
  }
  state.counters["slaves"] = static_cast<double>(master.size());
}
BENCHMARK(BM_MasterObserve);

static void BM_FullRun(benchmark::State& state) {
  RunConfig cfg;
  cfg.env.horizon = static_cast<std::size_t>(state.range(0));
  cfg.n_seeds = 1;
  cfg.agents = {AgentSpec{}};
  for (auto _ : state) benchmark::DoNotOptimize(run_seed(cfg, 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FullRun)->Arg(5000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
