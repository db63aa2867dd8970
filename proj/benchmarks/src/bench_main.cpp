#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "byzsgd/clock.hpp"
#include "byzsgd/engine.hpp"
#include "byzsgd/filters.hpp"
#include "byzsgd/model.hpp"

using namespace byzsgd;

namespace {

ParamVector random_param(std::size_t d, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ParamVector v(static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = gauss(rng);
  return v;
}

std::vector<Response> random_responses(std::size_t n, std::size_t d, Rng& rng) {
  std::vector<Response> out;
  for (std::size_t j = 1; j < n; ++j) out.push_back({j, random_param(d, rng)});
  return out;
}

// args: N, d
void BM_FilterClosest(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto d = static_cast<std::size_t>(state.range(1));
  Rng rng = make_stream(1, 1);
  const ParamVector own = random_param(d, rng);
  const auto shared = random_responses(n, d, rng);
  for (auto _ : state) benchmark::DoNotOptimize(filter_closest(own, shared, n, n / 4));
}
BENCHMARK(BM_FilterClosest)->Args({10, 10})->Args({50, 7850})->Args({100, 7850});

void BM_KrumSelect(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto d = static_cast<std::size_t>(state.range(1));
  Rng rng = make_stream(1, 1);
  auto pool = random_responses(n + 1, d, rng);
  for (std::size_t j = 0; j < pool.size(); ++j) pool[j].id = j;
  for (auto _ : state) benchmark::DoNotOptimize(krum_select(pool, n, n / 4));
}
BENCHMARK(BM_KrumSelect)->Args({10, 10})->Args({50, 7850});

// args: batch size
void BM_SoftmaxGradient(benchmark::State& state) {
  constexpr std::size_t rows = 600;
  Rng rng = make_stream(2, 1);
  std::uniform_real_distribution<double> pixel(0.0, 1.0);
  std::uniform_int_distribution<int> label(0, 9);
  Dataset data;
  data.num_classes = 10;
  data.features.resize(rows, 784);
  data.labels.resize(rows);
  for (Eigen::Index r = 0; r < data.features.rows(); ++r) {
    for (Eigen::Index c = 0; c < data.features.cols(); ++c) data.features(r, c) = pixel(rng);
    data.labels[static_cast<std::size_t>(r)] = label(rng);
  }
  const auto model = LossModel::softmax(784, 10);
  const Shard shard = Shard::whole(data);
  const ParamVector w = random_param(model.dimension(), rng);
  const MiniBatch batch = sample_minibatch(rows, static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(model.gradient(w, batch, shard));
}
BENCHMARK(BM_SoftmaxGradient)->Arg(1)->Arg(32)->Arg(128);

void BM_ClockTick(benchmark::State& state) {
  MasterClock clock(50, 3);
  for (auto _ : state) benchmark::DoNotOptimize(clock.next_tick());
}
BENCHMARK(BM_ClockTick);

// One quadratic run of the given filter; reports ticks per second.
void BM_QuadraticRun(benchmark::State& state) {
  ExperimentConfig c;
  c.problem = ProblemKind::kQuadratic;
  c.dimension = 10;
  c.n = 10;
  c.p_true = 3;
  c.p_assumed = 3;
  c.m = 1000;
  c.eta = 0.05;
  c.ticks = 2000;
  c.filter = static_cast<FilterKind>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(c));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * *c.ticks));
  state.SetLabel(std::string(to_string(c.filter)));
}
BENCHMARK(BM_QuadraticRun)
    ->Arg(static_cast<int>(FilterKind::kAlg1))
    ->Arg(static_cast<int>(FilterKind::kAlg2))
    ->Arg(static_cast<int>(FilterKind::kKrum))
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
