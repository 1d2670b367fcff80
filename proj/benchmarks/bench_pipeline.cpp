// Microbenchmarks for the pipeline stages that dominate a simulation run:
// the stepwise path, CV quadratic assembly, selection + event construction,
// the line slice, and the truncated-chi test itself.

#include <cstdint>
#include <optional>

#include <benchmark/benchmark.h>

#include "cvinfer/cross_validation.hpp"
#include "cvinfer/rng.hpp"
#include "cvinfer/selective_test.hpp"
#include "cvinfer/simulate.hpp"
#include "cvinfer/stepwise.hpp"

namespace {

using namespace cvinfer;

struct Problem {
  Matrix x;
  Vector y;
  FoldAssignment folds;
};

Problem make_problem(int n, int p, int k, std::uint64_t seed) {
  CounterRng rng(seed);
  Problem pr;
  pr.x.resize(n, p);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) pr.x(i, j) = rng.standard_normal();
  }
  pr.y.resize(n);
  for (int i = 0; i < n; ++i) pr.y(i) = rng.standard_normal();
  // Plant two moderate signals so the selected size is not always trivial.
  pr.y += 2.0 * pr.x.col(0) - 2.0 * pr.x.col(3);
  pr.folds = FoldAssignment::shuffled(n, k, seed ^ 0x5u);
  return pr;
}

void bm_fit_stepwise(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int p = static_cast<int>(state.range(1));
  const int steps = static_cast<int>(state.range(2));
  const Problem pr = make_problem(n, p, 5, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_stepwise(pr.x, pr.y, steps));
  }
}
BENCHMARK(bm_fit_stepwise)
    ->Args({50, 20, 8})
    ->Args({100, 50, 8})
    ->Args({200, 100, 10});

void bm_assemble_cv(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int p = static_cast<int>(state.range(1));
  const Problem pr = make_problem(n, p, 5, 12);
  const CvOptions options;
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble_cv(pr.x, pr.y, pr.folds, 8, options));
  }
}
BENCHMARK(bm_assemble_cv)->Args({50, 20})->Args({100, 50});

void bm_select_sparsity(benchmark::State& state) {
  const Problem pr = make_problem(50, 20, 5, 13);
  const CvOptions options;
  const CvQuadratic cvq = assemble_cv(pr.x, pr.y, pr.folds, 8, options);
  for (auto _ : state) {
    benchmark::DoNotOptimize(select_sparsity(cvq, pr.y, options));
  }
}
BENCHMARK(bm_select_sparsity);

void bm_event_slice(benchmark::State& state) {
  const Problem pr = make_problem(50, 20, 5, 14);
  const CvOptions options;
  const CvQuadratic cvq = assemble_cv(pr.x, pr.y, pr.folds, 8, options);
  const CvSelection sel = select_sparsity(cvq, pr.y, options);
  CounterRng rng(15);
  Vector dir(pr.folds.n);
  for (int i = 0; i < pr.folds.n; ++i) dir(i) = rng.standard_normal();
  dir.normalize();
  for (auto _ : state) {
    benchmark::DoNotOptimize(sel.event.slice(pr.y, dir));
  }
}
BENCHMARK(bm_event_slice);

void bm_selective_test(benchmark::State& state) {
  const Problem pr = make_problem(50, 20, 5, 16);
  const CvOptions options;
  const CvQuadratic cvq = assemble_cv(pr.x, pr.y, pr.folds, 8, options);
  const CvSelection sel = select_sparsity(cvq, pr.y, options);
  const int j = sel.active_set.front();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        selective_test(pr.x, pr.y, sel, j, std::optional<double>(1.0)));
  }
}
BENCHMARK(bm_selective_test);

void bm_full_replication(benchmark::State& state) {
  SimConfig cfg;
  cfg.n = 50;
  cfg.p = 20;
  cfg.k = 5;
  cfg.steps = 8;
  cfg.sigma = 1.0;
  cfg.replications = 1;
  cfg.seed = 17;
  const ReplicationData data = generate_replication(cfg, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_replication(cfg, data, 0));
  }
}
BENCHMARK(bm_full_replication);

}  // namespace

BENCHMARK_MAIN();
