// Copyright 2026 The Oneshot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "oneshot/adversary.hpp"
#include "oneshot/interval.hpp"
#include "oneshot/linprog.hpp"
#include "oneshot/metric.hpp"
#include "oneshot/solver.hpp"

namespace {

using namespace oneshot;

MetricSpace make_cloud(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<std::vector<double>> pts(n, std::vector<double>(2));
  for (auto& pt : pts) {
    pt[0] = uniform(rng);
    pt[1] = uniform(rng);
  }
  return normalize_diameter(points_space(pts));
}

SamplingDistribution uniform_p(int n) {
  return renormalize(std::vector<double>(n, 1.0));
}

void BM_LpSolveGame(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<std::vector<double>> rows(n, std::vector<double>(n));
  for (auto& row : rows) {
    for (double& v : row) v = uniform(rng);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_finite_game(rows));
  }
}
BENCHMARK(BM_LpSolveGame)->Arg(4)->Arg(8)->Arg(16);

void BM_ExactOracle(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const MetricSpace space = make_cloud(n, 7);
  const SamplingDistribution p = uniform_p(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_oracle_small(space, p));
  }
}
BENCHMARK(BM_ExactOracle)->Arg(6)->Arg(8)->Arg(10);

void BM_LineDpOracle(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const LineMetric line = uniform_grid(n);
  const SamplingDistribution p = uniform_p(n);
  const LineClassParams params = LineClassParams::from_gamma(0.02, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(line_dp_oracle(line, p, params));
  }
}
BENCHMARK(BM_LineDpOracle)->Arg(11)->Arg(21);

void BM_ConstraintGeneration(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const MetricSpace space = make_cloud(n, 13);
  SolverConfig config;
  config.beta = 3.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(constraint_generation(space, config));
  }
}
BENCHMARK(BM_ConstraintGeneration)->Arg(4)->Arg(6)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
