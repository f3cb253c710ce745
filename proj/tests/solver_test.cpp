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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "oneshot/adversary.hpp"
#include "oneshot/error.hpp"
#include "oneshot/metric.hpp"
#include "oneshot/solver.hpp"

using namespace oneshot;

namespace {

const MetricSpace kLine3 = to_space(make_line({0, 0.5, 1}));

MetricSpace random_cloud(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<std::vector<double>> pts(n, std::vector<double>(2));
  for (auto& pt : pts) {
    pt[0] = uniform(rng);
    pt[1] = uniform(rng);
  }
  return normalize_diameter(points_space(pts));
}

}  // namespace

TEST_CASE("solve_finite_game: single row plays the argmin point") {
  const GameSolution game = solve_finite_game({{0.3, 0.7}});
  CHECK(game.value == doctest::Approx(0.3).epsilon(1e-9));
  CHECK(game.p.p[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::abs(game.p.p[1]) <= 1e-6);
}

TEST_CASE("solve_finite_game: symmetric 2x2 game") {
  const GameSolution game = solve_finite_game({{1, 0}, {0, 1}});
  CHECK(game.value == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(game.p.p[0] == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(game.p.p[1] == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("solve_finite_game selects the minimum-norm optimal distribution") {
  // Error rows of the two worst-case shapes on the uniform three-point
  // line. The optimal face is a whole segment; the canonical answer is its
  // minimum-norm point (1/4, 1/2, 1/4).
  const std::vector<std::vector<double>> rows = {
      {1.0 / 6, 1.0 / 3, 1.0 / 6}, {0.5, 0.0, 0.5}};

  // Brute-force oracle: scan the simplex for the game value, then for the
  // minimum-norm point among near-optimal distributions.
  double best_value = 1e18;
  for (double p0 = 0; p0 <= 1.0 + 1e-12; p0 += 1e-3) {
    for (double p1 = 0; p1 + p0 <= 1.0 + 1e-12; p1 += 1e-3) {
      const double p2 = 1.0 - p0 - p1;
      const double payoff =
          std::max(rows[0][0] * p0 + rows[0][1] * p1 + rows[0][2] * p2,
                   rows[1][0] * p0 + rows[1][1] * p1 + rows[1][2] * p2);
      best_value = std::min(best_value, payoff);
    }
  }
  CHECK(best_value == doctest::Approx(0.25).epsilon(1e-6));

  double best_norm = 1e18;
  double best_p[3] = {0, 0, 0};
  for (double p0 = 0; p0 <= 1.0 + 1e-12; p0 += 1e-3) {
    for (double p1 = 0; p1 + p0 <= 1.0 + 1e-12; p1 += 1e-3) {
      const double p2 = 1.0 - p0 - p1;
      const double payoff =
          std::max(rows[0][0] * p0 + rows[0][1] * p1 + rows[0][2] * p2,
                   rows[1][0] * p0 + rows[1][1] * p1 + rows[1][2] * p2);
      if (payoff > best_value + 1e-6) continue;
      const double norm = p0 * p0 + p1 * p1 + p2 * p2;
      if (norm < best_norm) {
        best_norm = norm;
        best_p[0] = p0;
        best_p[1] = p1;
        best_p[2] = p2;
      }
    }
  }
  CHECK(best_p[0] == doctest::Approx(0.25).epsilon(1e-2));
  CHECK(best_p[1] == doctest::Approx(0.5).epsilon(1e-2));

  const GameSolution game = solve_finite_game(rows);
  CHECK(game.value == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(game.p.p[0] == doctest::Approx(0.25).epsilon(1e-6));
  CHECK(game.p.p[1] == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(game.p.p[2] == doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("solve_finite_game rejects an empty constraint set") {
  CHECK_THROWS_AS(solve_finite_game({}), Error);
}

TEST_CASE("deterministic baseline") {
  const Baseline line = deterministic_baseline(kLine3);
  CHECK(line.point == 1);
  CHECK(line.worst_error == doctest::Approx(1.0 / 3));
  const Baseline pair =
      deterministic_baseline(validate_metric({{0, 1}, {1, 0}}));
  CHECK(pair.point == 0);
  CHECK(pair.worst_error == doctest::Approx(0.5));
}

TEST_CASE("constraint generation on two points converges immediately") {
  const MetricSpace space = validate_metric({{0, 1}, {1, 0}});
  SolverConfig config;
  const SolveResult result = constraint_generation(space, config);
  CHECK(result.converged);
  CHECK(result.iterations <= 3);
  CHECK(result.upper == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("constraint generation solves the uniform three-point line") {
  SolverConfig config;
  const SolveResult result = constraint_generation(kLine3, config);
  CHECK(result.converged);
  CHECK(result.upper == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(result.p.p[0] == doctest::Approx(0.25).epsilon(1e-6));
  CHECK(result.p.p[1] == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(result.p.p[2] == doctest::Approx(0.25).epsilon(1e-6));
  CHECK(result.lower_bound == doctest::Approx((1.0 / 3) / 24).epsilon(1e-12));
  CHECK(result.lipschitz_upper == result.upper);

  // Exact-oracle fixed point: re-running the oracle at the returned p
  // reproduces the certified upper bound.
  const OracleReport re = exact_oracle_small(kLine3, result.p);
  CHECK(re.value == doctest::Approx(result.upper).epsilon(1e-9));
}

TEST_CASE("constraint generation with the line DP oracle") {
  SolverConfig config;
  config.oracle = OracleChoice::kLineDp;
  config.gamma_override = 0.02;
  const SolveResult result = constraint_generation(kLine3, config);
  CHECK(result.converged);
  const double gamma = 0.02;
  const double delta_implied = 144.0 * 3 * gamma;
  CHECK(result.upper >= 0.25 - 6 * gamma * 3);
  CHECK(result.upper <= 0.25 * (1 + 2 * delta_implied));
  CHECK(result.guarantee.kind == OracleGuarantee::Kind::kClassExact);
  CHECK(result.lipschitz_upper ==
        doctest::Approx(result.upper * (1 + 2 * delta_implied)));
}

TEST_CASE("restricted game values are nondecreasing and sandwiched") {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 4);
    const MetricSpace space = random_cloud(rng, n);
    SolverConfig config;
    config.beta = 3.0;  // safe doubling dimension for planar clouds
    const SolveResult result = constraint_generation(space, config);
    CHECK(result.converged);
    for (std::size_t i = 1; i < result.restricted_history.size(); ++i) {
      CHECK(result.restricted_history[i] >=
            result.restricted_history[i - 1] - 1e-9);
    }
    CHECK(result.upper >=
          result.restricted_history.back() - 1e-9);

    const Baseline baseline = deterministic_baseline(space);
    CHECK(result.lower_bound <= result.upper + 1e-9);
    CHECK(result.upper <= baseline.worst_error + 1e-9);

    // The distribution is on the simplex.
    double sum = 0.0;
    for (double v : result.p.p) {
      CHECK(v >= -1e-12);
      sum += v;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("iteration cap returns best-so-far without convergence") {
  SolverConfig config;
  config.max_iters = 1;
  const SolveResult result = constraint_generation(kLine3, config);
  CHECK_FALSE(result.converged);
  CHECK(result.iterations == 1);
  CHECK(result.p.size() == 3);
  CHECK(result.upper > result.restricted_value);
}
