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

#include "oneshot/error.hpp"
#include "oneshot/lipschitz.hpp"
#include "oneshot/metric.hpp"

using namespace oneshot;

namespace {

MetricSpace two_points(double d) {
  return validate_metric({{0, d}, {d, 0}});
}

// Random 1-Lipschitz function: a weighted combination of distance cones,
// with total weight at most 1.
DiscreteFunction random_lipschitz(const MetricSpace& space,
                                  std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  double w1 = uniform(rng), w2 = uniform(rng);
  const double total = std::abs(w1) + std::abs(w2);
  if (total > 1.0) {
    w1 /= total;
    w2 /= total;
  }
  const int a = static_cast<int>(rng() % space.n);
  const int b = static_cast<int>(rng() % space.n);
  DiscreteFunction f;
  f.values.resize(space.n);
  for (int x = 0; x < space.n; ++x) {
    f.values[x] = w1 * space.d(a, x) + w2 * space.d(b, x);
  }
  return f;
}

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

TEST_CASE("average") {
  CHECK(average({{1, 1, 1}}) == 1.0);
  CHECK(average({{-1, 0, 1}}) == 0.0);
  CHECK(average({{0.5, 0, 0.5}}) == doctest::Approx(1.0 / 3));
}

TEST_CASE("is_lipschitz") {
  const MetricSpace line = to_space(make_line({0, 0.5, 1}));
  SUBCASE("distance cones are Lipschitz") {
    for (int o = 0; o < 3; ++o) {
      DiscreteFunction f;
      for (int x = 0; x < 3; ++x) f.values.push_back(line.d(o, x));
      CHECK(is_lipschitz(line, f));
    }
  }
  CHECK_FALSE(is_lipschitz(two_points(0.5), {{0, 1}}));
  CHECK(is_lipschitz(line, {{0.25, 0.25, 0.25}}));
}

TEST_CASE("relaxed_lipschitz_check") {
  const MetricSpace space = two_points(0.5);
  CHECK(relaxed_lipschitz_check(space, {{0, 0.5}},
                                SlackVector::uniform(2, 0.0)));
  CHECK(relaxed_lipschitz_check(space, {{0, 0.6}},
                                SlackVector::uniform(2, 0.05)));
  CHECK_FALSE(relaxed_lipschitz_check(space, {{0, 0.7}},
                                      SlackVector::uniform(2, 0.05)));
}

TEST_CASE("lipschitz_adjust leaves Lipschitz inputs unchanged with zero slack") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    const MetricSpace space = random_cloud(rng, 2 + trial % 6);
    const DiscreteFunction f = random_lipschitz(space, rng);
    const DiscreteFunction repaired =
        lipschitz_adjust(space, f, SlackVector::uniform(space.n, 0.0));
    for (int x = 0; x < space.n; ++x) {
      CHECK(repaired[x] == doctest::Approx(f[x]).epsilon(1e-12));
    }
  }
}

TEST_CASE("lipschitz_adjust two-point repair is the pointwise-minimal one") {
  const MetricSpace space = two_points(0.5);
  const DiscreteFunction f{{0.0, 0.6}};
  const SlackVector s = SlackVector::uniform(2, 0.05);

  // Brute-force oracle over a fine value grid: the coordinatewise minimum
  // of all feasible (Lipschitz, within-slack) pairs.
  double min0 = 1e18, min1 = 1e18;
  for (double f0 = -0.05; f0 <= 0.05 + 1e-12; f0 += 1e-4) {
    for (double f1 = 0.55; f1 <= 0.65 + 1e-12; f1 += 1e-4) {
      if (std::abs(f0 - f1) <= 0.5 + 1e-12) {
        min0 = std::min(min0, f0);
        min1 = std::min(min1, f1);
      }
    }
  }
  CHECK(min0 == doctest::Approx(0.05).epsilon(1e-9));
  CHECK(min1 == doctest::Approx(0.55).epsilon(1e-9));

  const DiscreteFunction repaired = lipschitz_adjust(space, f, s);
  CHECK(repaired[0] == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(repaired[1] == doctest::Approx(0.55).epsilon(1e-12));
  CHECK(is_lipschitz(space, repaired));
}

TEST_CASE("lipschitz_adjust three-point repair stays within slack and is minimal") {
  const MetricSpace space = to_space(make_line({0, 0.5, 1}));
  const DiscreteFunction f{{0.0, 0.55, 1.05}};
  const SlackVector s = SlackVector::uniform(3, 0.05);

  const DiscreteFunction repaired = lipschitz_adjust(space, f, s);
  CHECK(is_lipschitz(space, repaired, 1e-9));
  for (int x = 0; x < 3; ++x) {
    CHECK(std::abs(repaired[x] - f[x]) <= 0.05 + 1e-9);
  }

  // Exhaustive grid over feasible triples: per-point minima (the grid step
  // bounds how sharply we can pin them down).
  double min_v[3] = {1e18, 1e18, 1e18};
  const double step = 1e-3;
  for (double f0 = -0.05; f0 <= 0.05 + 1e-12; f0 += step) {
    for (double f1 = 0.5; f1 <= 0.6 + 1e-12; f1 += step) {
      if (std::abs(f0 - f1) > 0.5 + 1e-12) continue;
      for (double f2 = 1.0; f2 <= 1.1 + 1e-12; f2 += step) {
        if (std::abs(f1 - f2) > 0.5 + 1e-12) continue;
        if (std::abs(f0 - f2) > 1.0 + 1e-12) continue;
        min_v[0] = std::min(min_v[0], f0);
        min_v[1] = std::min(min_v[1], f1);
        min_v[2] = std::min(min_v[2], f2);
      }
    }
  }
  for (int x = 0; x < 3; ++x) {
    CHECK(std::abs(repaired[x] - min_v[x]) <= 2 * step);
  }
}

TEST_CASE("lipschitz_adjust validates its precondition") {
  const MetricSpace space = two_points(0.5);
  try {
    lipschitz_adjust(space, {{0.0, 0.7}}, SlackVector::uniform(2, 0.05));
    FAIL("expected RelaxedConditionViolated");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kRelaxedConditionViolated);
  }
}

TEST_CASE("lipschitz_adjust repairs randomized relaxed inputs") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> slack_dist(0.0, 0.2);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 9);
    const MetricSpace space = random_cloud(rng, n);
    const DiscreteFunction g = random_lipschitz(space, rng);
    SlackVector s;
    DiscreteFunction f = g;
    for (int x = 0; x < n; ++x) {
      s.s.push_back(slack_dist(rng));
      f.values[x] += unit(rng) * s.s[x];
    }
    REQUIRE(relaxed_lipschitz_check(space, f, s));
    const DiscreteFunction repaired = lipschitz_adjust(space, f, s);
    CHECK(is_lipschitz(space, repaired, 1e-9));
    for (int x = 0; x < n; ++x) {
      CHECK(std::abs(repaired[x] - f[x]) <= s.s[x] + 1e-9);
    }
  }
}

TEST_CASE("estimation_error") {
  SUBCASE("constant functions cost nothing") {
    CHECK(estimation_error({{2, 2, 2}}, make_distribution({0.2, 0.5, 0.3})) ==
          0.0);
  }
  SUBCASE("two points at distance 1: every distribution pays 1/2") {
    for (double q : {0.0, 0.25, 0.5, 0.9, 1.0}) {
      CHECK(estimation_error({{-0.5, 0.5}}, make_distribution({q, 1 - q})) ==
            doctest::Approx(0.5));
    }
  }
  SUBCASE("three-point line example, cross-checked directly") {
    const DiscreteFunction f{{1.0 / 6, -1.0 / 3, 1.0 / 6}};
    const SamplingDistribution p = make_distribution({0.25, 0.5, 0.25});
    double direct = 0.0;
    const double avg = (f[0] + f[1] + f[2]) / 3.0;
    for (int x = 0; x < 3; ++x) direct += p.p[x] * std::abs(avg - f[x]);
    CHECK(direct == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(estimation_error(f, p) == doctest::Approx(0.25).epsilon(1e-12));
  }
  SUBCASE("dimension mismatch throws") {
    CHECK_THROWS_AS(estimation_error({{1, 2}}, make_distribution({1.0})),
                    Error);
  }
}

TEST_CASE("error is invariant under shifts, negation and mean-zeroing") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 6);
    const MetricSpace space = random_cloud(rng, n);
    const DiscreteFunction f = random_lipschitz(space, rng);
    std::vector<double> w(n);
    for (double& v : w) v = static_cast<double>(rng() % 100) + 1;
    const SamplingDistribution p = renormalize(std::move(w));

    const double base = estimation_error(f, p);
    DiscreteFunction shifted = f;
    for (double& v : shifted.values) v += 0.37;
    DiscreteFunction negated = f;
    for (double& v : negated.values) v = -v;
    CHECK(estimation_error(shifted, p) == doctest::Approx(base).epsilon(1e-12));
    CHECK(estimation_error(negated, p) == doctest::Approx(base).epsilon(1e-12));
    CHECK(estimation_error(mean_zero(f), p) ==
          doctest::Approx(base).epsilon(1e-12));
    CHECK(base <= 1.0 + 1e-12);  // diameter-1 bound
  }
}

TEST_CASE("mean_zero and flip_about") {
  CHECK(mean_zero({{3, 3, 3}}).values == std::vector<double>{0, 0, 0});
  const DiscreteFunction f{{0.1, -0.4, 0.3}};
  const DiscreteFunction twice = flip_about(flip_about(f, 1), 1);
  for (int x = 0; x < 3; ++x) {
    CHECK(twice[x] == doctest::Approx(f[x]).epsilon(1e-15));
  }
  SUBCASE("flip preserves Lipschitz continuity") {
    const MetricSpace line = to_space(make_line({0, 0.5, 1}));
    DiscreteFunction cone;
    for (int x = 0; x < 3; ++x) cone.values.push_back(line.d(0, x));
    CHECK(is_lipschitz(line, flip_about(cone, 2)));
  }
}

TEST_CASE("distribution validation") {
  CHECK_THROWS_AS(make_distribution({0.5, 0.6}), Error);
  CHECK_THROWS_AS(make_distribution({-0.1, 1.1}), Error);
  CHECK(make_distribution({0.25, 0.5, 0.25}).size() == 3);
}
