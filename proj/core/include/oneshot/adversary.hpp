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

#ifndef ONESHOT_ADVERSARY_HPP_
#define ONESHOT_ADVERSARY_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "oneshot/lipschitz.hpp"
#include "oneshot/metric.hpp"

namespace oneshot {

// What the reported worst-case value certifies. kExact means the true
// maximum over all 1-Lipschitz functions; kClassExact means the maximum over
// a finite class that delta-approximates them.
struct OracleGuarantee {
  enum class Kind { kExact, kClassExact, kHeuristic };
  Kind kind = Kind::kExact;
  double delta = 0.0;  // only meaningful for kClassExact

  std::string str() const;
};

// A (near-)worst-case function for a given sampling distribution. Witnesses
// are stored mean-zero; `value` always equals estimation_error(witness, p).
struct OracleReport {
  DiscreteFunction witness;
  double value = 0.0;
  OracleGuarantee guarantee;
};

struct ExactOracleOptions {
  int max_points = 12;  // 2^n sign patterns; reject larger instances
};

// Exact separation: maximizes the estimation error over all 1-Lipschitz
// functions by enumerating sign patterns and solving one LP per pattern,
// with the gauge f(median) = 0. Throws InstanceTooLarge past the cap.
OracleReport exact_oracle_small(const MetricSpace& space,
                                const SamplingDistribution& p,
                                const ExactOracleOptions& options = {});

// Parameters of the discretized function class on a line: values are
// multiples of gamma, adjacent steps are window-limited, and the value sum
// is capped at sum_cap = n * gamma.
struct LineClassParams {
  double gamma = 0.0;
  double delta = 0.0;
  double sum_cap = 0.0;

  // The class built from a target approximation delta: gamma = delta/(144 n).
  static LineClassParams from_delta(double delta, int n);
  // Practical mode: explicit gamma; reports back the implied delta = 144 n
  // gamma.
  static LineClassParams from_gamma(double gamma, int n);
};

struct LineDpOptions {
  std::size_t max_states = 60'000'000;  // sparse DP cell cap
};

// Dynamic-programming separation over the discretized line class. The
// witness is re-centered to mean zero and the value recomputed from it.
// Throws GridTooFine when the DP state count exceeds the cap (raise gamma).
OracleReport line_dp_oracle(const LineMetric& line,
                            const SamplingDistribution& p,
                            const LineClassParams& params,
                            const LineDpOptions& options = {});

// True when f's values are multiples of gamma (up to re-centering), adjacent
// steps fit the class windows, and the value sum is within sum_cap.
bool line_class_check(const LineMetric& line, const DiscreteFunction& f,
                      const LineClassParams& params, double tol = 1e-9);

// Ring-by-ring greedy ball cover of a doubling metric space. Ring i has
// scale 2^-i; the innermost region (all points within 2m of the median) has
// scale m. Ball j is a point set of diameter <= 2 * gamma * scale.
struct GridBall {
  int ring = 0;            // 1..k for rings, k+1 for the inner region
  int representative = 0;  // point index; the median's ball is led by it
  std::vector<int> points;
};

struct GridStructure {
  int num_regions = 0;  // k + 1
  double gamma = 0.0;
  double delta = 0.0;  // target approximation this grid was built for
  int median = 0;
  std::vector<double> region_scale;  // indexed 1..k+1 (entry 0 unused)
  std::vector<int> region_of;        // per point
  std::vector<GridBall> balls;
  std::vector<int> ball_of;  // per point, index into balls
};

// Builds the ring/ball cover. Default gamma = delta / (48 * 6^beta + 6);
// an explicit override reports the implied delta back in the structure.
GridStructure build_grid(const MetricSpace& space, double beta, double delta,
                         std::optional<double> gamma_override = {});

struct EnumOptions {
  std::uint64_t max_enumeration = 10'000'000;
};

// Exhaustive separation over the grid class: representative values are
// multiples of gamma * scale, bounded through the relaxed Lipschitz
// condition against the median (whose value is fixed to 0), and extended
// constant on each ball. Throws ClassTooLarge past the cap.
OracleReport doubling_enum_oracle(const MetricSpace& space,
                                  const GridStructure& grid,
                                  const SamplingDistribution& p,
                                  const EnumOptions& options = {});

// Repairs a grid-class function into a 1-Lipschitz one: representative
// values via lipschitz_adjust with slacks gamma * scale, remaining points
// set to the midpoint of the upper/lower Lipschitz envelopes over the
// representatives. Per-point deviation <= 3 * gamma * scale(point).
// Throws NotInClass when f is not constant on balls or fails the relaxed
// condition.
DiscreteFunction qdelta_to_lipschitz(const MetricSpace& space,
                                     const DiscreteFunction& f,
                                     const GridStructure& grid);

// True when f is constant on every ball (within tol) and the representative
// values satisfy the relaxed condition with slacks gamma * scale.
bool grid_class_check(const MetricSpace& space, const GridStructure& grid,
                      const DiscreteFunction& f, double tol = 1e-9);

}  // namespace oneshot

#endif  // ONESHOT_ADVERSARY_HPP_
