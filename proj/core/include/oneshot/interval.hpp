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

#ifndef ONESHOT_INTERVAL_HPP_
#define ONESHOT_INTERVAL_HPP_

#include <vector>

#include "oneshot/adversary.hpp"
#include "oneshot/lipschitz.hpp"
#include "oneshot/metric.hpp"

namespace oneshot {

// Closed-form optimum on the continuous interval [0,1]: sample uniformly
// from [c, 1-c] with c = 2 - sqrt(3); worst-case error 1 - sqrt(3)/2.
struct IntervalSolution {
  double c = 0.0;
  double support_lo = 0.0;
  double support_hi = 0.0;
  double value = 0.0;
  double b_star = 0.0;  // location parameter of the worst two-segment input
};

IntervalSolution optimal_interval();

// The two-segment family f_b(x) = 1/2 + b^2 - b - |b - x|; mean zero over
// [0,1] for every b.
double two_segment_value(double b, double x);

// Expected error of uniform-[c,1-c] sampling against f_b, closed form.
// Requires 0 <= b <= 1 and 0 < c < 1/2; b > 1/2 is mirrored to 1-b.
double family_error(double b, double c);

struct WorstB {
  double b = 0.0;
  double value = 0.0;
};

// Global maximizer of family_error(., c) over [0, 1/2]: coarse 1e-3 scan,
// ternary refinement to 1e-10, plus boundary checks at {0, c, 1/2}.
WorstB worst_b(double c);

// Expected error of the two-function lower-bound distribution (f_b and its
// mirror, each with probability 1/2) against a deterministic sample at x,
// with b = (sqrt(3)-1)/2.
double yao_curve(double x);

struct ClosenessResult {
  double x = 0.0;  // sample coordinate
  double y = 0.0;  // reference value
  double value = 0.0;
};

// min over grid points x and reference y of the average of |f(x) - y| over
// the set; for fixed x the optimal y is the median of the values there.
// Functions must be mean-zero within 1e-9 on the shared grid.
ClosenessResult closeness(const std::vector<double>& grid,
                          const std::vector<DiscreteFunction>& fs);

// Uniform grid_n-point discretization of [0,1].
LineMetric uniform_grid(int grid_n);

// Cell probabilities of the uniform density on [lo, hi] over that grid.
SamplingDistribution discretize_uniform_density(double lo, double hi,
                                                int grid_n);

// Point mass at the grid point nearest to x.
SamplingDistribution grid_point_mass(double x, int grid_n);

struct NumericAdversaryOptions {
  double gamma = 0.01;       // snapped to divide the grid step
  int exact_cap = 12;        // use the exact oracle up to this size
  LineDpOptions dp;
};

// Worst-case error of a discrete distribution on the uniform grid against
// discrete Lipschitz functions; validates the continuous closed form
// numerically. Converges to the continuous value as grid_n grows.
double numeric_interval_adversary(const SamplingDistribution& p, int grid_n,
                                  const NumericAdversaryOptions& options = {});

}  // namespace oneshot

#endif  // ONESHOT_INTERVAL_HPP_
