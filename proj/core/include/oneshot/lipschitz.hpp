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

#ifndef ONESHOT_LIPSCHITZ_HPP_
#define ONESHOT_LIPSCHITZ_HPP_

#include <vector>

#include "oneshot/metric.hpp"

namespace oneshot {

// One real value per point of a metric space.
struct DiscreteFunction {
  std::vector<double> values;

  int size() const { return static_cast<int>(values.size()); }
  double operator[](int i) const { return values[i]; }
};

// Per-point nonnegative slacks for the relaxed Lipschitz condition
// |f(x) - f(y)| <= d(x,y) + s_x + s_y.
struct SlackVector {
  std::vector<double> s;

  static SlackVector uniform(int n, double value);
};

// Probability vector over the points: p_x >= 0, sum p_x = 1 within 1e-12.
struct SamplingDistribution {
  std::vector<double> p;

  int size() const { return static_cast<int>(p.size()); }
};

// Validates and returns the distribution; throws BadInput otherwise.
SamplingDistribution make_distribution(std::vector<double> p);

// Clamps negatives and renormalizes; for cleaning up LP output.
SamplingDistribution renormalize(std::vector<double> p);

double average(const DiscreteFunction& f);

bool is_lipschitz(const MetricSpace& space, const DiscreteFunction& f,
                  double tol = 1e-9);

bool relaxed_lipschitz_check(const MetricSpace& space,
                             const DiscreteFunction& f, const SlackVector& s);

// Turns a function satisfying the relaxed Lipschitz condition into a
// 1-Lipschitz function with |f'(x) - f(x)| <= s_x. The output is the
// pointwise-minimal such function. Validates its precondition (O(n^2)) and
// throws RelaxedConditionViolated when it fails.
DiscreteFunction lipschitz_adjust(const MetricSpace& space,
                                  const DiscreteFunction& f,
                                  const SlackVector& s);

// sum_x p(x) * |Avg(f) - f(x)|, the expected absolute deviation of the
// observed value from the true average.
double estimation_error(const DiscreteFunction& f,
                        const SamplingDistribution& p);

DiscreteFunction mean_zero(const DiscreteFunction& f);

// f reflected about its value at point x: y -> 2 f(x) - f(y).
DiscreteFunction flip_about(const DiscreteFunction& f, int x);

}  // namespace oneshot

#endif  // ONESHOT_LIPSCHITZ_HPP_
