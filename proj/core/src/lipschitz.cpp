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

#include "oneshot/lipschitz.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "oneshot/error.hpp"

namespace oneshot {

namespace {

constexpr double kTieTol = 1e-12;

void check_size(const MetricSpace& space, const DiscreteFunction& f) {
  if (f.size() != space.n) {
    throw Error(Errc::kDimensionMismatch,
                "function length does not match point count");
  }
}

}  // namespace

SlackVector SlackVector::uniform(int n, double value) {
  return SlackVector{std::vector<double>(n, value)};
}

SamplingDistribution make_distribution(std::vector<double> p) {
  double sum = 0.0;
  for (double v : p) {
    if (!std::isfinite(v) || v < 0) {
      throw Error(Errc::kBadInput, "probabilities must be nonnegative");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "probabilities sum to " << sum << ", expected 1";
    throw Error(Errc::kBadInput, os.str());
  }
  return SamplingDistribution{std::move(p)};
}

SamplingDistribution renormalize(std::vector<double> p) {
  double sum = 0.0;
  for (double& v : p) {
    if (v < 0) v = 0;
    sum += v;
  }
  if (sum <= 0) throw Error(Errc::kBadInput, "cannot renormalize zero vector");
  for (double& v : p) v /= sum;
  return SamplingDistribution{std::move(p)};
}

double average(const DiscreteFunction& f) {
  double sum = 0.0;
  for (double v : f.values) sum += v;
  return sum / f.size();
}

bool is_lipschitz(const MetricSpace& space, const DiscreteFunction& f,
                  double tol) {
  check_size(space, f);
  for (int i = 0; i < space.n; ++i) {
    for (int j = i + 1; j < space.n; ++j) {
      if (std::abs(f[i] - f[j]) > space.d(i, j) + tol) return false;
    }
  }
  return true;
}

bool relaxed_lipschitz_check(const MetricSpace& space,
                             const DiscreteFunction& f, const SlackVector& s) {
  check_size(space, f);
  if (static_cast<int>(s.s.size()) != space.n) {
    throw Error(Errc::kDimensionMismatch,
                "slack length does not match point count");
  }
  for (int i = 0; i < space.n; ++i) {
    for (int j = i + 1; j < space.n; ++j) {
      if (std::abs(f[i] - f[j]) > space.d(i, j) + s.s[i] + s.s[j] + kTieTol) {
        return false;
      }
    }
  }
  return true;
}

DiscreteFunction lipschitz_adjust(const MetricSpace& space,
                                  const DiscreteFunction& f,
                                  const SlackVector& s) {
  const int n = space.n;
  check_size(space, f);
  for (double v : s.s) {
    if (v < 0) throw Error(Errc::kBadInput, "slacks must be nonnegative");
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(f[i] - f[j]) > space.d(i, j) + s.s[i] + s.s[j] + kTieTol) {
        std::ostringstream os;
        os << "RelaxedConditionViolated(" << i << "," << j << ")";
        throw Error(Errc::kRelaxedConditionViolated, os.str());
      }
    }
  }

  // Set one point per iteration: among the unset points, pick the one whose
  // forced value max(f(x) - s_x, t_x) is largest, where t_x is the tightest
  // Lipschitz bound from the already-set points. Set values are
  // nonincreasing over iterations, which keeps the partial function
  // Lipschitz; the result is the pointwise-minimal repair.
  std::vector<double> out(n, 0.0);
  std::vector<double> t(n, -std::numeric_limits<double>::infinity());
  std::vector<char> done(n, 0);
  for (int round = 0; round < n; ++round) {
    int pick = -1;
    double pick_value = -std::numeric_limits<double>::infinity();
    for (int x = 0; x < n; ++x) {
      if (done[x]) continue;
      const double candidate = std::max(f[x] - s.s[x], t[x]);
      if (candidate > pick_value + kTieTol) {
        pick = x;
        pick_value = candidate;
      }
    }
    out[pick] = pick_value;
    done[pick] = 1;
    for (int x = 0; x < n; ++x) {
      if (!done[x]) t[x] = std::max(t[x], pick_value - space.d(pick, x));
    }
  }
  return DiscreteFunction{std::move(out)};
}

double estimation_error(const DiscreteFunction& f,
                        const SamplingDistribution& p) {
  if (f.size() != p.size()) {
    throw Error(Errc::kDimensionMismatch,
                "function and distribution lengths differ");
  }
  const double avg = average(f);
  double err = 0.0;
  for (int i = 0; i < f.size(); ++i) err += p.p[i] * std::abs(avg - f[i]);
  return err;
}

DiscreteFunction mean_zero(const DiscreteFunction& f) {
  const double avg = average(f);
  DiscreteFunction out = f;
  for (double& v : out.values) v -= avg;
  return out;
}

DiscreteFunction flip_about(const DiscreteFunction& f, int x) {
  if (x < 0 || x >= f.size()) {
    throw Error(Errc::kBadInput, "flip point out of range");
  }
  DiscreteFunction out = f;
  for (double& v : out.values) v = 2.0 * f[x] - v;
  return out;
}

}  // namespace oneshot
