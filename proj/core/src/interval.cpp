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

#include "oneshot/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "oneshot/error.hpp"

namespace oneshot {

IntervalSolution optimal_interval() {
  const double root3 = std::sqrt(3.0);
  IntervalSolution sol;
  sol.c = 2.0 - root3;
  sol.support_lo = sol.c;
  sol.support_hi = root3 - 1.0;
  sol.value = 1.0 - root3 / 2.0;
  sol.b_star = (root3 - 1.0) / 2.0;
  return sol;
}

double two_segment_value(double b, double x) {
  return 0.5 + b * b - b - std::abs(b - x);
}

double family_error(double b, double c) {
  if (!(b >= 0.0 && b <= 1.0)) {
    throw Error(Errc::kDomainError, "b must lie in [0,1]");
  }
  if (!(c > 0.0 && c < 0.5)) {
    throw Error(Errc::kDomainError, "c must lie in (0, 1/2)");
  }
  if (b > 0.5) b = 1.0 - b;  // f_b and f_{1-b} give equal error

  // Exact integral of |f_b| over [c, 1-c]. f_b is piecewise linear with a
  // peak at b and zero crossings at 2b - 1/2 - b^2 and 1/2 + b^2; splitting
  // there leaves constant-sign trapezoids. This reduces to the two familiar
  // case formulas (b^4 + (1/2-c)^2)/(1-2c) and
  // (b^4 - (b-c)^2 + (1/2-c)^2)/(1-2c) while the crossings stay inside the
  // sampling interval.
  const double lo = c;
  const double hi = 1.0 - c;
  std::vector<double> knots{lo, hi};
  for (double t : {b, 2.0 * b - 0.5 - b * b, 0.5 + b * b}) {
    if (t > lo && t < hi) knots.push_back(t);
  }
  std::sort(knots.begin(), knots.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double fu = two_segment_value(b, knots[i]);
    const double fv = two_segment_value(b, knots[i + 1]);
    total += 0.5 * std::abs(fu + fv) * (knots[i + 1] - knots[i]);
  }
  return total / (1.0 - 2.0 * c);
}

WorstB worst_b(double c) {
  if (!(c > 0.0 && c < 0.5)) {
    throw Error(Errc::kDomainError, "c must lie in (0, 1/2)");
  }
  // Unimodality over [0, 1/2] is only guaranteed at the optimal c, so scan
  // coarsely, refine every local maximum by ternary search, and add the
  // boundary candidates {0, c, 1/2}. Ties within 1e-10 prefer interior
  // maximizers (at c = 2 - sqrt(3) the boundary b = 1/2 ties the interior
  // optimum exactly), then smaller b.
  const double step = 1e-3;
  const int cells = 500;
  std::vector<double> coarse(cells + 1);
  for (int i = 0; i <= cells; ++i) {
    coarse[i] = family_error(std::min(i * step, 0.5), c);
  }

  struct Candidate {
    double b = 0.0;
    double value = -1.0;
    bool interior = false;
  };
  std::vector<Candidate> candidates;
  for (int i = 0; i <= cells; ++i) {
    if (i > 0 && coarse[i] < coarse[i - 1]) continue;
    if (i < cells && coarse[i] < coarse[i + 1]) continue;
    double lo = std::max(0.0, (i - 1) * step);
    double hi = std::min(0.5, (i + 1) * step);
    while (hi - lo > 1e-10) {
      const double m1 = lo + (hi - lo) / 3.0;
      const double m2 = hi - (hi - lo) / 3.0;
      if (family_error(m1, c) < family_error(m2, c)) {
        lo = m1;
      } else {
        hi = m2;
      }
    }
    const double b = 0.5 * (lo + hi);
    candidates.push_back({b, family_error(b, c), i != 0 && i != cells});
  }
  for (double b : {0.0, c, 0.5}) {
    candidates.push_back({b, family_error(b, c), false});
  }

  Candidate best;
  for (const Candidate& cand : candidates) {
    const bool tie = cand.value > best.value - 1e-10;
    const bool wins =
        cand.value > best.value + 1e-10 ||
        (tie && cand.interior && !best.interior) ||
        (tie && cand.interior == best.interior && cand.b < best.b);
    if (wins) best = cand;
  }
  return WorstB{best.b, best.value};
}

double yao_curve(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(Errc::kDomainError, "x must lie in [0,1]");
  }
  if (x > 0.5) x = 1.0 - x;
  const double b = optimal_interval().b_star;
  if (x <= b) return 0.5 - b;
  if (x <= 0.5 - b * b) return 0.5 - x;
  return b * b;
}

ClosenessResult closeness(const std::vector<double>& grid,
                          const std::vector<DiscreteFunction>& fs) {
  const int n = static_cast<int>(grid.size());
  if (n == 0 || fs.empty()) {
    throw Error(Errc::kBadInput, "closeness needs a grid and functions");
  }
  for (const DiscreteFunction& f : fs) {
    if (f.size() != n) {
      throw Error(Errc::kDimensionMismatch,
                  "function does not match the shared grid");
    }
    if (std::abs(average(f)) > 1e-9) {
      throw Error(Errc::kBadInput, "closeness functions must be mean-zero");
    }
  }

  ClosenessResult best;
  best.value = std::numeric_limits<double>::infinity();
  std::vector<double> column(fs.size());
  for (int i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < fs.size(); ++k) column[k] = fs[k][i];
    std::sort(column.begin(), column.end());
    // The best reference value for a fixed sample point is the median of
    // the values there (midpoint of the middle pair for even counts).
    const std::size_t mid = column.size() / 2;
    const double y = column.size() % 2 == 1
                         ? column[mid]
                         : 0.5 * (column[mid - 1] + column[mid]);
    double sum = 0.0;
    for (double v : column) sum += std::abs(v - y);
    const double value = sum / column.size();
    if (value < best.value) {
      best.value = value;
      best.x = grid[i];
      best.y = y;
    }
  }
  return best;
}

LineMetric uniform_grid(int grid_n) {
  if (grid_n < 2) throw Error(Errc::kBadInput, "grid needs >= 2 points");
  std::vector<double> coords(grid_n);
  for (int i = 0; i < grid_n; ++i) {
    coords[i] = static_cast<double>(i) / (grid_n - 1);
  }
  return make_line(std::move(coords));
}

SamplingDistribution discretize_uniform_density(double lo, double hi,
                                                int grid_n) {
  if (!(0.0 <= lo && lo < hi && hi <= 1.0)) {
    throw Error(Errc::kDomainError, "need 0 <= lo < hi <= 1");
  }
  const double h = 1.0 / (grid_n - 1);
  std::vector<double> p(grid_n, 0.0);
  for (int i = 0; i < grid_n; ++i) {
    const double cell_lo = std::max(0.0, i * h - h / 2);
    const double cell_hi = std::min(1.0, i * h + h / 2);
    const double overlap =
        std::max(0.0, std::min(cell_hi, hi) - std::max(cell_lo, lo));
    p[i] = overlap / (hi - lo);
  }
  return renormalize(std::move(p));
}

SamplingDistribution grid_point_mass(double x, int grid_n) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(Errc::kDomainError, "x must lie in [0,1]");
  }
  std::vector<double> p(grid_n, 0.0);
  const int idx = static_cast<int>(std::lround(x * (grid_n - 1)));
  p[idx] = 1.0;
  return SamplingDistribution{std::move(p)};
}

double numeric_interval_adversary(const SamplingDistribution& p, int grid_n,
                                  const NumericAdversaryOptions& options) {
  const LineMetric line = uniform_grid(grid_n);
  if (p.size() != grid_n) {
    throw Error(Errc::kDimensionMismatch,
                "distribution does not match the grid");
  }
  if (grid_n <= options.exact_cap) {
    ExactOracleOptions exact;
    exact.max_points = options.exact_cap;
    return exact_oracle_small(to_space(line), p, exact).value;
  }
  // Snap gamma so it divides the grid step; then the class windows match
  // the Lipschitz slopes exactly and the DP value tracks the true worst
  // case to within a couple of grid units.
  const double h = 1.0 / (grid_n - 1);
  const double snapped = h / std::ceil(h / options.gamma - 1e-12);
  const LineClassParams params = LineClassParams::from_gamma(snapped, grid_n);
  return line_dp_oracle(line, p, params, options.dp).value;
}

}  // namespace oneshot
