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

#ifndef ONESHOT_METRIC_HPP_
#define ONESHOT_METRIC_HPP_

#include <cmath>
#include <string>
#include <vector>

namespace oneshot {

enum class MetricKind { kGeneral, kLine };

// Absolute tolerance for triangle-inequality validation. Inputs that fail by
// more are rejected rather than repaired.
inline constexpr double kTriangleTol = 1e-9;

// A validated finite metric space. All types in this module are immutable
// after construction and safe to share across threads.
//
// `scale` records the factor the raw input distances were multiplied by
// during diameter normalization, so callers can un-scale reported errors.
struct MetricSpace {
  int n = 0;
  MetricKind kind = MetricKind::kGeneral;
  std::vector<std::string> labels;
  std::vector<double> dist;    // n*n row-major, symmetric, zero diagonal
  std::vector<double> coords;  // line spaces only, sorted ascending
  double scale = 1.0;

  double d(int i, int j) const {
    return dist[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + j];
  }
  double diameter() const;
};

// Points 0 = x_1 <= x_2 <= ... <= x_n = 1 on the unit interval.
struct LineMetric {
  std::vector<double> coords;
  double scale = 1.0;

  int size() const { return static_cast<int>(coords.size()); }
  double d(int i, int j) const { return std::abs(coords[i] - coords[j]); }
};

struct MedianInfo {
  int median_index = 0;
  double mean_distance = 0.0;
};

// Checks squareness, symmetry, zero diagonal and the triangle inequality.
// Throws Error with code AsymmetricMatrix, NonzeroDiagonal,
// TriangleViolation or DegenerateSpace. Does not normalize.
MetricSpace validate_metric(const std::vector<std::vector<double>>& dist,
                            std::vector<std::string> labels = {});

// Scales all distances so the diameter is exactly 1 and records the factor
// in `scale`. Idempotent. Throws DegenerateSpace if all distances are zero.
MetricSpace normalize_diameter(const MetricSpace& space);

// Validates sortedness and endpoints, then translates/scales the coordinates
// onto [0,1]. Throws DegenerateSpace when the span is zero.
LineMetric make_line(std::vector<double> coords);

MetricSpace to_space(const LineMetric& line,
                     std::vector<std::string> labels = {});

// Requires space.kind == kLine.
LineMetric as_line(const MetricSpace& space);

// Euclidean point cloud -> validated metric space (not normalized).
MetricSpace points_space(const std::vector<std::vector<double>>& points,
                         std::vector<std::string> labels = {});

// argmin_x sum_y d(x,y), ties broken by lowest index; mean_distance is the
// average distance from the median.
MedianInfo one_median(const MetricSpace& space);

// Universal lower bound m / (4 * 6^beta) on the worst-case expected error of
// any randomized single-sample scheme on a diameter-1 space with doubling
// dimension beta.
double randomized_lower_bound(const MedianInfo& median, double beta);

// Greedy-cover estimate of the doubling dimension at dyadic scales. This is
// an upper estimate, not exact; solver paths that need beta take it as user
// input instead.
double estimate_doubling_dimension(const MetricSpace& space);

}  // namespace oneshot

#endif  // ONESHOT_METRIC_HPP_
