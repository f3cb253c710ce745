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

#include "oneshot/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "oneshot/error.hpp"

namespace oneshot {

namespace {

std::vector<std::string> default_labels(int n,
                                        std::vector<std::string> labels) {
  if (labels.empty()) {
    labels.reserve(n);
    for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  }
  if (static_cast<int>(labels.size()) != n) {
    throw Error(Errc::kBadInput, "label count does not match point count");
  }
  return labels;
}

}  // namespace

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::kAsymmetricMatrix: return "AsymmetricMatrix";
    case Errc::kNonzeroDiagonal: return "NonzeroDiagonal";
    case Errc::kTriangleViolation: return "TriangleViolation";
    case Errc::kDegenerateSpace: return "DegenerateSpace";
    case Errc::kDimensionMismatch: return "DimensionMismatch";
    case Errc::kRelaxedConditionViolated: return "RelaxedConditionViolated";
    case Errc::kInstanceTooLarge: return "InstanceTooLarge";
    case Errc::kClassTooLarge: return "ClassTooLarge";
    case Errc::kGridTooFine: return "GridTooFine";
    case Errc::kNotInClass: return "NotInClass";
    case Errc::kEmptyConstraintSet: return "EmptyConstraintSet";
    case Errc::kInfeasible: return "Infeasible";
    case Errc::kUnbounded: return "Unbounded";
    case Errc::kDomainError: return "DomainError";
    case Errc::kBadInput: return "BadInput";
  }
  return "Unknown";
}

bool is_resource_cap(Errc code) {
  return code == Errc::kInstanceTooLarge || code == Errc::kClassTooLarge ||
         code == Errc::kGridTooFine;
}

double MetricSpace::diameter() const {
  double best = 0.0;
  for (double v : dist) best = std::max(best, v);
  return best;
}

MetricSpace validate_metric(const std::vector<std::vector<double>>& dist,
                            std::vector<std::string> labels) {
  const int n = static_cast<int>(dist.size());
  if (n < 2) throw Error(Errc::kBadInput, "need at least two points");
  for (const auto& row : dist) {
    if (static_cast<int>(row.size()) != n) {
      throw Error(Errc::kBadInput, "distance matrix is not square");
    }
    for (double v : row) {
      if (!std::isfinite(v)) {
        throw Error(Errc::kBadInput, "distance matrix has non-finite entries");
      }
      if (v < 0) {
        throw Error(Errc::kBadInput, "distance matrix has negative entries");
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    if (dist[i][i] != 0.0) {
      std::ostringstream os;
      os << "NonzeroDiagonal at " << i;
      throw Error(Errc::kNonzeroDiagonal, os.str());
    }
    for (int j = i + 1; j < n; ++j) {
      if (dist[i][j] != dist[j][i]) {
        std::ostringstream os;
        os << "AsymmetricMatrix at (" << i << "," << j << ")";
        throw Error(Errc::kAsymmetricMatrix, os.str());
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      if (k == i) continue;
      for (int j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        if (dist[i][k] > dist[i][j] + dist[j][k] + kTriangleTol) {
          std::ostringstream os;
          os << "TriangleViolation(" << i << "," << k << "," << j << "): d("
             << i << "," << k << ") = " << dist[i][k] << " > " << dist[i][j]
             << " + " << dist[j][k];
          throw Error(Errc::kTriangleViolation, os.str());
        }
      }
    }
  }
  bool any_positive = false;
  for (const auto& row : dist) {
    for (double v : row) any_positive = any_positive || v > 0;
  }
  if (!any_positive) {
    throw Error(Errc::kDegenerateSpace, "all distances are zero");
  }

  MetricSpace space;
  space.n = n;
  space.kind = MetricKind::kGeneral;
  space.labels = default_labels(n, std::move(labels));
  space.dist.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      space.dist[static_cast<std::size_t>(i) * n + j] = dist[i][j];
    }
  }
  return space;
}

MetricSpace normalize_diameter(const MetricSpace& space) {
  const double diam = space.diameter();
  if (diam <= 0.0) {
    throw Error(Errc::kDegenerateSpace, "all distances are zero");
  }
  if (diam == 1.0) return space;
  MetricSpace out = space;
  for (double& v : out.dist) v /= diam;
  for (double& c : out.coords) c /= diam;
  out.scale = space.scale / diam;
  return out;
}

LineMetric make_line(std::vector<double> coords) {
  const int n = static_cast<int>(coords.size());
  if (n < 2) throw Error(Errc::kBadInput, "need at least two points");
  for (double c : coords) {
    if (!std::isfinite(c)) {
      throw Error(Errc::kBadInput, "line coordinates must be finite");
    }
  }
  if (!std::is_sorted(coords.begin(), coords.end())) {
    throw Error(Errc::kBadInput, "line coordinates must be sorted ascending");
  }
  const double lo = coords.front();
  const double span = coords.back() - lo;
  if (span <= 0.0) {
    throw Error(Errc::kDegenerateSpace, "all line coordinates coincide");
  }
  LineMetric line;
  line.scale = 1.0 / span;
  line.coords.resize(n);
  for (int i = 0; i < n; ++i) line.coords[i] = (coords[i] - lo) / span;
  line.coords.front() = 0.0;
  line.coords.back() = 1.0;
  return line;
}

MetricSpace to_space(const LineMetric& line, std::vector<std::string> labels) {
  const int n = line.size();
  MetricSpace space;
  space.n = n;
  space.kind = MetricKind::kLine;
  space.labels = default_labels(n, std::move(labels));
  space.coords = line.coords;
  space.scale = line.scale;
  space.dist.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      space.dist[static_cast<std::size_t>(i) * n + j] = line.d(i, j);
    }
  }
  return space;
}

LineMetric as_line(const MetricSpace& space) {
  if (space.kind != MetricKind::kLine || space.coords.empty()) {
    throw Error(Errc::kBadInput, "metric space is not a line metric");
  }
  LineMetric line;
  line.coords = space.coords;
  line.scale = space.scale;
  return line;
}

MetricSpace points_space(const std::vector<std::vector<double>>& points,
                         std::vector<std::string> labels) {
  const int n = static_cast<int>(points.size());
  if (n < 2) throw Error(Errc::kBadInput, "need at least two points");
  const std::size_t dim = points.front().size();
  if (dim == 0) throw Error(Errc::kBadInput, "points need a dimension");
  std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    if (points[i].size() != dim) {
      throw Error(Errc::kBadInput, "points have inconsistent dimensions");
    }
    for (int j = i + 1; j < n; ++j) {
      double sq = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        const double diff = points[i][k] - points[j][k];
        sq += diff * diff;
      }
      dist[i][j] = dist[j][i] = std::sqrt(sq);
    }
  }
  return validate_metric(dist, std::move(labels));
}

MedianInfo one_median(const MetricSpace& space) {
  MedianInfo info;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < space.n; ++i) {
    double sum = 0.0;
    for (int j = 0; j < space.n; ++j) sum += space.d(i, j);
    if (sum < best) {
      best = sum;
      info.median_index = i;
    }
  }
  info.mean_distance = best / space.n;
  return info;
}

double randomized_lower_bound(const MedianInfo& median, double beta) {
  if (beta < 0) throw Error(Errc::kDomainError, "beta must be nonnegative");
  return median.mean_distance / (4.0 * std::pow(6.0, beta));
}

double estimate_doubling_dimension(const MetricSpace& space) {
  const int n = space.n;
  double min_positive = 1.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double d = space.d(i, j);
      if (d > 0) min_positive = std::min(min_positive, d);
    }
  }

  int worst = 1;
  std::vector<char> covered(n);
  for (double scale = 1.0; scale >= min_positive / 2; scale /= 2) {
    for (int center = 0; center < n; ++center) {
      // Ball of diameter `scale`, greedily covered by balls of half that
      // diameter seeded at the lowest-index uncovered point.
      std::fill(covered.begin(), covered.end(), 0);
      int remaining = 0;
      for (int i = 0; i < n; ++i) {
        if (space.d(center, i) <= scale / 2) {
          ++remaining;
        } else {
          covered[i] = 1;
        }
      }
      int count = 0;
      for (int seed = 0; seed < n && remaining > 0; ++seed) {
        if (covered[seed]) continue;
        ++count;
        for (int i = 0; i < n; ++i) {
          if (!covered[i] && space.d(seed, i) <= scale / 4) {
            covered[i] = 1;
            --remaining;
          }
        }
      }
      worst = std::max(worst, count);
    }
  }
  return std::log2(static_cast<double>(worst));
}

}  // namespace oneshot
