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

#include "oneshot/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <vector>

#include "oneshot/error.hpp"
#include "oneshot/linprog.hpp"
#include "oneshot/parallel.hpp"

namespace oneshot {

namespace {

constexpr double kValueTol = 1e-12;

bool lex_less(const std::vector<double>& a, const std::vector<double>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void check_distribution(int n, const SamplingDistribution& p) {
  if (p.size() != n) {
    throw Error(Errc::kDimensionMismatch,
                "distribution length does not match point count");
  }
}

}  // namespace

std::string OracleGuarantee::str() const {
  switch (kind) {
    case Kind::kExact:
      return "exact";
    case Kind::kClassExact: {
      std::ostringstream os;
      os << "class_exact(delta=" << delta << ")";
      return os.str();
    }
    case Kind::kHeuristic:
      return "heuristic";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Exact oracle: max_f sum_x p_x |Avg(f) - f(x)| over 1-Lipschitz f is a
// convex maximization, split by the sign vector of (f - Avg(f)) into 2^n
// linear programs with the gauge f(median) = 0.
// ---------------------------------------------------------------------------

OracleReport exact_oracle_small(const MetricSpace& space,
                                const SamplingDistribution& p,
                                const ExactOracleOptions& options) {
  const int n = space.n;
  check_distribution(n, p);
  if (n > options.max_points) {
    std::ostringstream os;
    os << "InstanceTooLarge: n = " << n << " exceeds exact-oracle cap "
       << options.max_points;
    throw Error(Errc::kInstanceTooLarge, os.str());
  }
  const int o = one_median(space).median_index;

  // Variables f_x for x != o; pairwise Lipschitz rows are shared by all sign
  // patterns, only the objective changes.
  std::vector<int> vars;
  for (int x = 0; x < n; ++x) {
    if (x != o) vars.push_back(x);
  }
  const int nv = static_cast<int>(vars.size());
  LinearProgram base;
  base.objective.assign(nv, 0.0);
  base.lower.resize(nv);
  base.upper.resize(nv);
  for (int a = 0; a < nv; ++a) {
    base.lower[a] = -space.d(vars[a], o);
    base.upper[a] = space.d(vars[a], o);
  }
  for (int a = 0; a < nv; ++a) {
    for (int b = a + 1; b < nv; ++b) {
      const double dab = space.d(vars[a], vars[b]);
      std::vector<double> row(nv, 0.0);
      row[a] = 1.0;
      row[b] = -1.0;
      base.add_row(row, dab);
      row[a] = -1.0;
      row[b] = 1.0;
      base.add_row(std::move(row), dab);
    }
  }

  struct Best {
    double value = -std::numeric_limits<double>::infinity();
    std::vector<double> f;
  };
  const std::uint64_t patterns = std::uint64_t{1} << n;
  std::vector<Best> bests(num_chunks(patterns));
  parallel_chunks(patterns, [&](int chunk, std::uint64_t begin,
                                std::uint64_t end) {
    Best local;
    LinearProgram lp = base;
    for (std::uint64_t mask = begin; mask < end; ++mask) {
      double signed_mass = 0.0;
      for (int x = 0; x < n; ++x) {
        signed_mass += (mask >> x & 1) ? p.p[x] : -p.p[x];
      }
      // maximize sum_x p_x sigma_x (f_x - Avg f); lp_solve minimizes.
      for (int a = 0; a < nv; ++a) {
        const int x = vars[a];
        const double sigma = (mask >> x & 1) ? 1.0 : -1.0;
        lp.objective[a] = -(p.p[x] * sigma - signed_mass / n);
      }
      const LpSolution sol = lp_solve(lp);
      const double value = -sol.objective;
      if (value > local.value + kValueTol) {
        local.value = value;
        local.f.assign(n, 0.0);
        for (int a = 0; a < nv; ++a) local.f[vars[a]] = sol.z[a];
      } else if (value > local.value - kValueTol && !local.f.empty()) {
        std::vector<double> f(n, 0.0);
        for (int a = 0; a < nv; ++a) f[vars[a]] = sol.z[a];
        if (lex_less(f, local.f)) local.f = std::move(f);
      }
    }
    bests[chunk] = std::move(local);
  });

  Best best;
  for (Best& chunk : bests) {
    if (chunk.value > best.value + kValueTol ||
        (chunk.value > best.value - kValueTol &&
         (best.f.empty() || lex_less(chunk.f, best.f)))) {
      best = std::move(chunk);
    }
  }

  OracleReport report;
  report.witness = mean_zero(DiscreteFunction{std::move(best.f)});
  report.value = estimation_error(report.witness, p);
  report.guarantee.kind = OracleGuarantee::Kind::kExact;
  return report;
}

// ---------------------------------------------------------------------------
// Line class and its dynamic-programming oracle.
// ---------------------------------------------------------------------------

LineClassParams LineClassParams::from_delta(double delta, int n) {
  if (delta <= 0) throw Error(Errc::kDomainError, "delta must be positive");
  LineClassParams params;
  params.delta = delta;
  params.gamma = delta / (144.0 * n);
  params.sum_cap = n * params.gamma;
  return params;
}

LineClassParams LineClassParams::from_gamma(double gamma, int n) {
  if (gamma <= 0) throw Error(Errc::kDomainError, "gamma must be positive");
  LineClassParams params;
  params.gamma = gamma;
  params.delta = 144.0 * n * gamma;
  params.sum_cap = n * gamma;
  return params;
}

namespace {

// Adjacent step windows, in grid units. The window is the gap rounded up to
// the grid (at least one step), so the grid rounding of any Lipschitz
// function stays inside the class, and on grids whose gaps are multiples of
// gamma the windows match the Lipschitz slopes exactly.
std::vector<int> line_windows(const LineMetric& line, double gamma) {
  const int n = line.size();
  std::vector<int> windows(n - 1);
  for (int l = 0; l + 1 < n; ++l) {
    const double gap = line.coords[l + 1] - line.coords[l];
    windows[l] = std::max(1, static_cast<int>(std::ceil(gap / gamma - 1e-9)));
  }
  return windows;
}

}  // namespace

bool line_class_check(const LineMetric& line, const DiscreteFunction& f,
                      const LineClassParams& params, double tol) {
  const int n = line.size();
  if (f.size() != n) return false;
  const double gamma = params.gamma;
  const std::vector<int> windows = line_windows(line, gamma);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    sum += f[i];
    // Grid membership up to a common shift (witnesses are re-centered).
    const double rel = (f[i] - f[0]) / gamma;
    if (std::abs(rel - std::round(rel)) > tol / gamma) return false;
  }
  if (std::abs(sum) > params.sum_cap + n * tol) return false;
  for (int l = 0; l + 1 < n; ++l) {
    if (std::abs(f[l + 1] - f[l]) > windows[l] * gamma + tol) return false;
  }
  return true;
}

OracleReport line_dp_oracle(const LineMetric& line,
                            const SamplingDistribution& p,
                            const LineClassParams& params,
                            const LineDpOptions& options) {
  const int n = line.size();
  check_distribution(n, p);
  if (params.gamma <= 0) {
    throw Error(Errc::kDomainError, "gamma must be positive");
  }
  const double gamma = params.gamma;
  const int t_cap = static_cast<int>(std::floor(1.0 / gamma + 1e-9));
  const int s_cap = static_cast<int>(std::floor(params.sum_cap / gamma + 1e-9));
  const int t_span = 2 * t_cap + 1;
  const std::vector<int> windows = line_windows(line, gamma);

  // Cumulative windows: W[i] - W[j] bounds |f_i - f_j| in grid units.
  std::vector<long long> cum(n, 0);
  for (int i = 1; i < n; ++i) cum[i] = cum[i - 1] + windows[i - 1];

  // Feasibility band for the partial sum at (layer j, value t): it must be
  // reachable from below and completable to a final sum within +-s_cap.
  auto band = [&](int j, int t, long long* lo, long long* hi) {
    long long min_past = t, max_past = t;
    for (int i = 0; i < j; ++i) {
      const long long w = cum[j] - cum[i];
      min_past += std::max<long long>(-t_cap, t - w);
      max_past += std::min<long long>(t_cap, t + w);
    }
    long long min_future = 0, max_future = 0;
    for (int i = j + 1; i < n; ++i) {
      const long long w = cum[i] - cum[j];
      min_future += std::max<long long>(-t_cap, t - w);
      max_future += std::min<long long>(t_cap, t + w);
    }
    *lo = std::max(min_past, -s_cap - max_future);
    *hi = std::min(max_past, s_cap - min_future);
  };

  struct Layer {
    std::vector<long long> lo, hi;     // per t-index band (empty: lo > hi)
    std::vector<std::size_t> offset;   // into the flat arrays
    std::vector<double> value;
    std::vector<std::int16_t> parent;  // previous layer's t
    std::size_t cells = 0;
  };

  const double kNegInf = -std::numeric_limits<double>::infinity();
  std::vector<Layer> layers(n);
  std::size_t total_cells = 0;
  for (int j = 0; j < n; ++j) {
    Layer& layer = layers[j];
    layer.lo.resize(t_span);
    layer.hi.resize(t_span);
    layer.offset.resize(t_span);
    std::size_t cells = 0;
    for (int ti = 0; ti < t_span; ++ti) {
      const int t = ti - t_cap;
      band(j, t, &layer.lo[ti], &layer.hi[ti]);
      layer.offset[ti] = cells;
      if (layer.lo[ti] <= layer.hi[ti]) {
        cells += static_cast<std::size_t>(layer.hi[ti] - layer.lo[ti] + 1);
      }
    }
    layer.cells = cells;
    total_cells += cells;
    if (total_cells > options.max_states) {
      std::ostringstream os;
      os << "GridTooFine: DP needs more than " << options.max_states
         << " states; raise gamma";
      throw Error(Errc::kGridTooFine, os.str());
    }
    layer.value.assign(cells, kNegInf);
    layer.parent.assign(cells, 0);
  }

  auto cell = [&](Layer& layer, int ti, long long s) -> std::size_t {
    return layer.offset[ti] + static_cast<std::size_t>(s - layer.lo[ti]);
  };

  {
    Layer& first = layers[0];
    for (int ti = 0; ti < t_span; ++ti) {
      const int t = ti - t_cap;
      if (first.lo[ti] > first.hi[ti]) continue;
      if (t < first.lo[ti] || t > first.hi[ti]) continue;
      first.value[cell(first, ti, t)] = p.p[0] * std::abs(t) * gamma;
    }
  }

  for (int j = 1; j < n; ++j) {
    Layer& prev = layers[j - 1];
    Layer& cur = layers[j];
    const int window = windows[j - 1];
    for (int ti = 0; ti < t_span; ++ti) {
      if (cur.lo[ti] > cur.hi[ti]) continue;
      const int t = ti - t_cap;
      const double gain = p.p[j] * std::abs(t) * gamma;
      const int y_lo = std::max(-t_cap, t - window);
      const int y_hi = std::min(t_cap, t + window);
      for (long long s = cur.lo[ti]; s <= cur.hi[ti]; ++s) {
        const long long s_prev = s - t;
        double best = kNegInf;
        int best_y = 0;
        for (int y = y_lo; y <= y_hi; ++y) {
          const int yi = y + t_cap;
          if (s_prev < prev.lo[yi] || s_prev > prev.hi[yi]) continue;
          const double v = prev.value[cell(prev, yi, s_prev)];
          if (v > best) {
            best = v;
            best_y = y;
          }
        }
        if (best == kNegInf) continue;
        const std::size_t at = cell(cur, ti, s);
        cur.value[at] = best + gain;
        cur.parent[at] = static_cast<std::int16_t>(best_y);
      }
    }
  }

  // Best final state with |sum| <= s_cap (the bands already enforce it).
  double best = kNegInf;
  int best_t = 0;
  long long best_s = 0;
  {
    Layer& last = layers[n - 1];
    for (int ti = 0; ti < t_span; ++ti) {
      if (last.lo[ti] > last.hi[ti]) continue;
      for (long long s = last.lo[ti]; s <= last.hi[ti]; ++s) {
        const double v = last.value[cell(last, ti, s)];
        if (v > best) {
          best = v;
          best_t = ti - t_cap;
          best_s = s;
        }
      }
    }
  }
  if (best == kNegInf) {
    // Unreachable by construction: the all-zero function is always feasible.
    throw Error(Errc::kGridTooFine, "line DP found no feasible state");
  }

  std::vector<double> values(n);
  int t = best_t;
  long long s = best_s;
  for (int j = n - 1; j >= 0; --j) {
    values[j] = t * gamma;
    if (j > 0) {
      Layer& layer = layers[j];
      const int y = layer.parent[cell(layer, t + t_cap, s)];
      s -= t;
      t = y;
    }
  }

  OracleReport report;
  report.witness = mean_zero(DiscreteFunction{std::move(values)});
  report.value = estimation_error(report.witness, p);
  report.guarantee.kind = OracleGuarantee::Kind::kClassExact;
  report.guarantee.delta = params.delta;
  return report;
}

// ---------------------------------------------------------------------------
// Grid cover for doubling metrics and its enumeration oracle.
// ---------------------------------------------------------------------------

GridStructure build_grid(const MetricSpace& space, double beta, double delta,
                         std::optional<double> gamma_override) {
  if (beta < 0) throw Error(Errc::kDomainError, "beta must be nonnegative");
  if (delta <= 0 && !gamma_override) {
    throw Error(Errc::kDomainError, "delta must be positive");
  }
  const int n = space.n;
  const MedianInfo median = one_median(space);
  const double m = median.mean_distance;
  const double denom = 48.0 * std::pow(6.0, beta) + 6.0;

  GridStructure grid;
  grid.median = median.median_index;
  if (gamma_override) {
    if (*gamma_override <= 0) {
      throw Error(Errc::kDomainError, "gamma must be positive");
    }
    grid.gamma = *gamma_override;
    grid.delta = grid.gamma * denom;
  } else {
    grid.delta = delta;
    grid.gamma = delta / denom;
  }

  // Rings of exponentially decreasing diameter around the median: region i
  // holds d in (2^-i, 2^-(i-1)], the inner region holds d <= 2m.
  int k = 0;
  if (2.0 * m < 1.0) {
    k = static_cast<int>(std::ceil(std::log2(1.0 / (2.0 * m)) - 1e-12));
  }
  grid.num_regions = k + 1;
  grid.region_scale.assign(k + 2, 0.0);
  for (int i = 1; i <= k; ++i) grid.region_scale[i] = std::pow(2.0, -i);
  grid.region_scale[k + 1] = m;

  grid.region_of.assign(n, k + 1);
  for (int x = 0; x < n; ++x) {
    const double d = space.d(grid.median, x);
    if (d <= 2.0 * m) continue;
    for (int i = 1; i <= k; ++i) {
      if (d > grid.region_scale[i]) {
        grid.region_of[x] = i;
        break;
      }
    }
  }

  // Greedy cover per region: seed at the lowest-index uncovered point (the
  // median first in its own region, so its ball is led by it), take
  // everything within radius gamma * scale.
  grid.ball_of.assign(n, -1);
  for (int region = 1; region <= k + 1; ++region) {
    const double radius = grid.gamma * grid.region_scale[region];
    std::vector<int> order;
    if (grid.region_of[grid.median] == region) order.push_back(grid.median);
    for (int x = 0; x < n; ++x) {
      if (grid.region_of[x] == region && x != grid.median) order.push_back(x);
    }
    for (int seed : order) {
      if (grid.ball_of[seed] != -1) continue;
      GridBall ball;
      ball.ring = region;
      ball.representative = seed;
      for (int x : order) {
        if (grid.ball_of[x] == -1 && space.d(seed, x) <= radius) {
          grid.ball_of[x] = static_cast<int>(grid.balls.size());
          ball.points.push_back(x);
        }
      }
      grid.balls.push_back(std::move(ball));
    }
  }
  return grid;
}

bool grid_class_check(const MetricSpace& space, const GridStructure& grid,
                      const DiscreteFunction& f, double tol) {
  if (f.size() != space.n) return false;
  for (const GridBall& ball : grid.balls) {
    for (int x : ball.points) {
      if (std::abs(f[x] - f[ball.representative]) > tol) return false;
    }
  }
  for (std::size_t a = 0; a < grid.balls.size(); ++a) {
    for (std::size_t b = a + 1; b < grid.balls.size(); ++b) {
      const int ra = grid.balls[a].representative;
      const int rb = grid.balls[b].representative;
      const double slack =
          grid.gamma * (grid.region_scale[grid.balls[a].ring] +
                        grid.region_scale[grid.balls[b].ring]);
      if (std::abs(f[ra] - f[rb]) > space.d(ra, rb) + slack + tol) {
        return false;
      }
    }
  }
  return true;
}

OracleReport doubling_enum_oracle(const MetricSpace& space,
                                  const GridStructure& grid,
                                  const SamplingDistribution& p,
                                  const EnumOptions& options) {
  const int n = space.n;
  check_distribution(n, p);
  const int num_balls = static_cast<int>(grid.balls.size());
  const int median = grid.median;
  const double median_scale =
      grid.region_scale[grid.balls[grid.ball_of[median]].ring];

  // Representative value ranges: multiples of gamma * scale, bounded by the
  // relaxed condition against the median (fixed to 0).
  std::vector<double> step(num_balls);
  std::vector<int> max_step(num_balls);
  double estimate = 1.0;
  for (int b = 0; b < num_balls; ++b) {
    const GridBall& ball = grid.balls[b];
    step[b] = grid.gamma * grid.region_scale[ball.ring];
    if (ball.representative == median) {
      max_step[b] = 0;
      continue;
    }
    const double bound =
        space.d(ball.representative, median) +
        grid.gamma * (grid.region_scale[ball.ring] + median_scale);
    max_step[b] = static_cast<int>(std::floor(bound / step[b] + 1e-9));
    estimate *= 2.0 * max_step[b] + 1.0;
    if (estimate > static_cast<double>(options.max_enumeration)) {
      std::ostringstream os;
      os << "ClassTooLarge: grid class needs about " << estimate
         << " functions; raise gamma or delta";
      throw Error(Errc::kClassTooLarge, os.str());
    }
  }

  std::vector<double> rep_value(num_balls, 0.0);
  std::vector<double> f(n, 0.0);
  double best_value = -1.0;
  std::vector<double> best_f;

  // Depth-first over representative values with pairwise pruning.
  auto feasible = [&](int b) {
    const int rb = grid.balls[b].representative;
    for (int a = 0; a < b; ++a) {
      const int ra = grid.balls[a].representative;
      const double slack =
          grid.gamma * (grid.region_scale[grid.balls[a].ring] +
                        grid.region_scale[grid.balls[b].ring]);
      if (std::abs(rep_value[b] - rep_value[a]) >
          space.d(ra, rb) + slack + 1e-12) {
        return false;
      }
    }
    return true;
  };

  auto evaluate = [&]() {
    for (int b = 0; b < num_balls; ++b) {
      for (int x : grid.balls[b].points) f[x] = rep_value[b];
    }
    const double value =
        estimation_error(DiscreteFunction{f}, p);
    if (value > best_value + kValueTol) {
      best_value = value;
      best_f = f;
    }
  };

  std::vector<int> stack_step(num_balls);
  int depth = 0;
  stack_step[0] = -max_step[0];
  while (depth >= 0) {
    if (stack_step[depth] > max_step[depth]) {
      --depth;
      if (depth >= 0) ++stack_step[depth];
      continue;
    }
    rep_value[depth] = stack_step[depth] * step[depth];
    if (!feasible(depth)) {
      ++stack_step[depth];
      continue;
    }
    if (depth + 1 == num_balls) {
      evaluate();
      ++stack_step[depth];
    } else {
      ++depth;
      stack_step[depth] = -max_step[depth];
    }
  }

  OracleReport report;
  report.witness = mean_zero(DiscreteFunction{std::move(best_f)});
  report.value = estimation_error(report.witness, p);
  report.guarantee.kind = OracleGuarantee::Kind::kClassExact;
  report.guarantee.delta = grid.delta;
  return report;
}

DiscreteFunction qdelta_to_lipschitz(const MetricSpace& space,
                                     const DiscreteFunction& f,
                                     const GridStructure& grid) {
  if (f.size() != space.n) {
    throw Error(Errc::kDimensionMismatch,
                "function length does not match point count");
  }
  if (!grid_class_check(space, grid, f, 1e-9)) {
    throw Error(Errc::kNotInClass,
                "function is not constant on balls or fails the relaxed "
                "condition");
  }

  const int num_balls = static_cast<int>(grid.balls.size());
  std::vector<int> reps(num_balls);
  std::vector<double> rep_values(num_balls);
  std::vector<double> slacks(num_balls);
  for (int b = 0; b < num_balls; ++b) {
    reps[b] = grid.balls[b].representative;
    rep_values[b] = f[reps[b]];
    slacks[b] = grid.gamma * grid.region_scale[grid.balls[b].ring];
  }

  // Repair the representatives on their sub-metric, then set every point to
  // the midpoint of the Lipschitz envelopes over the repaired values.
  MetricSpace sub;
  sub.n = num_balls;
  sub.kind = MetricKind::kGeneral;
  sub.labels.assign(num_balls, "");
  sub.dist.resize(static_cast<std::size_t>(num_balls) * num_balls);
  for (int a = 0; a < num_balls; ++a) {
    for (int b = 0; b < num_balls; ++b) {
      sub.dist[static_cast<std::size_t>(a) * num_balls + b] =
          space.d(reps[a], reps[b]);
    }
  }
  // Already-Lipschitz representative values need no repair, and must pass
  // through unchanged.
  const DiscreteFunction rep_fn{rep_values};
  const DiscreteFunction repaired =
      is_lipschitz(sub, rep_fn, 1e-12)
          ? rep_fn
          : lipschitz_adjust(sub, rep_fn, SlackVector{slacks});

  DiscreteFunction out;
  out.values.resize(space.n);
  for (int x = 0; x < space.n; ++x) {
    double upper = std::numeric_limits<double>::infinity();
    double lower = -std::numeric_limits<double>::infinity();
    for (int b = 0; b < num_balls; ++b) {
      const double d = space.d(x, reps[b]);
      upper = std::min(upper, repaired[b] + d);
      lower = std::max(lower, repaired[b] - d);
    }
    out.values[x] = 0.5 * (upper + lower);
  }
  return out;
}

}  // namespace oneshot
