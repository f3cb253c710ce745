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

#include "oneshot/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "oneshot/error.hpp"
#include "oneshot/linprog.hpp"

namespace oneshot {

namespace {

struct FaceProjection {
  std::vector<double> p;
  bool converged = false;
};

// Projection of the origin onto {p in simplex : rows[k].p <= cap} by
// Dykstra's alternating projections; this picks the minimum-norm point of
// the optimal face, so symmetric games get their symmetric solution.
// Convergence is checked on the feasibility residual; near-degenerate faces
// can stall, in which case the caller falls back to an LP vertex.
FaceProjection min_norm_on_face(const std::vector<std::vector<double>>& rows,
                                double cap, int n) {
  const int m = static_cast<int>(rows.size());
  std::vector<double> norms(m, 0.0);
  for (int k = 0; k < m; ++k) {
    for (double v : rows[k]) norms[k] += v * v;
  }

  std::vector<double> x(n, 0.0);
  // One increment vector per set: the sum hyperplane, the nonnegative
  // orthant, then one halfspace per row.
  std::vector<std::vector<double>> inc(m + 2, std::vector<double>(n, 0.0));
  std::vector<double> y(n);

  auto residual = [&]() {
    double r = 0.0;
    double sum = 0.0;
    for (double v : x) {
      sum += v;
      r = std::max(r, -v);
    }
    r = std::max(r, std::abs(sum - 1.0));
    for (int k = 0; k < m; ++k) {
      double dot = 0.0;
      for (int i = 0; i < n; ++i) dot += rows[k][i] * x[i];
      r = std::max(r, dot - cap);
    }
    return r;
  };

  const int max_sweeps = 200000;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    for (int set = 0; set < m + 2; ++set) {
      for (int i = 0; i < n; ++i) y[i] = x[i] + inc[set][i];
      if (set == 0) {
        double sum = 0.0;
        for (double v : y) sum += v;
        const double shift = (sum - 1.0) / n;
        for (double& v : y) v -= shift;
      } else if (set == 1) {
        for (double& v : y) v = std::max(v, 0.0);
      } else if (norms[set - 2] > 0) {
        const std::vector<double>& row = rows[set - 2];
        double dot = 0.0;
        for (int i = 0; i < n; ++i) dot += row[i] * y[i];
        if (dot > cap) {
          const double scale = (dot - cap) / norms[set - 2];
          for (int i = 0; i < n; ++i) y[i] -= scale * row[i];
        }
      }
      for (int i = 0; i < n; ++i) {
        inc[set][i] = x[i] + inc[set][i] - y[i];
        x[i] = y[i];
      }
    }
    if (sweep % 64 == 63 && residual() <= 1e-11) {
      return {std::move(x), true};
    }
  }
  const bool feasible = residual() <= 1e-10;
  return {std::move(x), feasible};
}

std::uint64_t witness_key(const DiscreteFunction& f) {
  // FNV-1a over values rounded at 1e-9, to deduplicate oracle witnesses.
  std::uint64_t h = 1469598103934665603ull;
  for (double v : f.values) {
    const long long q = std::llround(v * 1e9);
    for (int byte = 0; byte < 8; ++byte) {
      h ^= static_cast<std::uint64_t>((q >> (8 * byte)) & 0xff);
      h *= 1099511628211ull;
    }
  }
  return h;
}

}  // namespace

GameSolution solve_finite_game(
    const std::vector<std::vector<double>>& errors) {
  if (errors.empty()) {
    throw Error(Errc::kEmptyConstraintSet, "game has no constraint rows");
  }
  const int n = static_cast<int>(errors.front().size());
  double max_entry = 0.0;
  for (const auto& row : errors) {
    if (static_cast<int>(row.size()) != n) {
      throw Error(Errc::kBadInput, "game rows have inconsistent widths");
    }
    for (double v : row) {
      if (!std::isfinite(v) || v < 0) {
        throw Error(Errc::kBadInput, "game entries must be finite and >= 0");
      }
      max_entry = std::max(max_entry, v);
    }
  }

  // Variables (p_1..p_n, v): minimize v subject to e_k . p <= v for every
  // row and p on the simplex.
  LinearProgram lp;
  lp.objective.assign(n + 1, 0.0);
  lp.objective[n] = 1.0;
  lp.lower.assign(n + 1, 0.0);
  lp.upper.assign(n + 1, 1.0);
  lp.upper[n] = std::max(max_entry, 1e-300);
  for (const auto& row : errors) {
    std::vector<double> lhs(n + 1, 0.0);
    for (int i = 0; i < n; ++i) lhs[i] = row[i];
    lhs[n] = -1.0;
    lp.add_row(std::move(lhs), 0.0);
  }
  {
    std::vector<double> ones(n + 1, 1.0);
    ones[n] = 0.0;
    lp.add_row(ones, 1.0);
    for (double& v : ones) v = -v;
    lp.add_row(std::move(ones), -1.0);
  }

  const LpSolution sol = lp_solve(lp);
  const double value = sol.objective;

  GameSolution game;
  game.value = value;
  FaceProjection proj = min_norm_on_face(errors, value + 1e-10, n);
  if (proj.converged) {
    game.p = renormalize(std::move(proj.p));
  } else {
    game.p = renormalize(
        std::vector<double>(sol.z.begin(), sol.z.begin() + n));
  }
  return game;
}

Baseline deterministic_baseline(const MetricSpace& space) {
  const MedianInfo median = one_median(space);
  return Baseline{median.median_index, median.mean_distance};
}

SolveResult constraint_generation(const MetricSpace& space,
                                  const SolverConfig& config) {
  const int n = space.n;
  if (config.rel_tol <= 0 || config.abs_tol <= 0) {
    throw Error(Errc::kDomainError, "tolerances must be positive");
  }
  const MedianInfo median = one_median(space);

  // Class parameters are fixed up front; the grid cover does not depend on
  // the iterate either.
  LineMetric line;
  LineClassParams line_params;
  GridStructure grid;
  if (config.oracle == OracleChoice::kLineDp) {
    line = as_line(space);
    line_params = config.gamma_override
                      ? LineClassParams::from_gamma(*config.gamma_override, n)
                      : LineClassParams::from_delta(config.delta, n);
  } else if (config.oracle == OracleChoice::kGrid) {
    grid = build_grid(space, config.beta, config.delta, config.gamma_override);
  }

  auto call_oracle = [&](const SamplingDistribution& p) -> OracleReport {
    switch (config.oracle) {
      case OracleChoice::kExact:
        return exact_oracle_small(space, p, config.exact);
      case OracleChoice::kLineDp:
        return line_dp_oracle(line, p, line_params, config.dp);
      case OracleChoice::kGrid:
        return doubling_enum_oracle(space, grid, p, config.enumeration);
    }
    throw Error(Errc::kBadInput, "unknown oracle");
  };

  SolveResult result;
  result.lower_bound = randomized_lower_bound(median, config.beta);

  // Seed with the lower-bound witness f = d(., median) so the first game is
  // not degenerate.
  {
    DiscreteFunction seed;
    seed.values.resize(n);
    for (int x = 0; x < n; ++x) seed.values[x] = space.d(median.median_index, x);
    result.active_set.push_back(mean_zero(seed));
  }
  std::set<std::uint64_t> seen;
  seen.insert(witness_key(result.active_set.front()));

  std::vector<std::vector<double>> rows;
  const int iteration_cap = std::max(1, config.max_iters);
  for (int iter = 0; iter < iteration_cap; ++iter) {
    rows.resize(result.active_set.size());
    for (std::size_t k = 0; k < result.active_set.size(); ++k) {
      const DiscreteFunction& f = result.active_set[k];
      const double avg = average(f);
      rows[k].resize(n);
      for (int x = 0; x < n; ++x) rows[k][x] = std::abs(avg - f[x]);
    }
    const GameSolution game = solve_finite_game(rows);
    result.p = game.p;
    result.restricted_value = game.value;
    result.restricted_history.push_back(game.value);

    const OracleReport report = call_oracle(game.p);
    result.upper = report.value;
    result.guarantee = report.guarantee;
    result.iterations = iter + 1;

    if (report.value <=
        game.value * (1.0 + config.rel_tol) + config.abs_tol) {
      result.converged = true;
      break;
    }
    if (!seen.insert(witness_key(report.witness)).second) {
      // The most violated constraint is already active: numerically stuck.
      break;
    }
    result.active_set.push_back(report.witness);
  }

  const double delta_effective =
      result.guarantee.kind == OracleGuarantee::Kind::kClassExact
          ? result.guarantee.delta
          : 0.0;
  result.lipschitz_upper = result.upper * (1.0 + 2.0 * delta_effective);
  return result;
}

}  // namespace oneshot
