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

#ifndef ONESHOT_SOLVER_HPP_
#define ONESHOT_SOLVER_HPP_

#include <optional>
#include <vector>

#include "oneshot/adversary.hpp"
#include "oneshot/lipschitz.hpp"
#include "oneshot/metric.hpp"

namespace oneshot {

enum class OracleChoice { kExact, kLineDp, kGrid };

struct SolverConfig {
  OracleChoice oracle = OracleChoice::kExact;
  double delta = 0.5;
  std::optional<double> gamma_override;
  double rel_tol = 1e-6;
  double abs_tol = 1e-9;
  int max_iters = 500;
  double beta = 1.0;  // doubling dimension; used by the grid oracle and the
                      // reported lower bound
  ExactOracleOptions exact;
  LineDpOptions dp;
  EnumOptions enumeration;
};

struct GameSolution {
  SamplingDistribution p;
  double value = 0.0;
};

// Restricted master game: min over the simplex of the max row payoff of the
// matrix e[f][x]. Among the optimal distributions, returns the minimum-norm
// one (so symmetric instances get the symmetric solution). Throws
// EmptyConstraintSet on zero rows.
GameSolution solve_finite_game(const std::vector<std::vector<double>>& errors);

struct SolveResult {
  SamplingDistribution p;
  double upper = 0.0;             // oracle value at termination
  double restricted_value = 0.0;  // game value over the active set
  double lower_bound = 0.0;       // m / (4 * 6^beta)
  double lipschitz_upper = 0.0;   // upper * (1 + 2 delta) for class oracles;
                                  // equal to upper for the exact oracle
  std::vector<DiscreteFunction> active_set;
  std::vector<double> restricted_history;  // game value per iteration
  int iterations = 0;
  bool converged = false;
  OracleGuarantee guarantee;
};

// Constraint generation: seed the active set with d(., median), alternate
// restricted game and separation oracle, stop when the oracle no longer
// improves past rel_tol/abs_tol. Non-convergence is reported through
// `converged` (best-so-far result), not an exception.
SolveResult constraint_generation(const MetricSpace& space,
                                  const SolverConfig& config);

struct Baseline {
  int point = 0;
  double worst_error = 0.0;
};

// Best deterministic scheme: sample the 1-median; its worst-case error is
// the mean distance m, witnessed by f = d(., median).
Baseline deterministic_baseline(const MetricSpace& space);

}  // namespace oneshot

#endif  // ONESHOT_SOLVER_HPP_
