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

#ifndef ONESHOT_LINPROG_HPP_
#define ONESHOT_LINPROG_HPP_

#include <limits>
#include <vector>

namespace oneshot {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Dense linear program:  minimize c.z  subject to  A z <= b,  lo <= z <= hi.
// Bounds may be +-kInf.
struct LinearProgram {
  std::vector<double> objective;         // c
  std::vector<std::vector<double>> lhs;  // A, one row per constraint
  std::vector<double> rhs;               // b
  std::vector<double> lower;             // per-variable lower bounds
  std::vector<double> upper;             // per-variable upper bounds

  int num_vars() const { return static_cast<int>(objective.size()); }
  void add_row(std::vector<double> row, double bound);
};

struct LpSolution {
  std::vector<double> z;
  double objective = 0.0;
};

// Dense two-phase simplex. Throws Error(kInfeasible) / Error(kUnbounded);
// both indicate construction bugs in this codebase's callers and are
// surfaced loudly.
LpSolution lp_solve(const LinearProgram& lp);

}  // namespace oneshot

#endif  // ONESHOT_LINPROG_HPP_
