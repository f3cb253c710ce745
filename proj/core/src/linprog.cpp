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

#include "oneshot/linprog.hpp"

#include <cmath>
#include <utility>
#include <vector>

#include "oneshot/error.hpp"

namespace oneshot {

void LinearProgram::add_row(std::vector<double> row, double bound) {
  lhs.push_back(std::move(row));
  rhs.push_back(bound);
}

namespace {

constexpr double kEps = 1e-9;

// Dense two-phase simplex for max c.x s.t. Ax <= b, x >= 0, with
// lexicographic (Bland-style) tie breaking on variable indices.
class StandardSimplex {
 public:
  StandardSimplex(const std::vector<std::vector<double>>& A,
                  const std::vector<double>& b, const std::vector<double>& c)
      : m_(static_cast<int>(b.size())),
        n_(static_cast<int>(c.size())),
        basic_(m_),
        nonbasic_(n_ + 1),
        tableau_(m_ + 2, std::vector<double>(n_ + 2, 0.0)) {
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) tableau_[i][j] = A[i][j];
    }
    for (int i = 0; i < m_; ++i) {
      basic_[i] = n_ + i;
      tableau_[i][n_] = -1;
      tableau_[i][n_ + 1] = b[i];
    }
    for (int j = 0; j < n_; ++j) {
      nonbasic_[j] = j;
      tableau_[m_][j] = -c[j];
    }
    nonbasic_[n_] = -1;
    tableau_[m_ + 1][n_] = 1;
  }

  // Returns -inf when infeasible, +inf when unbounded.
  double solve(std::vector<double>* x) {
    int r = 0;
    for (int i = 1; i < m_; ++i) {
      if (tableau_[i][n_ + 1] < tableau_[r][n_ + 1]) r = i;
    }
    if (tableau_[r][n_ + 1] < -kEps) {
      pivot(r, n_);
      if (!run(2) || tableau_[m_ + 1][n_ + 1] < -kEps) {
        return -kInf;
      }
      for (int i = 0; i < m_; ++i) {
        if (basic_[i] != -1) continue;
        int s = 0;
        for (int j = 1; j <= n_; ++j) {
          if (choose(tableau_[i][j], nonbasic_[j], tableau_[i][s],
                     nonbasic_[s])) {
            s = j;
          }
        }
        pivot(i, s);
      }
    }
    const bool bounded = run(1);
    x->assign(n_, 0.0);
    for (int i = 0; i < m_; ++i) {
      if (basic_[i] < n_) (*x)[basic_[i]] = tableau_[i][n_ + 1];
    }
    return bounded ? tableau_[m_][n_ + 1] : kInf;
  }

 private:
  // Exact lexicographic comparison (value, variable index): the Bland-style
  // tie-breaking that keeps the pivoting from cycling.
  static bool choose(double a, int ia, double b, int ib) {
    return a < b || (a == b && ia < ib);
  }

  void pivot(int r, int s) {
    std::vector<double>& row = tableau_[r];
    const double inv = 1.0 / row[s];
    for (int i = 0; i < m_ + 2; ++i) {
      if (i == r || std::abs(tableau_[i][s]) <= kEps) continue;
      std::vector<double>& other = tableau_[i];
      const double factor = other[s] * inv;
      for (int j = 0; j < n_ + 2; ++j) other[j] -= row[j] * factor;
      other[s] = row[s] * factor;
    }
    for (int j = 0; j < n_ + 2; ++j) {
      if (j != s) row[j] *= inv;
    }
    for (int i = 0; i < m_ + 2; ++i) {
      if (i != r) tableau_[i][s] *= -inv;
    }
    row[s] = inv;
    std::swap(basic_[r], nonbasic_[s]);
  }

  bool run(int phase) {
    const int obj = m_ + phase - 1;
    for (;;) {
      int s = -1;
      for (int j = 0; j <= n_; ++j) {
        if (nonbasic_[j] == -phase) continue;
        if (s == -1 || choose(tableau_[obj][j], nonbasic_[j], tableau_[obj][s],
                              nonbasic_[s])) {
          s = j;
        }
      }
      if (tableau_[obj][s] >= -kEps) return true;
      int r = -1;
      for (int i = 0; i < m_; ++i) {
        if (tableau_[i][s] <= kEps) continue;
        if (r == -1 ||
            choose(tableau_[i][n_ + 1] / tableau_[i][s], basic_[i],
                   tableau_[r][n_ + 1] / tableau_[r][s], basic_[r])) {
          r = i;
        }
      }
      if (r == -1) return false;
      pivot(r, s);
    }
  }

  int m_;
  int n_;
  std::vector<int> basic_;
  std::vector<int> nonbasic_;
  std::vector<std::vector<double>> tableau_;
};

}  // namespace

LpSolution lp_solve(const LinearProgram& lp) {
  const int n = lp.num_vars();
  if (n == 0) throw Error(Errc::kBadInput, "LP has no variables");
  if (static_cast<int>(lp.lower.size()) != n ||
      static_cast<int>(lp.upper.size()) != n) {
    throw Error(Errc::kBadInput, "LP bounds do not match variable count");
  }
  if (lp.lhs.size() != lp.rhs.size()) {
    throw Error(Errc::kBadInput, "LP rows do not match rhs");
  }

  // Shift every variable into u >= 0 form:
  //   lower bounded:        z = lo + u       (extra row when also bounded
  //                                           above)
  //   upper bounded only:   z = hi - u
  //   free:                 z = u1 - u2
  struct Piece {
    int var;
    double coeff;
  };
  std::vector<double> offset(n, 0.0);
  std::vector<std::vector<Piece>> pieces(n);
  int num_std = 0;
  std::vector<std::pair<int, double>> range_rows;  // (std var, width)
  for (int j = 0; j < n; ++j) {
    const double lo = lp.lower[j];
    const double hi = lp.upper[j];
    if (lo > hi) throw Error(Errc::kInfeasible, "variable bounds cross");
    if (std::isfinite(lo)) {
      offset[j] = lo;
      pieces[j] = {{num_std, 1.0}};
      if (std::isfinite(hi)) range_rows.emplace_back(num_std, hi - lo);
      ++num_std;
    } else if (std::isfinite(hi)) {
      offset[j] = hi;
      pieces[j] = {{num_std, -1.0}};
      ++num_std;
    } else {
      pieces[j] = {{num_std, 1.0}, {num_std + 1, -1.0}};
      num_std += 2;
    }
  }

  const int m = static_cast<int>(lp.lhs.size()) +
                static_cast<int>(range_rows.size());
  std::vector<std::vector<double>> A(m, std::vector<double>(num_std, 0.0));
  std::vector<double> b(m, 0.0);
  for (std::size_t i = 0; i < lp.lhs.size(); ++i) {
    if (static_cast<int>(lp.lhs[i].size()) != n) {
      throw Error(Errc::kBadInput, "LP row width does not match variables");
    }
    double shift = 0.0;
    for (int j = 0; j < n; ++j) {
      const double a = lp.lhs[i][j];
      if (a == 0.0) continue;
      shift += a * offset[j];
      for (const Piece& piece : pieces[j]) A[i][piece.var] += a * piece.coeff;
    }
    b[i] = lp.rhs[i] - shift;
  }
  for (std::size_t k = 0; k < range_rows.size(); ++k) {
    const std::size_t row = lp.lhs.size() + k;
    A[row][range_rows[k].first] = 1.0;
    b[row] = range_rows[k].second;
  }

  // Simplex maximizes; negate the minimization objective.
  std::vector<double> c(num_std, 0.0);
  double obj_shift = 0.0;
  for (int j = 0; j < n; ++j) {
    obj_shift += lp.objective[j] * offset[j];
    for (const Piece& piece : pieces[j]) {
      c[piece.var] -= lp.objective[j] * piece.coeff;
    }
  }

  std::vector<double> x;
  double value = 0.0;
  if (m == 0) {
    // No rows at all: each shifted variable sits at 0 unless its objective
    // coefficient makes the program unbounded.
    x.assign(num_std, 0.0);
    for (double cj : c) {
      if (cj > kEps) value = kInf;
    }
  } else {
    value = StandardSimplex(A, b, c).solve(&x);
  }
  if (value == -kInf) throw Error(Errc::kInfeasible, "LP is infeasible");
  if (value == kInf) throw Error(Errc::kUnbounded, "LP is unbounded");

  LpSolution solution;
  solution.z.resize(n);
  for (int j = 0; j < n; ++j) {
    double v = offset[j];
    for (const Piece& piece : pieces[j]) v += piece.coeff * x[piece.var];
    solution.z[j] = v;
  }
  solution.objective = -value + obj_shift;
  return solution;
}

}  // namespace oneshot
