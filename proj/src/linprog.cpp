// Copyright 2026 The zonopred Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "zonopred/linprog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace zonopred
{

namespace
{

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

// Tableau in canonical form: rows [0, m) are constraints, the last column is
// the right-hand side, row m holds the reduced costs with -objective in the rhs.
class Tableau
{
public:
  Tableau(MatrixXd table, std::vector<Index> basis, double tol)
  : t_(std::move(table)), basis_(std::move(basis)), tol_(tol)
  {
  }

  Index rows() const { return t_.rows() - 1; }
  Index cols() const { return t_.cols() - 1; }

  void set_cost(const VectorXd & cost)
  {
    const Index m = rows();
    t_.row(m).setZero();
    t_.row(m).head(cols()) = cost.transpose();
    for (Index i = 0; i < m; ++i) {
      const double cb = cost(basis_[static_cast<std::size_t>(i)]);
      if (cb != 0.0) t_.row(m) -= cb * t_.row(i);
    }
  }

  // Returns false when unbounded. Columns >= allowed_cols never enter.
  // Entering column by Bland's rule; pivot elements smaller than
  // kRelativePivot times the column's largest entry are skipped, which trades
  // a primal violation of order tol for not dividing by roundoff.
  bool optimize(Index allowed_cols)
  {
    constexpr double kRelativePivot = 1e-7;
    const Index m = rows();
    const Index rhs = cols();
    const Index max_iterations = 50 * (m + t_.cols()) + 1000;
    for (Index iteration = 0;; ++iteration) {
      if (iteration > max_iterations) throw std::runtime_error("solve_lp: iteration limit reached");
      Index enter = -1;
      for (Index j = 0; j < allowed_cols; ++j) {
        if (t_(m, j) < -tol_) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;

      const double pivot_tol = std::max(tol_, kRelativePivot * t_.col(enter).head(m).cwiseAbs().maxCoeff());
      Index leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (Index i = 0; i < m; ++i) {
        const double a = t_(i, enter);
        if (a <= pivot_tol) continue;
        const double ratio = std::max(t_(i, rhs), 0.0) / a;
        if (ratio < best - tol_ ||
            (ratio <= best + tol_ && leave >= 0 &&
             basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
          best = std::min(best, ratio);
          leave = i;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  void pivot(Index row, Index col)
  {
    t_.row(row) /= t_(row, col);
    for (Index i = 0; i < t_.rows(); ++i) {
      if (i == row) continue;
      const double f = t_(i, col);
      if (f != 0.0) t_.row(i) -= f * t_.row(row);
    }
    basis_[static_cast<std::size_t>(row)] = col;
  }

  void drop_row(Index row)
  {
    const Index n = t_.rows();
    MatrixXd reduced(n - 1, t_.cols());
    reduced << t_.topRows(row), t_.bottomRows(n - row - 1);
    t_ = std::move(reduced);
    basis_.erase(basis_.begin() + row);
  }

  double entry(Index i, Index j) const { return t_(i, j); }
  double rhs(Index i) const { return t_(i, cols()); }
  double objective() const { return -t_(rows(), cols()); }
  Index basic(Index i) const { return basis_[static_cast<std::size_t>(i)]; }

private:
  MatrixXd t_;
  std::vector<Index> basis_;
  double tol_;
};

}  // namespace

LpSolution solve_lp(const LinearProgram & lp, double tol)
{
  const Index n = lp.num_vars();
  if (lp.a_ub.cols() != n || lp.a_eq.cols() != n || lp.a_ub.rows() != lp.b_ub.size() ||
      lp.a_eq.rows() != lp.b_eq.size() || static_cast<Index>(lp.free.size()) != n) {
    throw std::invalid_argument("solve_lp: inconsistent problem dimensions");
  }

  // Column layout: structural (free variables split into +/-), slacks, artificials.
  std::vector<Index> col_of(static_cast<std::size_t>(n));
  Index num_struct = 0;
  for (Index j = 0; j < n; ++j) {
    col_of[static_cast<std::size_t>(j)] = num_struct;
    num_struct += lp.free[static_cast<std::size_t>(j)] ? 2 : 1;
  }
  const Index m_ub = lp.a_ub.rows();
  const Index m_eq = lp.a_eq.rows();
  const Index m = m_ub + m_eq;
  const Index num_real = num_struct + m_ub;
  const Index num_cols = num_real + m;

  MatrixXd table = MatrixXd::Zero(m + 1, num_cols + 1);
  auto fill_row = [&](Index row, const auto & coeffs, double b, Index slack) {
    for (Index j = 0; j < n; ++j) {
      const Index c = col_of[static_cast<std::size_t>(j)];
      table(row, c) = coeffs(j);
      if (lp.free[static_cast<std::size_t>(j)]) table(row, c + 1) = -coeffs(j);
    }
    if (slack >= 0) table(row, slack) = 1.0;
    table(row, num_cols) = b;
    if (b < 0.0) table.row(row) *= -1.0;
    table(row, num_real + row) = 1.0;
  };
  for (Index i = 0; i < m_ub; ++i) fill_row(i, lp.a_ub.row(i), lp.b_ub(i), num_struct + i);
  for (Index i = 0; i < m_eq; ++i) fill_row(m_ub + i, lp.a_eq.row(i), lp.b_eq(i), -1);

  std::vector<Index> basis(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i) basis[static_cast<std::size_t>(i)] = num_real + i;
  Tableau tab(std::move(table), std::move(basis), tol);

  // Phase 1: minimize the sum of artificials.
  VectorXd phase1 = VectorXd::Zero(num_cols);
  phase1.tail(m).setOnes();
  tab.set_cost(phase1);
  tab.optimize(num_cols);

  LpSolution result;
  const double infeasibility_tol = tol * std::max<double>(1.0, static_cast<double>(m));
  if (tab.objective() > infeasibility_tol) {
    result.status = LpStatus::Infeasible;
    return result;
  }

  // Drive remaining artificials out of the basis; drop redundant rows.
  for (Index i = tab.rows() - 1; i >= 0; --i) {
    if (tab.basic(i) < num_real) continue;
    Index col = -1;
    double largest = tol;
    for (Index j = 0; j < num_real; ++j) {
      if (std::abs(tab.entry(i, j)) > largest) {
        largest = std::abs(tab.entry(i, j));
        col = j;
      }
    }
    if (col >= 0) {
      tab.pivot(i, col);
    } else {
      tab.drop_row(i);
    }
  }

  // Phase 2.
  VectorXd phase2 = VectorXd::Zero(num_cols);
  for (Index j = 0; j < n; ++j) {
    const Index c = col_of[static_cast<std::size_t>(j)];
    phase2(c) = lp.cost(j);
    if (lp.free[static_cast<std::size_t>(j)]) phase2(c + 1) = -lp.cost(j);
  }
  tab.set_cost(phase2);
  if (!tab.optimize(num_real)) {
    result.status = LpStatus::Unbounded;
    return result;
  }

  VectorXd values = VectorXd::Zero(num_cols);
  for (Index i = 0; i < tab.rows(); ++i) values(tab.basic(i)) = tab.rhs(i);
  result.x.resize(n);
  for (Index j = 0; j < n; ++j) {
    const Index c = col_of[static_cast<std::size_t>(j)];
    result.x(j) = values(c) - (lp.free[static_cast<std::size_t>(j)] ? values(c + 1) : 0.0);
  }
  result.objective = lp.cost.dot(result.x);
  result.status = LpStatus::Optimal;
  return result;
}

}  // namespace zonopred
