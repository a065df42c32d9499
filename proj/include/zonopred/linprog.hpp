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

#ifndef ZONOPRED_LINPROG_HPP_
#define ZONOPRED_LINPROG_HPP_

#include <Eigen/Dense>

#include <vector>

namespace zonopred
{

/**
 * Dense linear program
 *
 *   minimize    cost' x
 *   subject to  A_ub x <= b_ub
 *               A_eq x  = b_eq
 *               x_j >= 0   unless free[j]
 *
 * Empty constraint blocks are allowed (zero rows, matching column count).
 */
struct LinearProgram
{
  Eigen::VectorXd cost;
  Eigen::MatrixXd a_ub;
  Eigen::VectorXd b_ub;
  Eigen::MatrixXd a_eq;
  Eigen::VectorXd b_eq;
  std::vector<bool> free;  ///< per variable; empty means all nonnegative

  explicit LinearProgram(Eigen::Index num_vars)
  : cost(Eigen::VectorXd::Zero(num_vars)),
    a_ub(0, num_vars),
    b_ub(0),
    a_eq(0, num_vars),
    b_eq(0),
    free(static_cast<std::size_t>(num_vars), false)
  {
  }

  Eigen::Index num_vars() const { return cost.size(); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution
{
  LpStatus status = LpStatus::Infeasible;
  Eigen::VectorXd x;
  double objective = 0.0;
};

/// Two-phase tableau simplex with Bland's rule. Deterministic for a given input.
LpSolution solve_lp(const LinearProgram & lp, double tol = 1e-9);

}  // namespace zonopred

#endif  // ZONOPRED_LINPROG_HPP_
