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

#include "zonopred/control_set.hpp"

#include "zonopred/linprog.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace zonopred
{

ControlWindow::ControlWindow(std::size_t capacity) : capacity_(capacity)
{
  if (capacity == 0) throw std::invalid_argument("ControlWindow: capacity must be positive");
}

void ControlWindow::push(const ControlSample & u)
{
  if (!std::isfinite(u.a) || !std::isfinite(u.kappa)) {
    throw std::invalid_argument("ControlWindow: non-finite control sample");
  }
  samples_.push_back(u);
  while (samples_.size() > capacity_) samples_.pop_front();
}

ControlWindow push_observation(ControlWindow w, const ControlSample & u)
{
  w.push(u);
  return w;
}

GeneratorBasis primitive_basis(int num_generators)
{
  if (num_generators < 2) throw std::invalid_argument("primitive_basis: need at least 2 generators");
  GeneratorBasis basis{Eigen::Matrix2Xd(2, num_generators)};
  for (int i = 0; i < num_generators; ++i) {
    const double angle = i * std::numbers::pi / num_generators;
    basis.directions.col(i) << std::cos(angle), std::sin(angle);
  }
  // Exact zeros keep axis-aligned directions axis-aligned.
  basis.directions = (basis.directions.array().abs() < 1e-15).select(0.0, basis.directions);
  return basis;
}

namespace
{

// Variable layout: c (2, free) | alpha (n_g) | delta (n_g * N, free, sample-major).
LinearProgram enclosure_program(const Eigen::Matrix2Xd & u, const Eigen::Matrix2Xd & g)
{
  const Eigen::Index ng = g.cols();
  const Eigen::Index n = u.cols();
  const Eigen::Index num_vars = 2 + ng + ng * n;
  auto delta = [&](Eigen::Index i, Eigen::Index j) { return 2 + ng + j * ng + i; };

  LinearProgram lp(num_vars);
  lp.free[0] = lp.free[1] = true;
  for (Eigen::Index v = 2 + ng; v < num_vars; ++v) lp.free[static_cast<std::size_t>(v)] = true;
  lp.cost.segment(2, ng).setOnes();

  lp.a_eq = Eigen::MatrixXd::Zero(2 * n, num_vars);
  lp.b_eq.resize(2 * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index d = 0; d < 2; ++d) {
      const Eigen::Index row = 2 * j + d;
      lp.a_eq(row, d) = 1.0;
      for (Eigen::Index i = 0; i < ng; ++i) lp.a_eq(row, delta(i, j)) = g(d, i);
      lp.b_eq(row) = u(d, j);
    }
  }

  lp.a_ub = Eigen::MatrixXd::Zero(2 * ng * n, num_vars);
  lp.b_ub = Eigen::VectorXd::Zero(2 * ng * n);
  Eigen::Index row = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < ng; ++i) {
      lp.a_ub(row, delta(i, j)) = 1.0;
      lp.a_ub(row++, 2 + i) = -1.0;
      lp.a_ub(row, delta(i, j)) = -1.0;
      lp.a_ub(row++, 2 + i) = -1.0;
    }
  }
  return lp;
}

void check_status(const LpSolution & sol)
{
  if (sol.status == LpStatus::Infeasible) {
    throw std::runtime_error("fit_zonotope: enclosure program infeasible (basis does not span the plane)");
  }
  if (sol.status == LpStatus::Unbounded) {
    throw std::runtime_error("fit_zonotope: enclosure program unbounded");
  }
}

}  // namespace

ZonotopeFit fit_zonotope(
  std::span<const ControlSample> samples, const GeneratorBasis & basis, const AxisScaling & scaling)
{
  if (samples.empty()) throw std::invalid_argument("fit_zonotope: no samples");
  if (!(scaling.a > 0.0) || !(scaling.kappa > 0.0)) {
    throw std::invalid_argument("fit_zonotope: axis scales must be positive");
  }
  const Eigen::Index ng = basis.size();
  const Vector2 scale = scaling.vector();

  Eigen::Matrix2Xd u(2, static_cast<Eigen::Index>(samples.size()));
  for (std::size_t j = 0; j < samples.size(); ++j) {
    u.col(static_cast<Eigen::Index>(j)) = samples[j].vector().cwiseQuotient(scale);
  }

  LinearProgram lp = enclosure_program(u, basis.directions);
  const LpSolution first = solve_lp(lp);
  check_status(first);

  // Tie-break among optimal fits: cap sum(alpha) at the optimum, then
  // minimize sum_i (i + 1) * alpha_i.
  const double cap = first.objective + 1e-9 * std::max(1.0, first.objective);
  const Eigen::Index num_vars = lp.num_vars();
  Eigen::MatrixXd a_ub(lp.a_ub.rows() + 1, num_vars);
  a_ub << lp.a_ub, Eigen::RowVectorXd::Zero(num_vars);
  a_ub.row(a_ub.rows() - 1).segment(2, ng).setOnes();
  Eigen::VectorXd b_ub(lp.b_ub.size() + 1);
  b_ub << lp.b_ub, cap;
  lp.a_ub = std::move(a_ub);
  lp.b_ub = std::move(b_ub);
  lp.cost.setZero();
  for (Eigen::Index i = 0; i < ng; ++i) lp.cost(2 + i) = static_cast<double>(i + 1);
  const LpSolution second = solve_lp(lp);
  check_status(second);

  ZonotopeFit fit;
  fit.center = ControlSample::from_vector(second.x.head<2>().cwiseProduct(scale));
  fit.alphas = second.x.segment(2, ng).cwiseMax(0.0);
  fit.objective = fit.alphas.sum();
  fit.scaling = scaling;
  return fit;
}

ControlInputSet expand_control_set(
  const ZonotopeFit & fit, const GeneratorBasis & basis, const Vector2 & g_u1, const Vector2 & g_u2)
{
  if (fit.alphas.size() != basis.size()) {
    throw std::invalid_argument("expand_control_set: alpha count differs from basis size");
  }
  const Vector2 scale = fit.scaling.vector();
  std::vector<Vector2> columns;
  for (Eigen::Index i = 0; i < basis.size(); ++i) {
    if (fit.alphas(i) > 0.0) {
      columns.push_back(fit.alphas(i) * basis.directions.col(i).cwiseProduct(scale));
    }
  }
  if (g_u1.squaredNorm() > 0.0) columns.push_back(g_u1);
  if (g_u2.squaredNorm() > 0.0) columns.push_back(g_u2);

  Eigen::Matrix2Xd g(2, static_cast<Eigen::Index>(columns.size()));
  for (std::size_t k = 0; k < columns.size(); ++k) g.col(static_cast<Eigen::Index>(k)) = columns[k];

  ControlInputSet set{Zonotoped(fit.center.vector(), g), fit.alphas, fit.center, {}};
  return set;
}

ControlInputSet estimate_control_set(const ControlWindow & window, const ControlSetOptions & options)
{
  if (window.empty()) throw std::invalid_argument("estimate_control_set: empty window");
  const std::vector<ControlSample> samples = window.samples();
  const GeneratorBasis basis = primitive_basis(options.num_generators);
  const Vector2 g_u1(options.expansion_a, 0.0);
  const Vector2 g_u2(0.0, options.expansion_kappa);

  ZonotopeFit fit;
  if (samples.size() < 2) {
    fit.center = samples.back();
    fit.alphas = Eigen::VectorXd::Zero(basis.size());
    fit.scaling = options.scaling;
  } else {
    fit = fit_zonotope(samples, basis, options.scaling);
  }
  ControlInputSet set = expand_control_set(fit, basis, g_u1, g_u2);
  set.window = samples;
  return set;
}

ControlInputSet bounding_box_set(std::span<const ControlSample> samples)
{
  if (samples.empty()) throw std::invalid_argument("bounding_box_set: no samples");
  Vector2 lo = samples.front().vector();
  Vector2 hi = lo;
  for (const auto & s : samples) {
    lo = lo.cwiseMin(s.vector());
    hi = hi.cwiseMax(s.vector());
  }
  const Vector2 center = (lo + hi) / 2.0;
  const Vector2 radius = (hi - lo) / 2.0;
  const Zonotoped point{Eigen::VectorXd(center)};
  ControlInputSet set{dilate(point, radius), Eigen::VectorXd(), ControlSample::from_vector(center), {}};
  return set;
}

}  // namespace zonopred
