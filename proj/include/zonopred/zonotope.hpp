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

#ifndef ZONOPRED_ZONOTOPE_HPP_
#define ZONOPRED_ZONOTOPE_HPP_

#include "zonopred/interval.hpp"
#include "zonopred/linprog.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

namespace zonopred
{

/// Generators with Euclidean norm at or below this are treated as null.
inline constexpr double kNullGeneratorTol = 1e-12;
/// Generators whose directions differ by at most this angle (rad) are merged.
inline constexpr double kParallelAngleTol = 1e-9;
/// Default slack for point containment at set boundaries.
inline constexpr double kContainmentTol = 1e-7;

/**
 * @brief Zonotope Z = {c + G xi | xi in [-1, 1]^m}.
 *
 * The center has dimension n and G is n x m, one column per generator.
 * m = 0 is a point. All entries must be finite.
 */
template <typename Scalar>
class Zonotope
{
public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Index = Eigen::Index;

  Zonotope() = default;

  /// Point zonotope at c.
  explicit Zonotope(Vector center) : center_(std::move(center)), generators_(center_.size(), 0)
  {
    validate();
  }

  Zonotope(Vector center, Matrix generators)
  : center_(std::move(center)), generators_(std::move(generators))
  {
    validate();
  }

  Index dim() const { return center_.size(); }
  Index num_generators() const { return generators_.cols(); }
  const Vector & center() const { return center_; }
  const Matrix & generators() const { return generators_; }

  friend std::ostream & operator<<(std::ostream & os, const Zonotope & z)
  {
    const Eigen::IOFormat fmt(Eigen::StreamPrecision, 0, ", ", "; ", "", "", "[", "]");
    return os << "Zonotope(c=" << z.center_.transpose().format(fmt)
              << ", G=" << z.generators_.format(fmt) << ')';
  }

private:
  void validate() const
  {
    if (generators_.rows() != center_.size()) {
      throw std::invalid_argument("Zonotope: generator rows differ from center dimension");
    }
    if (!center_.allFinite() || !generators_.allFinite()) {
      throw std::invalid_argument("Zonotope: non-finite entry");
    }
  }

  Vector center_;
  Matrix generators_;
};

using Zonotoped = Zonotope<double>;

/// Componentwise bounding box: c_i +- sum_j |G_ij|.
template <typename Scalar>
std::vector<Interval<Scalar>> interval_hull(const Zonotope<Scalar> & z)
{
  const typename Zonotope<Scalar>::Vector radius = z.generators().cwiseAbs().rowwise().sum();
  std::vector<Interval<Scalar>> hull;
  hull.reserve(static_cast<std::size_t>(z.dim()));
  for (Eigen::Index i = 0; i < z.dim(); ++i) {
    hull.emplace_back(z.center()(i) - radius(i), z.center()(i) + radius(i));
  }
  return hull;
}

template <typename Scalar, typename Derived>
Zonotope<Scalar> linear_map(const Eigen::MatrixBase<Derived> & a, const Zonotope<Scalar> & z)
{
  if (a.cols() != z.dim()) {
    throw std::invalid_argument("linear_map: dimension mismatch");
  }
  return Zonotope<Scalar>(a * z.center(), a * z.generators());
}

template <typename Scalar>
Zonotope<Scalar> minkowski_sum(const Zonotope<Scalar> & z1, const Zonotope<Scalar> & z2)
{
  if (z1.dim() != z2.dim()) {
    throw std::invalid_argument("minkowski_sum: dimension mismatch");
  }
  typename Zonotope<Scalar>::Matrix g(z1.dim(), z1.num_generators() + z2.num_generators());
  g << z1.generators(), z2.generators();
  return Zonotope<Scalar>(z1.center() + z2.center(), std::move(g));
}

/// Restriction of c and G to the listed coordinates, in the listed order.
template <typename Scalar>
Zonotope<Scalar> project(const Zonotope<Scalar> & z, std::span<const Eigen::Index> dims)
{
  typename Zonotope<Scalar>::Vector c(static_cast<Eigen::Index>(dims.size()));
  typename Zonotope<Scalar>::Matrix g(static_cast<Eigen::Index>(dims.size()), z.num_generators());
  for (std::size_t r = 0; r < dims.size(); ++r) {
    const Eigen::Index d = dims[r];
    if (d < 0 || d >= z.dim()) {
      throw std::out_of_range("project: dimension index out of range");
    }
    c(static_cast<Eigen::Index>(r)) = z.center()(d);
    g.row(static_cast<Eigen::Index>(r)) = z.generators().row(d);
  }
  return Zonotope<Scalar>(std::move(c), std::move(g));
}

namespace detail
{
template <typename Scalar>
typename Zonotope<Scalar>::Matrix select_columns(
  const typename Zonotope<Scalar>::Matrix & g, const std::vector<Eigen::Index> & cols)
{
  typename Zonotope<Scalar>::Matrix out(g.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) {
    out.col(static_cast<Eigen::Index>(k)) = g.col(cols[k]);
  }
  return out;
}
}  // namespace detail

template <typename Scalar>
Zonotope<Scalar> remove_null_generators(
  const Zonotope<Scalar> & z, Scalar tol = Scalar(kNullGeneratorTol))
{
  std::vector<Eigen::Index> keep;
  for (Eigen::Index j = 0; j < z.num_generators(); ++j) {
    if (z.generators().col(j).norm() > tol) keep.push_back(j);
  }
  return Zonotope<Scalar>(z.center(), detail::select_columns<Scalar>(z.generators(), keep));
}

/// Merges generators parallel within angle_tol (either sign) into one column
/// whose norm is the sum of the merged norms. Null generators are dropped.
template <typename Scalar>
Zonotope<Scalar> merge_parallel_generators(
  const Zonotope<Scalar> & z, Scalar angle_tol = Scalar(kParallelAngleTol))
{
  using Vector = typename Zonotope<Scalar>::Vector;
  const Zonotope<Scalar> cleaned = remove_null_generators(z);
  const auto & g = cleaned.generators();
  const Scalar sin_tol = std::sin(angle_tol);

  std::vector<Vector> directions;
  std::vector<Vector> merged;
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    const Vector col = g.col(j);
    const Vector unit = col.normalized();
    bool absorbed = false;
    for (std::size_t k = 0; k < directions.size(); ++k) {
      const Scalar cosine = directions[k].dot(unit);
      const Scalar sine = (unit - cosine * directions[k]).norm();
      if (sine <= sin_tol) {
        merged[k] += (cosine >= Scalar(0) ? col : Vector(-col));
        absorbed = true;
        break;
      }
    }
    if (!absorbed) {
      directions.push_back(unit);
      merged.push_back(col);
    }
  }

  typename Zonotope<Scalar>::Matrix out(z.dim(), static_cast<Eigen::Index>(merged.size()));
  for (std::size_t k = 0; k < merged.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = merged[k];
  return Zonotope<Scalar>(cleaned.center(), std::move(out));
}

/**
 * Order reduction by boxing. When the generator count exceeds budget, the
 * budget - n generators of largest Euclidean norm are kept (ties resolved
 * by column order) and the remaining ones are replaced by the axis-aligned
 * generators of their interval hull. The result encloses z.
 */
template <typename Scalar>
Zonotope<Scalar> reduce_generators(const Zonotope<Scalar> & z, Eigen::Index budget)
{
  const Eigen::Index n = z.dim();
  if (budget < n) {
    throw std::invalid_argument("reduce_generators: budget smaller than dimension");
  }
  const Eigen::Index m = z.num_generators();
  if (m <= budget) return z;

  const auto & g = z.generators();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  const typename Zonotope<Scalar>::Vector norms = g.colwise().norm().transpose();
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return norms(a) > norms(b);
  });

  const auto num_keep = static_cast<std::size_t>(budget - n);
  std::vector<Eigen::Index> keep(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(num_keep));
  std::sort(keep.begin(), keep.end());

  using Vector = typename Zonotope<Scalar>::Vector;
  Vector box = Vector::Zero(n);
  for (auto it = order.begin() + static_cast<std::ptrdiff_t>(num_keep); it != order.end(); ++it) {
    box += g.col(*it).cwiseAbs();
  }

  std::vector<Eigen::Index> box_rows;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (box(i) > Scalar(0)) box_rows.push_back(i);
  }
  typename Zonotope<Scalar>::Matrix out(
    n, static_cast<Eigen::Index>(keep.size() + box_rows.size()));
  out.leftCols(static_cast<Eigen::Index>(keep.size())) = detail::select_columns<Scalar>(g, keep);
  out.rightCols(static_cast<Eigen::Index>(box_rows.size())).setZero();
  for (std::size_t k = 0; k < box_rows.size(); ++k) {
    out(box_rows[k], static_cast<Eigen::Index>(keep.size() + k)) = box(box_rows[k]);
  }
  return Zonotope<Scalar>(z.center(), std::move(out));
}

/// Appends one axis-aligned generator of length radii(i) for each nonzero radius.
template <typename Scalar, typename Derived>
Zonotope<Scalar> dilate(const Zonotope<Scalar> & z, const Eigen::MatrixBase<Derived> & radii)
{
  if (radii.size() != z.dim()) {
    throw std::invalid_argument("dilate: dimension mismatch");
  }
  if ((radii.array() < Scalar(0)).any()) {
    throw std::invalid_argument("dilate: negative radius");
  }
  const Eigen::Index extra = (radii.array() > Scalar(0)).count();
  using Matrix = typename Zonotope<Scalar>::Matrix;
  Matrix g = Matrix::Zero(z.dim(), z.num_generators() + extra);
  g.leftCols(z.num_generators()) = z.generators();
  Eigen::Index col = z.num_generators();
  for (Eigen::Index i = 0; i < z.dim(); ++i) {
    if (radii(i) > Scalar(0)) g(i, col++) = radii(i);
  }
  return Zonotope<Scalar>(z.center(), std::move(g));
}

/**
 * Single zonotope enclosing the family {c + M xi | M in interval matrix, xi in [-1,1]^m}:
 * generators [mid(M) | D] with D diagonal, D_ii the i-th row sum of rad(M).
 * Zero diagonal entries contribute no column.
 */
template <typename Scalar, typename Derived>
Zonotope<Scalar> zonotope_inclusion(
  const Eigen::MatrixBase<Derived> & center, const IntervalMatrix<Scalar> & family)
{
  if (center.size() != family.rows()) {
    throw std::invalid_argument("zonotope_inclusion: dimension mismatch");
  }
  const typename Zonotope<Scalar>::Vector row_rad = family.rad().rowwise().sum();
  const Eigen::Index extra = (row_rad.array() > Scalar(0)).count();
  using Matrix = typename Zonotope<Scalar>::Matrix;
  Matrix g = Matrix::Zero(family.rows(), family.cols() + extra);
  g.leftCols(family.cols()) = family.mid();
  Eigen::Index col = family.cols();
  for (Eigen::Index i = 0; i < row_rad.size(); ++i) {
    if (row_rad(i) > Scalar(0)) g(i, col++) = row_rad(i);
  }
  return Zonotope<Scalar>(center, std::move(g));
}

/**
 * True iff some xi in [-1,1]^m gives ||c + G xi - p||_inf <= tol.
 * Decided by the LP  min t  s.t.  |c + G xi - p| <= t,  -1 <= xi <= 1.
 */
template <typename Scalar, typename Derived>
bool contains_point(
  const Zonotope<Scalar> & z, const Eigen::MatrixBase<Derived> & point,
  Scalar tol = Scalar(kContainmentTol))
{
  if (point.size() != z.dim()) {
    throw std::invalid_argument("contains_point: dimension mismatch");
  }
  const Eigen::VectorXd offset = (point.template cast<double>() - z.center().template cast<double>());
  const Eigen::Index n = z.dim();
  const Eigen::Index m = z.num_generators();
  if (m == 0) return offset.cwiseAbs().maxCoeff() <= static_cast<double>(tol);

  // Variables: xi (free, m), t (>= 0).
  const Eigen::MatrixXd g = z.generators().template cast<double>();
  LinearProgram lp(m + 1);
  lp.cost(m) = 1.0;
  for (Eigen::Index j = 0; j < m; ++j) lp.free[static_cast<std::size_t>(j)] = true;
  lp.a_ub = Eigen::MatrixXd::Zero(2 * n + 2 * m, m + 1);
  lp.b_ub.resize(2 * n + 2 * m);
  lp.a_ub.block(0, 0, n, m) = g;
  lp.a_ub.block(0, m, n, 1).setConstant(-1.0);
  lp.b_ub.head(n) = offset;
  lp.a_ub.block(n, 0, n, m) = -g;
  lp.a_ub.block(n, m, n, 1).setConstant(-1.0);
  lp.b_ub.segment(n, n) = -offset;
  lp.a_ub.block(2 * n, 0, m, m).setIdentity();
  lp.a_ub.block(2 * n + m, 0, m, m) = -Eigen::MatrixXd::Identity(m, m);
  lp.b_ub.tail(2 * m).setOnes();

  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal) {
    throw std::runtime_error("contains_point: containment program failed");
  }
  return sol.objective <= static_cast<double>(tol);
}

}  // namespace zonopred

#endif  // ZONOPRED_ZONOTOPE_HPP_
