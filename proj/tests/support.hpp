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

#ifndef ZONOPRED_TESTS_SUPPORT_HPP_
#define ZONOPRED_TESTS_SUPPORT_HPP_

// Sampling helpers and brute-force oracles shared by the unit and acceptance tests.
// The oracles deliberately avoid the library code paths they check.

#include "zonopred/control_set.hpp"
#include "zonopred/zonotope.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <span>
#include <vector>

namespace zonopred::testing
{

inline double uniform(std::mt19937_64 & rng, double lo, double hi)
{
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Eigen::VectorXd uniform_vector(std::mt19937_64 & rng, Eigen::Index n, double lo, double hi)
{
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = uniform(rng, lo, hi);
  return v;
}

inline Eigen::MatrixXd uniform_matrix(std::mt19937_64 & rng, Eigen::Index rows, Eigen::Index cols, double lo, double hi)
{
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) m.col(j) = uniform_vector(rng, rows, lo, hi);
  return m;
}

inline Zonotoped random_zonotope(std::mt19937_64 & rng, Eigen::Index dim, Eigen::Index num_generators, double scale = 1.0)
{
  return Zonotoped(uniform_vector(rng, dim, -scale, scale), uniform_matrix(rng, dim, num_generators, -scale, scale));
}

/// c + G xi with xi uniform in [-1, 1]^m (covers the set, not uniform over it).
inline Eigen::VectorXd sample_point(const Zonotoped & z, std::mt19937_64 & rng)
{
  return z.center() + z.generators() * uniform_vector(rng, z.num_generators(), -1.0, 1.0);
}

/// A random vertex of the parallelotope image: xi in {-1, 1}^m.
inline Eigen::VectorXd sample_vertex(const Zonotoped & z, std::mt19937_64 & rng)
{
  Eigen::VectorXd xi(z.num_generators());
  for (Eigen::Index i = 0; i < xi.size(); ++i) xi(i) = (rng() & 1U) ? 1.0 : -1.0;
  return z.center() + z.generators() * xi;
}

/// Calls f on every xi of {-1, 1}^m.
inline void for_each_sign_vector(Eigen::Index m, const std::function<void(const Eigen::VectorXd &)> & f)
{
  Eigen::VectorXd xi(m);
  for (unsigned long mask = 0; mask < (1UL << m); ++mask) {
    for (Eigen::Index i = 0; i < m; ++i) xi(i) = (mask >> i) & 1UL ? 1.0 : -1.0;
    f(xi);
  }
}

/// Hull of a zonotope by enumerating every sign vector.
inline std::pair<Eigen::VectorXd, Eigen::VectorXd> brute_force_hull(const Zonotoped & z)
{
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(z.dim(), std::numeric_limits<double>::infinity());
  Eigen::VectorXd hi = -lo;
  if (z.num_generators() == 0) return {z.center(), z.center()};
  for_each_sign_vector(z.num_generators(), [&](const Eigen::VectorXd & xi) {
    const Eigen::VectorXd p = z.center() + z.generators() * xi;
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  });
  return {lo, hi};
}

/**
 * Grid oracle for 2-dim membership (z must be planar): minimum over a regular xi grid of
 * ||c + G xi - p||_inf. The returned bound is the worst-case grid error, so
 * distance <= tol decides "inside" and distance > tol + bound decides "outside".
 */
struct GridDistance
{
  double distance;
  double bound;
};

inline GridDistance grid_distance(const Zonotoped & z, const Eigen::VectorXd & p, int points_per_axis)
{
  const Eigen::Index m = z.num_generators();
  const double h = 2.0 / (points_per_axis - 1);
  const Eigen::Matrix2Xd g = z.generators();
  const Eigen::Vector2d offset = z.center() - p;
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> idx(static_cast<std::size_t>(m), 0);
  while (true) {
    Eigen::Vector2d q = offset;
    for (Eigen::Index i = 0; i < m; ++i) q += (-1.0 + h * idx[static_cast<std::size_t>(i)]) * g.col(i);
    best = std::min(best, q.cwiseAbs().maxCoeff());
    Eigen::Index k = 0;
    while (k < m && ++idx[static_cast<std::size_t>(k)] == points_per_axis) idx[static_cast<std::size_t>(k++)] = 0;
    if (k == m) break;
  }
  const double bound = 0.5 * h * g.cwiseAbs().rowwise().sum().maxCoeff();
  return {best, bound};
}

/**
 * Reference solution of the minimum-spread enclosure fit through the
 * half-space description of a 2-dim zonotope. With normals n_i orthogonal to
 * each basis direction g_i, a sample set lies in Z(c, [alpha_k g_k]) iff
 *
 *   n_i . c + sum_k alpha_k |n_i . g_k| >= max_j n_i . u_j
 *  -n_i . c + sum_k alpha_k |n_i . g_k| >= -min_j n_i . u_j
 *
 * for every i. The resulting program in (c, alpha >= 0) is pointed, so its
 * optimum sits at a vertex; every vertex is enumerated by choosing 2 + n_g
 * active constraints. Returns the optimal sum of alphas (normalized units).
 */
inline double reference_fit_objective(const Eigen::Matrix2Xd & samples, const Eigen::Matrix2Xd & basis)
{
  const Eigen::Index ng = basis.cols();
  const Eigen::Index nv = 2 + ng;
  Eigen::Matrix2Xd normals(2, ng);
  for (Eigen::Index i = 0; i < ng; ++i) normals.col(i) << -basis(1, i), basis(0, i);

  // Rows r of A x >= b, x = (c, alpha).
  std::vector<Eigen::RowVectorXd> rows;
  std::vector<double> rhs;
  for (Eigen::Index i = 0; i < ng; ++i) {
    const Eigen::RowVectorXd proj = normals.col(i).transpose() * samples;
    Eigen::RowVectorXd spread(ng);
    for (Eigen::Index k = 0; k < ng; ++k) spread(k) = std::abs(normals.col(i).dot(basis.col(k)));
    Eigen::RowVectorXd upper(nv), lower(nv);
    upper << normals.col(i).transpose(), spread;
    lower << -normals.col(i).transpose(), spread;
    rows.push_back(upper);
    rhs.push_back(proj.maxCoeff());
    rows.push_back(lower);
    rhs.push_back(-proj.minCoeff());
  }
  for (Eigen::Index k = 0; k < ng; ++k) {
    Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(nv);
    r(2 + k) = 1.0;
    rows.push_back(r);
    rhs.push_back(0.0);
  }

  const std::size_t nc = rows.size();
  double best = std::numeric_limits<double>::infinity();
  std::vector<bool> pick(nc, false);
  std::fill(pick.begin(), pick.begin() + nv, true);
  do {
    Eigen::MatrixXd a(nv, nv);
    Eigen::VectorXd b(nv);
    Eigen::Index r = 0;
    for (std::size_t i = 0; i < nc; ++i) {
      if (pick[i]) {
        a.row(r) = rows[i];
        b(r++) = rhs[i];
      }
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (lu.rank() < nv) continue;
    const Eigen::VectorXd x = lu.solve(b);
    bool feasible = true;
    for (std::size_t i = 0; i < nc && feasible; ++i) {
      feasible = rows[i].dot(x) >= rhs[i] - 1e-9 * std::max(1.0, std::abs(rhs[i]));
    }
    if (feasible) best = std::min(best, x.tail(ng).sum());
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return best;
}

/// Samples as normalized 2 x N columns.
inline Eigen::Matrix2Xd normalized(std::span<const ControlSample> samples, const AxisScaling & scaling)
{
  Eigen::Matrix2Xd u(2, static_cast<Eigen::Index>(samples.size()));
  for (std::size_t j = 0; j < samples.size(); ++j) {
    u.col(static_cast<Eigen::Index>(j)) = samples[j].vector().cwiseQuotient(scaling.vector());
  }
  return u;
}

}  // namespace zonopred::testing

#endif  // ZONOPRED_TESTS_SUPPORT_HPP_
