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

#ifndef ZONOPRED_POLYGON_HPP_
#define ZONOPRED_POLYGON_HPP_

#include "zonopred/zonotope.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace zonopred
{

template <typename Scalar>
using Point2 = Eigen::Matrix<Scalar, 2, 1>;

/**
 * Boundary vertices of a 2-dim zonotope in counterclockwise order.
 *
 * Parallel generators are merged first, so m merged generators give 2m
 * vertices (a segment for m = 1, the center alone for m = 0). The walk
 * starts at the lowest vertex c - sum(g_i) with every g_i oriented into
 * the upper half-plane and sorted by angle.
 */
template <typename Scalar>
std::vector<Point2<Scalar>> polygonize(const Zonotope<Scalar> & z)
{
  if (z.dim() != 2) {
    throw std::invalid_argument("polygonize: zonotope must be 2-dimensional");
  }
  const Zonotope<Scalar> simple = merge_parallel_generators(z);
  const Point2<Scalar> c = simple.center();
  if (simple.num_generators() == 0) return {c};

  std::vector<Point2<Scalar>> gens;
  for (Eigen::Index j = 0; j < simple.num_generators(); ++j) {
    Point2<Scalar> g = simple.generators().col(j);
    if (g.y() < Scalar(0) || (g.y() == Scalar(0) && g.x() < Scalar(0))) g = -g;
    gens.push_back(g);
  }
  std::stable_sort(gens.begin(), gens.end(), [](const Point2<Scalar> & a, const Point2<Scalar> & b) {
    return std::atan2(a.y(), a.x()) < std::atan2(b.y(), b.x());
  });

  Point2<Scalar> v = c;
  for (const auto & g : gens) v -= g;
  std::vector<Point2<Scalar>> vertices;
  vertices.reserve(2 * gens.size());
  for (const auto & g : gens) {
    v += Scalar(2) * g;
    vertices.push_back(v);
  }
  for (const auto & g : gens) {
    v -= Scalar(2) * g;
    vertices.push_back(v);
  }
  return vertices;
}

/// Shoelace area of a simple polygon (positive for counterclockwise order).
template <typename Scalar>
Scalar polygon_area(const std::vector<Point2<Scalar>> & vertices)
{
  Scalar twice = 0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const auto & a = vertices[i];
    const auto & b = vertices[(i + 1) % vertices.size()];
    twice += a.x() * b.y() - a.y() * b.x();
  }
  return twice / Scalar(2);
}

}  // namespace zonopred

#endif  // ZONOPRED_POLYGON_HPP_
