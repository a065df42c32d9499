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

#include "zonopred/polygon.hpp"

#include <doctest.h>

#include <random>

#include "support.hpp"

using namespace zonopred;
using doctest::Approx;

namespace
{

bool has_vertex(const std::vector<Point2<double>> & poly, double x, double y)
{
  for (const auto & p : poly) {
    if (std::abs(p.x() - x) < 1e-12 && std::abs(p.y() - y) < 1e-12) return true;
  }
  return false;
}

double signed_area(const std::vector<Point2<double>> & poly)
{
  double s = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto & a = poly[i];
    const auto & b = poly[(i + 1) % poly.size()];
    s += a.x() * b.y() - b.x() * a.y();
  }
  return 0.5 * s;
}

}  // namespace

TEST_CASE("polygonize reference shapes")
{
  SUBCASE("unit box")
  {
    const auto poly = polygonize(Zonotoped(Eigen::Vector2d(0, 0), Eigen::Matrix2d::Identity()));
    REQUIRE(poly.size() == 4);
    for (double x : {-1.0, 1.0}) {
      for (double y : {-1.0, 1.0}) CHECK(has_vertex(poly, x, y));
    }
    CHECK(polygon_area(poly) == Approx(4.0));
  }
  SUBCASE("segment")
  {
    const auto poly = polygonize(Zonotoped(Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0)));
    REQUIRE(poly.size() == 2);
    CHECK(has_vertex(poly, 1, 0));
    CHECK(has_vertex(poly, -1, 0));
    CHECK(polygon_area(poly) == 0.0);
  }
  SUBCASE("point")
  {
    const auto poly = polygonize(Zonotoped{Eigen::VectorXd(Eigen::Vector2d(2, 3))});
    REQUIRE(poly.size() == 1);
    CHECK(has_vertex(poly, 2, 3));
  }
  SUBCASE("skewed pair")
  {
    const Eigen::Matrix2d g = (Eigen::Matrix2d() << 1, 1, 0, 1).finished();
    const auto poly = polygonize(Zonotoped(Eigen::Vector2d(0, 0), g));
    CHECK(poly.size() == 4);
    CHECK(has_vertex(poly, 2, 1));
    CHECK(has_vertex(poly, 0, -1));
    CHECK(polygon_area(poly) == Approx(4.0 * std::abs(g.determinant())));
  }
  SUBCASE("parallel generators collapse")
  {
    const Eigen::Matrix<double, 2, 3> g = (Eigen::Matrix<double, 2, 3>() << 1, -2, 0, 0, 0, 1).finished();
    const auto poly = polygonize(Zonotoped(Eigen::Vector2d(0, 0), g));
    CHECK(poly.size() == 4);
    CHECK(has_vertex(poly, 3, 1));
  }
  SUBCASE("wrong dimension")
  {
    CHECK_THROWS_AS(polygonize(Zonotoped{Eigen::VectorXd::Zero(3)}), std::invalid_argument);
  }
}

TEST_CASE("polygon area equals four times the sum of pairwise generator determinants")
{
  std::mt19937_64 rng(29);
  for (int t = 0; t < 200; ++t) {
    const Eigen::Index m = 1 + static_cast<Eigen::Index>(t % 6);
    const Zonotoped z = testing::random_zonotope(rng, 2, m, 3.0);
    double expected = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index j = i + 1; j < m; ++j) {
        Eigen::Matrix2d pair;
        pair << z.generators().col(i), z.generators().col(j);
        expected += std::abs(pair.determinant());
      }
    }
    expected *= 4.0;
    const auto poly = polygonize(z);
    CHECK(poly.size() == static_cast<std::size_t>(m == 1 ? 2 : 2 * m));
    CHECK(std::abs(polygon_area(poly) - expected) <= 1e-9 * std::max(1.0, expected));
    if (m > 1) CHECK(signed_area(poly) > 0.0);
    for (const auto & v : poly) CHECK(contains_point(z, Eigen::Vector2d(v.x(), v.y()), 1e-9));
  }
}
