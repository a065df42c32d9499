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

#include "zonopred/zonotope.hpp"

#include <doctest.h>

#include <array>
#include <random>

#include "support.hpp"

using namespace zonopred;
using doctest::Approx;

namespace
{

Zonotoped make(std::initializer_list<double> c, std::initializer_list<std::initializer_list<double>> columns)
{
  Eigen::VectorXd center(static_cast<Eigen::Index>(c.size()));
  Eigen::Index i = 0;
  for (double v : c) center(i++) = v;
  Eigen::MatrixXd g(center.size(), static_cast<Eigen::Index>(columns.size()));
  Eigen::Index j = 0;
  for (const auto & col : columns) {
    i = 0;
    for (double v : col) g(i++, j) = v;
    ++j;
  }
  return Zonotoped(center, g);
}

void check_hull_covers(const std::vector<Intervald> & outer, const std::vector<Intervald> & inner, double tol = 1e-12)
{
  REQUIRE(outer.size() == inner.size());
  for (std::size_t i = 0; i < outer.size(); ++i) {
    CHECK(outer[i].lo() <= inner[i].lo() + tol);
    CHECK(outer[i].hi() >= inner[i].hi() - tol);
  }
}

void check_hull_equal(const std::vector<Intervald> & a, const std::vector<Intervald> & b, double tol = 1e-12)
{
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].lo() == Approx(b[i].lo()).epsilon(tol));
    CHECK(a[i].hi() == Approx(b[i].hi()).epsilon(tol));
  }
}

}  // namespace

TEST_CASE("Zonotope validates its shape and entries")
{
  CHECK_THROWS_AS(Zonotoped(Eigen::Vector2d(0, 0), Eigen::MatrixXd::Zero(3, 1)), std::invalid_argument);
  CHECK_THROWS_AS(Zonotoped(Eigen::Vector2d(std::nan(""), 0)), std::invalid_argument);
  const Zonotoped point{Eigen::VectorXd(Eigen::Vector2d(1, 2))};
  CHECK(point.num_generators() == 0);
  CHECK(point.dim() == 2);
}

TEST_CASE("interval_hull")
{
  SUBCASE("unit box")
  {
    const auto h = interval_hull(make({0, 0}, {{1, 0}, {0, 1}}));
    CHECK(h[0] == Intervald(-1, 1));
    CHECK(h[1] == Intervald(-1, 1));
  }
  SUBCASE("point")
  {
    const auto h = interval_hull(Zonotoped{Eigen::VectorXd(Eigen::Vector2d(2, 3))});
    CHECK(h[0] == Intervald(2.0));
    CHECK(h[1] == Intervald(3.0));
  }
  SUBCASE("opposite generators match brute force")
  {
    const Zonotoped z = make({0}, {{1}, {-2}});
    const auto [lo, hi] = testing::brute_force_hull(z);
    CHECK(interval_hull(z)[0] == Intervald(lo(0), hi(0)));
    CHECK(interval_hull(z)[0] == Intervald(-3, 3));
  }
  SUBCASE("random zonotopes match brute force")
  {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 50; ++t) {
      const Zonotoped z = testing::random_zonotope(rng, 3, 6);
      const auto [lo, hi] = testing::brute_force_hull(z);
      const auto h = interval_hull(z);
      for (int i = 0; i < 3; ++i) {
        CHECK(h[i].lo() == Approx(lo(i)).epsilon(1e-12));
        CHECK(h[i].hi() == Approx(hi(i)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("linear_map and minkowski_sum")
{
  const Zonotoped unit = make({0, 0}, {{1, 0}, {0, 1}});
  SUBCASE("identity map")
  {
    const Zonotoped out = linear_map(Eigen::Matrix2d::Identity(), unit);
    CHECK(out.center() == unit.center());
    CHECK(out.generators() == unit.generators());
  }
  SUBCASE("sum with a point translates")
  {
    const Zonotoped out = minkowski_sum(unit, Zonotoped{Eigen::VectorXd(Eigen::Vector2d(3, -1))});
    CHECK(out.center() == Eigen::Vector2d(3, -1));
    CHECK(out.generators() == unit.generators());
  }
  SUBCASE("unit square plus unit square")
  {
    const Zonotoped out = minkowski_sum(unit, unit);
    const auto [lo, hi] = testing::brute_force_hull(out);
    CHECK(lo == Eigen::Vector2d(-2, -2));
    CHECK(hi == Eigen::Vector2d(2, 2));
    CHECK(interval_hull(out)[0] == Intervald(-2, 2));
  }
  SUBCASE("dimension mismatch")
  {
    CHECK_THROWS_AS(linear_map(Eigen::Matrix3d::Identity(), unit), std::invalid_argument);
    CHECK_THROWS_AS(minkowski_sum(unit, Zonotoped{Eigen::VectorXd::Zero(3)}), std::invalid_argument);
  }
  SUBCASE("hull of a mapped set covers mapped samples")
  {
    std::mt19937_64 rng(2);
    const Zonotoped z = testing::random_zonotope(rng, 3, 5);
    const Eigen::MatrixXd a = testing::uniform_matrix(rng, 2, 3, -2, 2);
    const auto h = interval_hull(linear_map(a, z));
    for (int s = 0; s < 10000; ++s) {
      const Eigen::VectorXd y = a * testing::sample_point(z, rng);
      REQUIRE(h[0].contains(y(0)));
      REQUIRE(h[1].contains(y(1)));
    }
  }
}

TEST_CASE("contains_point")
{
  const Zonotoped unit = make({0, 0}, {{1, 0}, {0, 1}});
  CHECK(contains_point(unit, Eigen::Vector2d(0.5, 0.5)));
  CHECK_FALSE(contains_point(unit, Eigen::Vector2d(1.5, 0)));
  const Zonotoped skew = make({0, 0}, {{1, 0}, {1, 1}});
  CHECK(contains_point(skew, Eigen::Vector2d(2, 1)));
  CHECK_FALSE(contains_point(skew, Eigen::Vector2d(0, 1.5)));
  CHECK(contains_point(Zonotoped{Eigen::VectorXd(Eigen::Vector2d(1, 1))}, Eigen::Vector2d(1, 1)));
  CHECK_FALSE(contains_point(Zonotoped{Eigen::VectorXd(Eigen::Vector2d(1, 1))}, Eigen::Vector2d(1, 1.1)));
  CHECK(contains_point(unit, Eigen::Vector2d(1 + 1e-8, 0)));
  CHECK_THROWS_AS(contains_point(unit, Eigen::Vector3d(0, 0, 0)), std::invalid_argument);
}

TEST_CASE("contains_point with a generator near roundoff scale")
{
  Eigen::MatrixXd g(2, 3);
  g << 2e-9, 0.19147728245620846, -0.078262321306001525, 0, 0.016582419085468491, 0.0067777158410137492;
  const Zonotoped z(Eigen::Vector2d(1.4926501886630659, 0.021485442015842522), g);
  CHECK(contains_point(z, Eigen::Vector2d(1.6058651478132728, 0.044845576942324758), 1e-6));
  CHECK_FALSE(contains_point(z, Eigen::Vector2d(1.9, 0.044845576942324758), 1e-6));
}

TEST_CASE("contains_point agrees with a dense grid oracle")
{
  std::mt19937_64 rng(7);
  int decided = 0;
  for (int t = 0; t < 60; ++t) {
    const Eigen::Index m = 1 + static_cast<Eigen::Index>(t % 4);
    const Zonotoped z = testing::random_zonotope(rng, 2, m);
    for (int s = 0; s < 10; ++s) {
      const Eigen::VectorXd p = z.center() + testing::uniform_vector(rng, 2, -2.0, 2.0);
      const auto oracle = testing::grid_distance(z, p, m <= 2 ? 401 : (m == 3 ? 81 : 31));
      const double tol = kContainmentTol;
      if (oracle.distance <= tol) {
        CHECK(contains_point(z, p));
        ++decided;
      } else if (oracle.distance > tol + oracle.bound) {
        CHECK_FALSE(contains_point(z, p));
        ++decided;
      }
    }
  }
  CHECK(decided > 300);
}

TEST_CASE("project")
{
  std::mt19937_64 rng(4);
  const Zonotoped z = testing::random_zonotope(rng, 4, 6);
  const std::array<Eigen::Index, 2> lead{0, 1};
  const Zonotoped p = project(z, lead);
  CHECK(p.center() == z.center().head<2>());
  CHECK(p.generators() == z.generators().topRows<2>());
  const std::array<Eigen::Index, 4> all{0, 1, 2, 3};
  CHECK(project(z, all).generators() == z.generators());
  const std::array<Eigen::Index, 2> picked{3, 1};
  const auto hz = interval_hull(z);
  const auto hp = interval_hull(project(z, picked));
  CHECK(hp[0] == hz[3]);
  CHECK(hp[1] == hz[1]);
  const std::array<Eigen::Index, 1> bad{4};
  CHECK_THROWS_AS(project(z, bad), std::out_of_range);
}

TEST_CASE("remove_null_generators and merge_parallel_generators")
{
  SUBCASE("null column dropped")
  {
    const Zonotoped z = remove_null_generators(make({0, 0}, {{1, 0}, {0, 0}, {0, 1}}));
    CHECK(z.generators() == (Eigen::MatrixXd(2, 2) << 1, 0, 0, 1).finished());
  }
  SUBCASE("colinear merge")
  {
    const Zonotoped z = merge_parallel_generators(make({0, 0}, {{1, 0}, {2, 0}}));
    REQUIRE(z.num_generators() == 1);
    CHECK(z.generators().col(0).isApprox(Eigen::Vector2d(3, 0)));
  }
  SUBCASE("sign-insensitive merge preserves the hull")
  {
    const Zonotoped src = make({0, 0}, {{1, 0}, {-2, 0}});
    const Zonotoped z = merge_parallel_generators(src);
    REQUIRE(z.num_generators() == 1);
    CHECK(z.generators().col(0).isApprox(Eigen::Vector2d(3, 0)));
    const auto [lo, hi] = testing::brute_force_hull(src);
    CHECK(interval_hull(z)[0] == Intervald(lo(0), hi(0)));
  }
  SUBCASE("random sets keep their hull")
  {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 50; ++t) {
      Eigen::MatrixXd g = testing::uniform_matrix(rng, 2, 6, -1, 1);
      g.col(3) = -0.5 * g.col(0);
      g.col(4) = 2.0 * g.col(1);
      g.col(5).setZero();
      const Zonotoped z(testing::uniform_vector(rng, 2, -1, 1), g);
      const Zonotoped cleaned = merge_parallel_generators(remove_null_generators(z));
      CHECK(cleaned.num_generators() == 3);
      check_hull_equal(interval_hull(cleaned), interval_hull(z));
    }
  }
}

TEST_CASE("reduce_generators")
{
  SUBCASE("within budget is unchanged")
  {
    const Zonotoped z = make({0, 0}, {{1, 0}, {0, 1}, {0.1, 0.1}});
    const Zonotoped r = reduce_generators(z, 4);
    CHECK(r.generators() == z.generators());
  }
  SUBCASE("smallest generators are boxed")
  {
    const Zonotoped z = make({0, 0}, {{1, 0}, {0, 1}, {0.1, 0.1}, {0.05, 0}, {0, 0.02}});
    const Zonotoped r = reduce_generators(z, 4);
    const Eigen::MatrixXd expected = (Eigen::MatrixXd(2, 4) << 1, 0, 0.15, 0, 0, 1, 0, 0.12).finished();
    CHECK(r.generators().isApprox(expected));
  }
  SUBCASE("budget below dimension")
  {
    CHECK_THROWS_AS(reduce_generators(make({0, 0}, {{1, 0}}), 1), std::invalid_argument);
  }
  SUBCASE("reduction is an over-approximation")
  {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 20; ++t) {
      const Zonotoped z = testing::random_zonotope(rng, 3, 12);
      const Eigen::Index budget = 3 + static_cast<Eigen::Index>(t % 6);
      const Zonotoped r = reduce_generators(z, budget);
      CHECK(r.num_generators() <= budget);
      check_hull_covers(interval_hull(r), interval_hull(z));
      for (int s = 0; s < 500; ++s) REQUIRE(contains_point(r, testing::sample_point(z, rng)));
    }
  }
  SUBCASE("ten thousand samples of a planar set stay inside")
  {
    std::mt19937_64 rng(17);
    const Zonotoped z = testing::random_zonotope(rng, 2, 10);
    const Zonotoped r = reduce_generators(z, 4);
    int outside = 0;
    for (int s = 0; s < 10000; ++s) outside += contains_point(r, testing::sample_point(z, rng)) ? 0 : 1;
    CHECK(outside == 0);
  }
}

TEST_CASE("dilate")
{
  const Zonotoped unit = make({0, 0}, {{1, 0}, {0, 1}});
  CHECK(remove_null_generators(dilate(unit, Eigen::Vector2d(0, 0))).generators() == unit.generators());
  const Zonotoped box = dilate(Zonotoped{Eigen::VectorXd::Zero(2)}, Eigen::Vector2d(1, 1));
  CHECK(interval_hull(box)[0] == Intervald(-1, 1));
  CHECK(interval_hull(box)[1] == Intervald(-1, 1));
  CHECK_THROWS_AS(dilate(unit, Eigen::Vector2d(-1, 0)), std::invalid_argument);
  CHECK_THROWS_AS(dilate(unit, Eigen::Vector3d(1, 0, 0)), std::invalid_argument);

  std::mt19937_64 rng(19);
  const Zonotoped z = testing::random_zonotope(rng, 2, 4);
  const Eigen::Vector2d r(0.3, 0.7);
  const auto before = interval_hull(z);
  const auto after = interval_hull(dilate(z, r));
  for (int i = 0; i < 2; ++i) {
    CHECK(after[i].lo() == Approx(before[i].lo() - r(i)));
    CHECK(after[i].hi() == Approx(before[i].hi() + r(i)));
  }
}

TEST_CASE("zonotope_inclusion")
{
  SUBCASE("degenerate family gives the midpoint generators")
  {
    const Eigen::MatrixXd mid = (Eigen::MatrixXd(2, 3) << 1, 2, 3, 4, 5, 6).finished();
    const Zonotoped z = zonotope_inclusion(Eigen::Vector2d(0, 0), IntervalMatrixd::point(mid));
    CHECK(z.generators() == mid);
  }
  SUBCASE("scalar family")
  {
    IntervalMatrixd m(1, 1);
    m.set(0, 0, Intervald(0.9, 1.1));
    const Zonotoped z = zonotope_inclusion(Eigen::VectorXd::Zero(1), m);
    REQUIRE(z.num_generators() == 2);
    CHECK(z.generators()(0, 0) == Approx(1.0));
    CHECK(z.generators()(0, 1) == Approx(0.1));
    CHECK(interval_hull(z)[0].lo() == Approx(-1.1));
    CHECK(interval_hull(z)[0].hi() == Approx(1.1));
    // The extreme member 1.1 reaches the hull exactly.
    CHECK(contains_point(z, Eigen::VectorXd::Constant(1, 1.1)));
  }
  SUBCASE("row radii form the diagonal block")
  {
    const Eigen::Matrix2d lo = (Eigen::Matrix2d() << 0.9, -0.1, 0, 1).finished();
    const Eigen::Matrix2d hi = (Eigen::Matrix2d() << 1.1, 0.1, 0, 1).finished();
    const Zonotoped z = zonotope_inclusion(Eigen::Vector2d(0, 0), IntervalMatrixd(lo, hi));
    const Eigen::MatrixXd expected = (Eigen::MatrixXd(2, 3) << 1, 0, 0.2, 0, 1, 0).finished();
    CHECK(z.generators().isApprox(expected));
  }
  SUBCASE("encloses every extreme-matrix zonotope")
  {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 20; ++t) {
      const Eigen::Matrix2d lo = testing::uniform_matrix(rng, 2, 2, -1, 1);
      const Eigen::Matrix2d hi = lo + testing::uniform_matrix(rng, 2, 2, 0, 0.5);
      const Eigen::Vector2d c = testing::uniform_vector(rng, 2, -1, 1);
      const Zonotoped z = zonotope_inclusion(c, IntervalMatrixd(lo, hi));
      for (unsigned mask = 0; mask < 16; ++mask) {
        Eigen::Matrix2d extreme;
        for (int k = 0; k < 4; ++k) extreme(k / 2, k % 2) = (mask >> k) & 1U ? hi(k / 2, k % 2) : lo(k / 2, k % 2);
        testing::for_each_sign_vector(2, [&](const Eigen::VectorXd & xi) {
          REQUIRE(contains_point(z, Eigen::Vector2d(c + extreme * xi)));
        });
      }
    }
  }
  SUBCASE("dimension mismatch")
  {
    CHECK_THROWS_AS(zonotope_inclusion(Eigen::Vector3d(0, 0, 0), IntervalMatrixd(2, 2)), std::invalid_argument);
  }
}
