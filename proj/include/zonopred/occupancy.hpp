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

#ifndef ZONOPRED_OCCUPANCY_HPP_
#define ZONOPRED_OCCUPANCY_HPP_

#include "zonopred/polygon.hpp"
#include "zonopred/reachability.hpp"
#include "zonopred/zonotope.hpp"

#include <vector>

namespace zonopred
{

struct OccupancySet
{
  Zonotoped zonotope;  ///< 2-dim, (px, py) in m
  int step = 0;        ///< prediction step j, 1 .. horizon
  std::vector<Point2<double>> polygon;

  double area() const { return polygon_area(polygon); }
};

struct OccupancyOptions
{
  Vector2 dilation{0.9, 0.9};      ///< m per axis
  Vector2 dilation_growth{0.0, 0.0};  ///< added per prediction step, off by default
  Eigen::Index budget = 10;
};

/**
 * Occupancy per prediction step j = 1 .. horizon: projection onto (px, py),
 * null-generator removal, parallel merge, order reduction, dilation by
 * dilation + j * dilation_growth, polygonization.
 */
std::vector<OccupancySet> extract_occupancy(const ReachableTube & tube, const OccupancyOptions & options = {});

}  // namespace zonopred

#endif  // ZONOPRED_OCCUPANCY_HPP_
