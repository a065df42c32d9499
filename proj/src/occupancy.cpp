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

#include "zonopred/occupancy.hpp"

#include <array>

namespace zonopred
{

std::vector<OccupancySet> extract_occupancy(const ReachableTube & tube, const OccupancyOptions & options)
{
  static constexpr std::array<Eigen::Index, 2> kPosition{0, 1};
  std::vector<OccupancySet> sets;
  sets.reserve(tube.steps.size());
  for (std::size_t j = 1; j < tube.steps.size(); ++j) {
    Zonotoped z = project(tube.steps[j], std::span<const Eigen::Index>(kPosition));
    z = remove_null_generators(z);
    z = merge_parallel_generators(z);
    z = reduce_generators(z, options.budget);
    const Vector2 radii = options.dilation + static_cast<double>(j) * options.dilation_growth;
    z = remove_null_generators(dilate(z, radii));
    auto polygon = polygonize(z);
    sets.push_back({std::move(z), static_cast<int>(j), std::move(polygon)});
  }
  return sets;
}

}  // namespace zonopred
