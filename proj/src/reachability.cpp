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

#include "zonopred/reachability.hpp"

#include "zonopred/interval.hpp"

#include <stdexcept>

namespace zonopred
{

Zonotoped initial_set(const EkfBelief & belief, const Vector4 & pose_radii)
{
  const Zonotoped point{Eigen::VectorXd(belief.mean.pose().vector())};
  return remove_null_generators(dilate(point, pose_radii));
}

Vector4 default_initial_radii(const EkfBelief & belief, const ReachabilityOptions & options)
{
  const Vector4 sigma = belief.covariance.diagonal().head<4>().cwiseMax(0.0).cwiseSqrt();
  return (options.sigma_multiplier * sigma).cwiseMax(options.radius_floor);
}

Zonotoped propagate_step(
  const Zonotoped & state_set, const ControlInputSet & controls, const ModelParams & params,
  Eigen::Index budget)
{
  if (state_set.dim() != 4 || controls.zonotope.dim() != 2) {
    throw std::invalid_argument("propagate_step: expected 4-dim state set and 2-dim control set");
  }

  const Vector4 cx = state_set.center();
  const Vector2 cu = controls.zonotope.center();
  const Vector4 center =
    step_nominal(VehicleState::from_vector(cx), ControlSample::from_vector(cu), params).vector();

  const auto state_hull = interval_hull(state_set);
  const auto input_hull = interval_hull(controls.zonotope);
  const IntervalLinearization lin =
    interval_matrices(state_hull[2], state_hull[3], input_hull[1], params);

  const IntervalMatrixd family = hconcat(
    interval_matrix_map(lin.a, state_set.generators()),
    interval_matrix_map(lin.b, controls.zonotope.generators()));
  const Zonotoped enclosed = zonotope_inclusion(center, family);
  return reduce_generators(remove_null_generators(enclosed), budget);
}

ReachableTube propagate(
  const EkfBelief & belief, const ControlInputSet & controls, int horizon, const ModelParams & params,
  const ReachabilityOptions & options)
{
  if (horizon < 1) throw std::invalid_argument("propagate: horizon must be at least 1");
  ReachableTube tube{{}, horizon, params};
  tube.steps.reserve(static_cast<std::size_t>(horizon) + 1);
  tube.steps.push_back(
    reduce_generators(initial_set(belief, default_initial_radii(belief, options)), options.budget));
  for (int k = 0; k < horizon; ++k) {
    tube.steps.push_back(propagate_step(tube.steps.back(), controls, params, options.budget));
  }
  return tube;
}

}  // namespace zonopred
