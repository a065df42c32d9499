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

#ifndef ZONOPRED_REACHABILITY_HPP_
#define ZONOPRED_REACHABILITY_HPP_

#include "zonopred/control_set.hpp"
#include "zonopred/ekf.hpp"
#include "zonopred/vehicle_model.hpp"
#include "zonopred/zonotope.hpp"

#include <vector>

namespace zonopred
{

/// Per-step 4-dim state sets (px, py, theta, v); steps[0] is the initial set.
struct ReachableTube
{
  std::vector<Zonotoped> steps;
  int horizon = 0;
  ModelParams params;
};

struct ReachabilityOptions
{
  Eigen::Index budget = 10;   ///< generator budget applied after every step
  double sigma_multiplier = 2.0;
  Vector4 radius_floor = Vector4::Zero();
};

/// Axis box around the EKF pose/speed mean with the given half-widths.
Zonotoped initial_set(const EkfBelief & belief, const Vector4 & pose_radii);

/// max(k * sigma_i, floor_i) from the EKF covariance diagonal.
Vector4 default_initial_radii(const EkfBelief & belief, const ReachabilityOptions & options = {});

/**
 * One step of the set propagation:
 *   c' = f(c_x, c_u),
 *   H' = <>( A_k H_x | B_k H_u ),
 * with A_k, B_k the interval linearization over the hulls of theta, v
 * (state set) and kappa (input set), followed by order reduction.
 */
Zonotoped propagate_step(
  const Zonotoped & state_set, const ControlInputSet & controls, const ModelParams & params,
  Eigen::Index budget = 10);

/// Iterates propagate_step over the horizon with the same control set.
ReachableTube propagate(
  const EkfBelief & belief, const ControlInputSet & controls, int horizon, const ModelParams & params,
  const ReachabilityOptions & options = {});

}  // namespace zonopred

#endif  // ZONOPRED_REACHABILITY_HPP_
