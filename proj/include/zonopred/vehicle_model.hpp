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

#ifndef ZONOPRED_VEHICLE_MODEL_HPP_
#define ZONOPRED_VEHICLE_MODEL_HPP_

#include "zonopred/interval.hpp"

#include <Eigen/Dense>

namespace zonopred
{

using Vector2 = Eigen::Vector2d;
using Vector4 = Eigen::Vector4d;
using Vector6 = Eigen::Matrix<double, 6, 1>;
using Matrix6 = Eigen::Matrix<double, 6, 6>;

/// Pose and speed of the single-track kinematic model. Angles stay unwrapped.
struct VehicleState
{
  double px = 0.0;     ///< m
  double py = 0.0;     ///< m
  double theta = 0.0;  ///< rad
  double v = 0.0;      ///< m/s

  Vector4 vector() const { return {px, py, theta, v}; }
  static VehicleState from_vector(const Vector4 & x) { return {x(0), x(1), x(2), x(3)}; }
};

/// Acceleration (m/s^2) and path curvature (1/m).
struct ControlSample
{
  double a = 0.0;
  double kappa = 0.0;

  Vector2 vector() const { return {a, kappa}; }
  static ControlSample from_vector(const Vector2 & u) { return {u(0), u(1)}; }
};

/// Pose, speed and the two control actions modeled as random-walk states.
struct AugmentedState
{
  double px = 0.0;
  double py = 0.0;
  double theta = 0.0;
  double v = 0.0;
  double a = 0.0;
  double kappa = 0.0;

  Vector6 vector() const { return (Vector6() << px, py, theta, v, a, kappa).finished(); }
  static AugmentedState from_vector(const Vector6 & x) { return {x(0), x(1), x(2), x(3), x(4), x(5)}; }
  VehicleState pose() const { return {px, py, theta, v}; }
  ControlSample control() const { return {a, kappa}; }
};

struct ModelParams
{
  double sampling_time = 0.2;  ///< s

  explicit ModelParams(double ts = 0.2);
};

/// Euler-forward step of the kinematic model.
VehicleState step_nominal(const VehicleState & x, const ControlSample & u, const ModelParams & params);

/// Euler step of the augmented model with the control states held.
AugmentedState augmented_step(const AugmentedState & x, const ModelParams & params);

/// Jacobian of augmented_step with respect to the state.
Matrix6 augmented_jacobian(const AugmentedState & x, const ModelParams & params);

/// Interval system and input matrices of the pose/speed subsystem.
struct IntervalLinearization
{
  IntervalMatrixd a;  ///< 4 x 4
  IntervalMatrixd b;  ///< 4 x 2, columns (a, kappa)
};

/**
 * Encloses every linearization of step_nominal over theta, v and kappa
 * ranging in the given intervals. Entries follow the partial derivatives
 * d px/d theta = -Ts v sin(theta), d px/d v = Ts cos(theta),
 * d py/d theta =  Ts v cos(theta), d py/d v = Ts sin(theta),
 * d theta/d v  =  Ts kappa,        d theta/d kappa = Ts v,  d v/d a = Ts.
 */
IntervalLinearization interval_matrices(
  const Intervald & theta, const Intervald & v, const Intervald & kappa, const ModelParams & params);

}  // namespace zonopred

#endif  // ZONOPRED_VEHICLE_MODEL_HPP_
