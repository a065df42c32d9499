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

#ifndef ZONOPRED_EKF_HPP_
#define ZONOPRED_EKF_HPP_

#include "zonopred/vehicle_model.hpp"

#include <Eigen/Dense>

namespace zonopred
{

using Matrix3 = Eigen::Matrix3d;
using Vector3 = Eigen::Vector3d;

/// Observed position and speed at sample k.
struct Measurement
{
  double px = 0.0;
  double py = 0.0;
  double v = 0.0;
  int k = 0;

  Vector3 vector() const { return {px, py, v}; }
};

struct EkfBelief
{
  AugmentedState mean;
  Matrix6 covariance = Matrix6::Identity();
};

/// Process noise Q, measurement noise R and initial covariance P0.
struct NoiseConfig
{
  Matrix6 q;
  Matrix3 r;
  Matrix6 p0;

  /// Q = diag(1e-6 x4, 0.04, 4e-4), R = diag(0.05^2, 0.05^2, 0.1^2),
  /// P0 = diag(1, 1, 0.5, 1, 1, 0.01).
  static NoiseConfig defaults();
};

/// Throws std::invalid_argument unless Q, R, P0 are symmetric PSD.
void validate(const NoiseConfig & noise);

EkfBelief predict(const EkfBelief & belief, const ModelParams & params, const NoiseConfig & noise);

/// Joseph-form correction with z = (px, py, v). Throws std::runtime_error
/// when the innovation covariance cannot be factorized.
EkfBelief update(const EkfBelief & belief, const Measurement & z, const NoiseConfig & noise);

/// Seeds position and speed from `first`, heading from first -> second, a = kappa = 0.
EkfBelief initialize_belief(const Measurement & first, const Measurement & second, const NoiseConfig & noise);

inline ControlSample estimated_control(const EkfBelief & belief) { return belief.mean.control(); }

/// Predicted measurement H x for the current mean.
Vector3 predicted_measurement(const EkfBelief & belief);

}  // namespace zonopred

#endif  // ZONOPRED_EKF_HPP_
