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

#include "zonopred/vehicle_model.hpp"

#include <cmath>
#include <stdexcept>

namespace zonopred
{

ModelParams::ModelParams(double ts) : sampling_time(ts)
{
  if (!(ts > 0.0) || !std::isfinite(ts)) {
    throw std::invalid_argument("ModelParams: sampling time must be positive");
  }
}

VehicleState step_nominal(const VehicleState & x, const ControlSample & u, const ModelParams & params)
{
  const double ts = params.sampling_time;
  return {
    x.px + x.v * std::cos(x.theta) * ts,
    x.py + x.v * std::sin(x.theta) * ts,
    x.theta + x.v * u.kappa * ts,
    x.v + u.a * ts,
  };
}

AugmentedState augmented_step(const AugmentedState & x, const ModelParams & params)
{
  const VehicleState next = step_nominal(x.pose(), x.control(), params);
  return {next.px, next.py, next.theta, next.v, x.a, x.kappa};
}

Matrix6 augmented_jacobian(const AugmentedState & x, const ModelParams & params)
{
  const double ts = params.sampling_time;
  const double s = std::sin(x.theta);
  const double c = std::cos(x.theta);
  Matrix6 f = Matrix6::Identity();
  f(0, 2) = -ts * x.v * s;
  f(0, 3) = ts * c;
  f(1, 2) = ts * x.v * c;
  f(1, 3) = ts * s;
  f(2, 3) = ts * x.kappa;
  f(2, 5) = ts * x.v;
  f(3, 4) = ts;
  return f;
}

IntervalLinearization interval_matrices(
  const Intervald & theta, const Intervald & v, const Intervald & kappa, const ModelParams & params)
{
  const double ts = params.sampling_time;
  const auto [sin_theta, cos_theta] = interval_sin_cos(theta);

  IntervalMatrixd a = IntervalMatrixd::point(Eigen::Matrix4d::Identity());
  a.set(0, 2, -ts * (v * sin_theta));
  a.set(1, 2, ts * (v * cos_theta));
  a.set(0, 3, ts * cos_theta);
  a.set(1, 3, ts * sin_theta);
  a.set(2, 3, ts * kappa);

  IntervalMatrixd b(4, 2);
  b.set(2, 1, ts * v);
  b.set(3, 0, Intervald(ts));
  return {std::move(a), std::move(b)};
}

}  // namespace zonopred
