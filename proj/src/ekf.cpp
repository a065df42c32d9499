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

#include "zonopred/ekf.hpp"

#include <cmath>
#include <stdexcept>

namespace zonopred
{

namespace
{

using ObservationMatrix = Eigen::Matrix<double, 3, 6>;

const ObservationMatrix & observation_matrix()
{
  static const ObservationMatrix h = [] {
    ObservationMatrix m = ObservationMatrix::Zero();
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    m(2, 3) = 1.0;
    return m;
  }();
  return h;
}

template <typename Derived>
bool symmetric_psd(const Eigen::MatrixBase<Derived> & m)
{
  if (!m.allFinite() || !m.isApprox(m.transpose(), 1e-12)) return false;
  Eigen::SelfAdjointEigenSolver<typename Derived::PlainObject> eig(m);
  return eig.eigenvalues().minCoeff() >= -1e-9;
}

}  // namespace

NoiseConfig NoiseConfig::defaults()
{
  NoiseConfig n;
  n.q = Vector6(1e-6, 1e-6, 1e-6, 1e-6, 0.04, 0.0004).asDiagonal();
  n.r = Vector3(0.05 * 0.05, 0.05 * 0.05, 0.1 * 0.1).asDiagonal();
  n.p0 = Vector6(1.0, 1.0, 0.5, 1.0, 1.0, 0.01).asDiagonal();
  return n;
}

void validate(const NoiseConfig & noise)
{
  if (!symmetric_psd(noise.q)) throw std::invalid_argument("NoiseConfig: Q is not symmetric PSD");
  if (!symmetric_psd(noise.r)) throw std::invalid_argument("NoiseConfig: R is not symmetric PSD");
  if (!symmetric_psd(noise.p0)) throw std::invalid_argument("NoiseConfig: P0 is not symmetric PSD");
}

EkfBelief predict(const EkfBelief & belief, const ModelParams & params, const NoiseConfig & noise)
{
  const Matrix6 f = augmented_jacobian(belief.mean, params);
  EkfBelief out;
  out.mean = augmented_step(belief.mean, params);
  out.covariance = f * belief.covariance * f.transpose() + noise.q;
  return out;
}

Vector3 predicted_measurement(const EkfBelief & belief)
{
  return observation_matrix() * belief.mean.vector();
}

EkfBelief update(const EkfBelief & belief, const Measurement & z, const NoiseConfig & noise)
{
  const ObservationMatrix & h = observation_matrix();
  const Matrix6 & p = belief.covariance;
  const Vector3 innovation = z.vector() - predicted_measurement(belief);
  const Matrix3 s = h * p * h.transpose() + noise.r;

  Eigen::LLT<Matrix3> llt(s);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("ekf update: innovation covariance is not positive definite");
  }
  // K = P H' S^-1, computed as (S^-1 H P)'.
  const Eigen::Matrix<double, 6, 3> k = llt.solve(h * p).transpose();

  const Matrix6 i_kh = Matrix6::Identity() - k * h;
  EkfBelief out;
  out.mean = AugmentedState::from_vector(belief.mean.vector() + k * innovation);
  const Matrix6 joseph = i_kh * p * i_kh.transpose() + k * noise.r * k.transpose();
  out.covariance = (joseph + joseph.transpose()) / 2.0;
  return out;
}

EkfBelief initialize_belief(const Measurement & first, const Measurement & second, const NoiseConfig & noise)
{
  EkfBelief b;
  b.mean.px = first.px;
  b.mean.py = first.py;
  b.mean.v = first.v;
  b.mean.theta = std::atan2(second.py - first.py, second.px - first.px);
  b.covariance = noise.p0;
  return b;
}

}  // namespace zonopred
