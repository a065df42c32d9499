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

#ifndef ZONOPRED_CONTROL_SET_HPP_
#define ZONOPRED_CONTROL_SET_HPP_

#include "zonopred/vehicle_model.hpp"
#include "zonopred/zonotope.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <deque>
#include <span>
#include <vector>

namespace zonopred
{

/// The most recent (at most capacity) control estimates, oldest first.
class ControlWindow
{
public:
  explicit ControlWindow(std::size_t capacity = 5);

  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  std::vector<ControlSample> samples() const { return {samples_.begin(), samples_.end()}; }

  void push(const ControlSample & u);

private:
  std::size_t capacity_;
  std::deque<ControlSample> samples_;
};

/// Copy of w with u appended and the oldest sample evicted when over capacity.
ControlWindow push_observation(ControlWindow w, const ControlSample & u);

/// Unit generator directions, one per column (2 x n_g).
struct GeneratorBasis
{
  Eigen::Matrix2Xd directions;

  Eigen::Index size() const { return directions.cols(); }
};

/// n_g directions at angles i * pi / n_g, i = 0 .. n_g - 1.
GeneratorBasis primitive_basis(int num_generators);

/// Per-axis normalization applied to samples before the fit.
struct AxisScaling
{
  double a = 2.0;       ///< m/s^2
  double kappa = 0.1;   ///< 1/m

  Vector2 vector() const { return {a, kappa}; }
};

/// Result of the minimum-spread enclosure program.
struct ZonotopeFit
{
  ControlSample center;
  Eigen::VectorXd alphas;  ///< scaling factors, in normalized units
  double objective = 0.0;  ///< sum of alphas
  AxisScaling scaling;
};

/**
 * Fits the zonotope c + sum_i alpha_i g_i [-1, 1] of least sum(alpha) that
 * encloses all samples:
 *
 *   min  sum_i alpha_i
 *   s.t. u_j = c + sum_i delta_ij g_i,   -alpha_i <= delta_ij <= alpha_i,  alpha_i >= 0.
 *
 * Samples are divided by the axis scaling before solving. Among optimal
 * fits, the one with least sum_i (i + 1) * alpha_i is returned, so that ties
 * favor earlier basis directions.
 */
ZonotopeFit fit_zonotope(
  std::span<const ControlSample> samples, const GeneratorBasis & basis, const AxisScaling & scaling = {});

/// Zonotopic Control-Input set over (a, kappa).
struct ControlInputSet
{
  Zonotoped zonotope;
  Eigen::VectorXd alphas;
  ControlSample center;
  std::vector<ControlSample> window;
};

/**
 * Generator matrix [alpha_1 g_1, ..., alpha_ng g_ng | g_u1 | g_u2] in physical
 * units. Columns with zero alpha and zero-length expansions are omitted.
 */
ControlInputSet expand_control_set(
  const ZonotopeFit & fit, const GeneratorBasis & basis, const Vector2 & g_u1, const Vector2 & g_u2);

struct ControlSetOptions
{
  std::size_t window = 5;
  int num_generators = 3;
  AxisScaling scaling;
  double expansion_a = 0.45;       ///< m/s^2
  double expansion_kappa = 0.025;  ///< 1/m
};

/// Fit + expansion of the current window. With fewer than two samples the
/// set is the newest sample dilated by the expansion generators.
ControlInputSet estimate_control_set(const ControlWindow & window, const ControlSetOptions & options);

/// Axis-aligned box over samples, with no expansion.
ControlInputSet bounding_box_set(std::span<const ControlSample> samples);

}  // namespace zonopred

#endif  // ZONOPRED_CONTROL_SET_HPP_
