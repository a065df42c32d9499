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

#ifndef ZONOPRED_SCENARIO_HPP_
#define ZONOPRED_SCENARIO_HPP_

#include "zonopred/ekf.hpp"
#include "zonopred/vehicle_model.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace zonopred
{

struct ActuationNoise
{
  double sigma_a = 0.1;        ///< m/s^2
  double sigma_kappa = 0.003;  ///< 1/m
};

struct MeasurementNoise
{
  double sigma_px = 0.05;  ///< m
  double sigma_py = 0.05;  ///< m
  double sigma_v = 0.1;    ///< m/s
};

/**
 * Grid scenario. The path starts at the origin heading along +x and
 * crosses an intersection every block_size meters, where `turns` picks
 * L (left), R (right) or S (straight). Corners are blended with arcs of
 * corner_radius. A non-empty waypoint list replaces the grid.
 */
struct ScenarioConfig
{
  double block_size = 60.0;
  std::string turns = "LRS";
  double corner_radius = 12.0;
  std::vector<Vector2> waypoints;
  double final_straight = 60.0;  ///< length of the segment after the last intersection

  double cruise_speed = 7.0;   ///< m/s
  double corner_speed = 5.0;   ///< m/s
  double comfort_accel = 0.8;  ///< m/s^2, speed-profile ramps
  double comfort_decel = 0.8;  ///< m/s^2

  ActuationNoise actuation;
  MeasurementNoise measurement;
  std::uint64_t seed = 1;
  int iterations = 150;
  double sampling_time = 0.2;  ///< s
};

/// Throws std::invalid_argument on non-positive geometry, speeds or counts.
void validate(const ScenarioConfig & cfg);

enum class ManeuverKind { Straight, Left, Right };

struct Maneuver
{
  ManeuverKind kind = ManeuverKind::Straight;
  double s_begin = 0.0;
  double s_end = 0.0;
};

struct PathSample
{
  double s = 0.0;
  Vector2 position = Vector2::Zero();
  double heading = 0.0;
  double curvature = 0.0;
  double target_speed = 0.0;
  int maneuver = 0;
};

/// Densely sampled reference path with its corner polyline and maneuver list.
struct ScenarioPath
{
  std::vector<Vector2> waypoints;
  std::vector<PathSample> samples;
  std::vector<Maneuver> maneuvers;

  double length() const { return samples.empty() ? 0.0 : samples.back().s; }
  /// Interpolated sample at arc length s; extrapolates along the end tangents.
  PathSample at(double s) const;
  /// Index of the closest sample within [hint - back, hint + ahead].
  std::size_t nearest(const Vector2 & p, std::size_t hint) const;
};

/// Straight segments joined by arc-blended corners; throws std::invalid_argument
/// on degenerate geometry (fewer than two waypoints, zero-length legs, corners
/// that do not fit).
ScenarioPath generate_scenario(const ScenarioConfig & cfg);

struct TrackerParams
{
  double lookahead_min = 4.0;    ///< m
  double lookahead_time = 0.6;   ///< s, lookahead = max(min, time * v)
  double speed_gain = 1.0;       ///< 1/s
  double a_max = 3.0;            ///< m/s^2
  double kappa_max = 0.2;        ///< 1/m
};

/// Pure-pursuit curvature and proportional speed command, both clamped.
/// `progress` is the nearest-sample hint, advanced in place.
ControlSample tracking_command(
  const VehicleState & state, const ScenarioPath & path, const TrackerParams & params, std::size_t & progress);

/// Tracking command plus Gaussian actuation noise, applied through step_nominal.
/// Returns the next state and the control actually applied.
std::pair<VehicleState, ControlSample> sv_step(
  const VehicleState & state, const ScenarioPath & path, const TrackerParams & params,
  const ActuationNoise & noise, const ModelParams & model, std::mt19937_64 & rng, std::size_t & progress);

/// (px, py, v) with independent zero-mean Gaussian noise.
Measurement observe(const VehicleState & state, const MeasurementNoise & noise, std::mt19937_64 & rng, int k = 0);

/// Ground truth and sensor stream of one scenario.
struct SimulationTrace
{
  ScenarioPath path;
  std::vector<VehicleState> states;          ///< x_0 .. x_T
  std::vector<ControlSample> applied;        ///< applied[k] drives x_k -> x_{k+1}
  std::vector<Measurement> measurements;     ///< z_0 .. z_iterations
  std::vector<int> maneuver;                 ///< maneuver index per state
};

/// Simulates iterations + extra_steps transitions; measurements for the first iterations + 1 states.
SimulationTrace simulate(const ScenarioConfig & cfg, const TrackerParams & tracker, int extra_steps);

}  // namespace zonopred

#endif  // ZONOPRED_SCENARIO_HPP_
