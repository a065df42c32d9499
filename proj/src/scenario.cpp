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

#include "zonopred/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace zonopred
{

namespace
{

constexpr double kSampleSpacing = 0.25;  // m

Vector2 direction(double heading) { return {std::cos(heading), std::sin(heading)}; }

double cross(const Vector2 & a, const Vector2 & b) { return a.x() * b.y() - a.y() * b.x(); }

// Straight line or constant-curvature arc.
struct Primitive
{
  Vector2 start;
  double heading = 0.0;
  double curvature = 0.0;
  double length = 0.0;

  Vector2 position(double s) const
  {
    if (curvature == 0.0) return start + s * direction(heading);
    const double dtheta = curvature * s;
    return start + Vector2(std::sin(heading + dtheta) - std::sin(heading),
                           -std::cos(heading + dtheta) + std::cos(heading)) / curvature;
  }
};

std::vector<Vector2> grid_waypoints(const ScenarioConfig & cfg)
{
  std::vector<Vector2> pts{Vector2::Zero()};
  Vector2 p = Vector2::Zero();
  Vector2 d(1.0, 0.0);
  for (char turn : cfg.turns) {
    p += cfg.block_size * d;
    pts.push_back(p);
    switch (turn) {
      case 'L': case 'l': d = Vector2(-d.y(), d.x()); break;
      case 'R': case 'r': d = Vector2(d.y(), -d.x()); break;
      case 'S': case 's': break;
      default: throw std::invalid_argument(std::string("scenario: unknown turn '") + turn + "'");
    }
  }
  pts.push_back(p + cfg.final_straight * d);
  return pts;
}

std::vector<Primitive> blend_corners(const std::vector<Vector2> & pts, double radius)
{
  const std::size_t n = pts.size();
  std::vector<double> tangent(n, 0.0);
  std::vector<double> turn(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if ((pts[i + 1] - pts[i]).norm() < 1e-9) throw std::invalid_argument("scenario: zero-length leg");
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const Vector2 din = (pts[i] - pts[i - 1]).normalized();
    const Vector2 dout = (pts[i + 1] - pts[i]).normalized();
    turn[i] = std::atan2(cross(din, dout), din.dot(dout));
    if (std::abs(turn[i]) > std::numbers::pi - 1e-6) throw std::invalid_argument("scenario: U-turn corner");
    tangent[i] = std::abs(turn[i]) < 1e-9 ? 0.0 : radius * std::tan(std::abs(turn[i]) / 2.0);
  }

  std::vector<Primitive> prims;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Vector2 d = (pts[i + 1] - pts[i]).normalized();
    const double heading = std::atan2(d.y(), d.x());
    const double leg = (pts[i + 1] - pts[i]).norm() - tangent[i] - tangent[i + 1];
    if (leg < -1e-9) throw std::invalid_argument("scenario: corner radius does not fit the leg length");
    const Vector2 start = pts[i] + tangent[i] * d;
    if (!prims.empty() && prims.back().curvature == 0.0) {
      prims.back().length += std::max(leg, 0.0);  // collinear continuation
    } else {
      prims.push_back({start, heading, 0.0, std::max(leg, 0.0)});
    }
    if (i + 2 < n && tangent[i + 1] > 0.0) {
      const double kappa = std::copysign(1.0 / radius, turn[i + 1]);
      prims.push_back({pts[i + 1] - tangent[i + 1] * d, heading, kappa, std::abs(turn[i + 1]) * radius});
    }
  }
  return prims;
}

}  // namespace

void validate(const ScenarioConfig & cfg)
{
  auto positive = [](double x, const char * what) {
    if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument(std::string("scenario: ") + what + " must be positive");
  };
  positive(cfg.block_size, "block_size");
  positive(cfg.corner_radius, "corner_radius");
  positive(cfg.final_straight, "final_straight");
  positive(cfg.cruise_speed, "cruise_speed");
  positive(cfg.corner_speed, "corner_speed");
  positive(cfg.comfort_accel, "comfort_accel");
  positive(cfg.comfort_decel, "comfort_decel");
  positive(cfg.sampling_time, "sampling_time");
  if (cfg.iterations < 1) throw std::invalid_argument("scenario: iterations must be at least 1");
  const auto & a = cfg.actuation;
  const auto & m = cfg.measurement;
  if (a.sigma_a < 0 || a.sigma_kappa < 0 || m.sigma_px < 0 || m.sigma_py < 0 || m.sigma_v < 0) {
    throw std::invalid_argument("scenario: noise sigma must be non-negative");
  }
}

ScenarioPath generate_scenario(const ScenarioConfig & cfg)
{
  validate(cfg);
  ScenarioPath path;
  path.waypoints = cfg.waypoints.empty() ? grid_waypoints(cfg) : cfg.waypoints;
  if (path.waypoints.size() < 2) throw std::invalid_argument("scenario: need at least two waypoints");
  const std::vector<Primitive> prims = blend_corners(path.waypoints, cfg.corner_radius);

  double s0 = 0.0;
  for (std::size_t p = 0; p < prims.size(); ++p) {
    const Primitive & prim = prims[p];
    const ManeuverKind kind = prim.curvature == 0.0 ? ManeuverKind::Straight
                              : prim.curvature > 0.0 ? ManeuverKind::Left
                                                     : ManeuverKind::Right;
    path.maneuvers.push_back({kind, s0, s0 + prim.length});
    const auto count = static_cast<int>(std::ceil(prim.length / kSampleSpacing));
    const bool last = p + 1 == prims.size();
    for (int i = 0; i < count + (last ? 1 : 0); ++i) {
      const double ds = std::min(i * kSampleSpacing, prim.length);
      PathSample sample;
      sample.s = s0 + ds;
      sample.position = prim.position(ds);
      sample.heading = prim.heading + prim.curvature * ds;
      sample.curvature = prim.curvature;
      sample.maneuver = static_cast<int>(p);
      path.samples.push_back(sample);
    }
    s0 += prim.length;
  }

  // Speed profile: corner speed on arcs, comfort ramps elsewhere.
  for (auto & sample : path.samples) {
    const Maneuver & m = path.maneuvers[static_cast<std::size_t>(sample.maneuver)];
    if (m.kind != ManeuverKind::Straight) {
      sample.target_speed = cfg.corner_speed;
      continue;
    }
    double to_next = std::numeric_limits<double>::infinity();
    double from_prev = std::numeric_limits<double>::infinity();
    for (const auto & other : path.maneuvers) {
      if (other.kind == ManeuverKind::Straight) continue;
      if (other.s_begin >= sample.s) to_next = std::min(to_next, other.s_begin - sample.s);
      if (other.s_end <= sample.s) from_prev = std::min(from_prev, sample.s - other.s_end);
    }
    const double vc2 = cfg.corner_speed * cfg.corner_speed;
    sample.target_speed = std::min({cfg.cruise_speed, std::sqrt(vc2 + 2.0 * cfg.comfort_decel * to_next),
                                    std::sqrt(vc2 + 2.0 * cfg.comfort_accel * from_prev)});
  }
  return path;
}

PathSample ScenarioPath::at(double s) const
{
  if (samples.empty()) throw std::logic_error("ScenarioPath::at on empty path");
  if (s <= samples.front().s) {
    PathSample out = samples.front();
    out.position += (s - out.s) * direction(out.heading);
    out.s = s;
    return out;
  }
  if (s >= samples.back().s) {
    PathSample out = samples.back();
    out.position += (s - out.s) * direction(out.heading);
    out.s = s;
    return out;
  }
  const auto it = std::upper_bound(
    samples.begin(), samples.end(), s, [](double value, const PathSample & p) { return value < p.s; });
  const PathSample & hi = *it;
  const PathSample & lo = *(it - 1);
  const double t = hi.s > lo.s ? (s - lo.s) / (hi.s - lo.s) : 0.0;
  PathSample out = lo;
  out.s = s;
  out.position = lo.position + t * (hi.position - lo.position);
  out.heading = lo.heading + t * (hi.heading - lo.heading);
  return out;
}

std::size_t ScenarioPath::nearest(const Vector2 & p, std::size_t hint) const
{
  constexpr std::size_t kBack = 40;
  constexpr std::size_t kAhead = 400;
  const std::size_t begin = hint > kBack ? hint - kBack : 0;
  const std::size_t end = std::min(samples.size(), hint + kAhead);
  std::size_t best = std::min(hint, samples.size() - 1);
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = begin; i < end; ++i) {
    const double d = (samples[i].position - p).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

ControlSample tracking_command(
  const VehicleState & state, const ScenarioPath & path, const TrackerParams & params, std::size_t & progress)
{
  const Vector2 p(state.px, state.py);
  progress = path.nearest(p, progress);
  const PathSample & here = path.samples[progress];

  const double lookahead = std::max(params.lookahead_min, params.lookahead_time * state.v);
  const Vector2 goal = path.at(here.s + lookahead).position;
  const Vector2 delta = goal - p;
  const double c = std::cos(state.theta);
  const double s = std::sin(state.theta);
  const double lateral = -s * delta.x() + c * delta.y();
  const double dist2 = std::max(delta.squaredNorm(), 1e-9);

  ControlSample u;
  u.kappa = std::clamp(2.0 * lateral / dist2, -params.kappa_max, params.kappa_max);
  u.a = std::clamp(params.speed_gain * (here.target_speed - state.v), -params.a_max, params.a_max);
  return u;
}

std::pair<VehicleState, ControlSample> sv_step(
  const VehicleState & state, const ScenarioPath & path, const TrackerParams & params,
  const ActuationNoise & noise, const ModelParams & model, std::mt19937_64 & rng, std::size_t & progress)
{
  ControlSample u = tracking_command(state, path, params, progress);
  std::normal_distribution<double> gauss(0.0, 1.0);
  u.a += noise.sigma_a * gauss(rng);
  u.kappa += noise.sigma_kappa * gauss(rng);
  VehicleState next = step_nominal(state, u, model);
  next.v = std::max(next.v, 0.0);
  return {next, u};
}

Measurement observe(const VehicleState & state, const MeasurementNoise & noise, std::mt19937_64 & rng, int k)
{
  std::normal_distribution<double> gauss(0.0, 1.0);
  Measurement z;
  z.px = state.px + noise.sigma_px * gauss(rng);
  z.py = state.py + noise.sigma_py * gauss(rng);
  z.v = state.v + noise.sigma_v * gauss(rng);
  z.k = k;
  return z;
}

SimulationTrace simulate(const ScenarioConfig & cfg, const TrackerParams & tracker, int extra_steps)
{
  SimulationTrace trace;
  trace.path = generate_scenario(cfg);
  const ModelParams model(cfg.sampling_time);
  std::mt19937_64 rng(cfg.seed);

  const int total = cfg.iterations + std::max(extra_steps, 0);
  const PathSample & start = trace.path.samples.front();
  VehicleState x{start.position.x(), start.position.y(), start.heading, start.target_speed};
  std::size_t progress = 0;

  trace.states.push_back(x);
  trace.maneuver.push_back(start.maneuver);
  for (int k = 0; k <= total; ++k) {
    if (k <= cfg.iterations) trace.measurements.push_back(observe(x, cfg.measurement, rng, k));
    if (k == total) break;
    auto [next, u] = sv_step(x, trace.path, tracker, cfg.actuation, model, rng, progress);
    x = next;
    trace.applied.push_back(u);
    trace.states.push_back(x);
    const std::size_t at = trace.path.nearest(Vector2(x.px, x.py), progress);
    trace.maneuver.push_back(trace.path.samples[at].maneuver);
  }
  return trace;
}

}  // namespace zonopred
