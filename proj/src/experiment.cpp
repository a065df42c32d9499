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

#include "zonopred/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <stdexcept>

namespace zonopred
{

namespace
{

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

void validate(const RunConfig & cfg)
{
  validate(cfg.scenario);
  validate(cfg.ekf);
  if (cfg.horizon < 1) throw std::invalid_argument("config: horizon must be at least 1");
  if (cfg.control_set.window < 1) throw std::invalid_argument("config: window must be at least 1");
  if (cfg.control_set.num_generators < 2) throw std::invalid_argument("config: need at least 2 generators");
  if (!(cfg.control_set.scaling.a > 0.0) || !(cfg.control_set.scaling.kappa > 0.0)) {
    throw std::invalid_argument("config: axis scales must be positive");
  }
  if (cfg.control_set.expansion_a < 0.0 || cfg.control_set.expansion_kappa < 0.0) {
    throw std::invalid_argument("config: expansion must be non-negative");
  }
  if (cfg.reachability.budget < 4) throw std::invalid_argument("config: reachability budget must be at least 4");
  if (cfg.occupancy.budget < 2) throw std::invalid_argument("config: occupancy budget must be at least 2");
  if ((cfg.occupancy.dilation.array() < 0.0).any() || (cfg.occupancy.dilation_growth.array() < 0.0).any()) {
    throw std::invalid_argument("config: dilation must be non-negative");
  }
  if (cfg.reachability.sigma_multiplier < 0.0 || (cfg.reachability.radius_floor.array() < 0.0).any()) {
    throw std::invalid_argument("config: initial-set radii must be non-negative");
  }
}

std::vector<IterationRecord> run_pipeline(const RunConfig & cfg, const SimulationTrace & trace)
{
  const ModelParams model(cfg.scenario.sampling_time);
  const int iterations = static_cast<int>(trace.measurements.size()) - 1;
  if (iterations < 1) throw std::invalid_argument("run_pipeline: need at least two measurements");

  std::vector<IterationRecord> records;
  records.reserve(static_cast<std::size_t>(iterations));
  ControlWindow window(cfg.control_set.window);
  EkfBelief belief;

  for (int k = 1; k <= iterations; ++k) {
    IterationRecord rec;
    rec.k = k;
    rec.measurement = trace.measurements[static_cast<std::size_t>(k)];

    auto t0 = Clock::now();
    if (k == 1) belief = initialize_belief(trace.measurements[0], rec.measurement, cfg.ekf);
    belief = update(predict(belief, model, cfg.ekf), rec.measurement, cfg.ekf);
    rec.belief = belief;
    rec.estimate = estimated_control(belief);
    rec.timings.ekf = seconds_since(t0);

    t0 = Clock::now();
    window.push(rec.estimate);
    rec.control_set = estimate_control_set(window, cfg.control_set);
    rec.timings.control_set = seconds_since(t0);

    t0 = Clock::now();
    rec.tube = propagate(belief, rec.control_set, cfg.horizon, model, cfg.reachability);
    rec.timings.reachability = seconds_since(t0);

    t0 = Clock::now();
    rec.occupancy = extract_occupancy(rec.tube, cfg.occupancy);
    rec.timings.occupancy = seconds_since(t0);

    records.push_back(std::move(rec));
  }
  return records;
}

RunRecord run_experiment(const RunConfig & cfg)
{
  validate(cfg);
  RunRecord record;
  record.config = cfg;
  record.trace = simulate(cfg.scenario, cfg.tracker, cfg.horizon);
  record.iterations = run_pipeline(cfg, record.trace);
  return record;
}

ControlInputSet worst_case_baseline(const RunRecord & record)
{
  if (record.iterations.empty()) throw std::invalid_argument("worst_case_baseline: empty record");
  std::vector<ControlSample> samples;
  samples.reserve(record.iterations.size());
  for (const auto & it : record.iterations) samples.push_back(it.estimate);
  ControlInputSet set = bounding_box_set(samples);
  return set;
}

std::vector<std::vector<OccupancySet>> predict_with_fixed_set(const RunRecord & record, const ControlInputSet & set)
{
  const RunConfig & cfg = record.config;
  const ModelParams model(cfg.scenario.sampling_time);
  std::vector<std::vector<OccupancySet>> out;
  out.reserve(record.iterations.size());
  for (const auto & it : record.iterations) {
    const ReachableTube tube = propagate(it.belief, set, cfg.horizon, model, cfg.reachability);
    out.push_back(extract_occupancy(tube, cfg.occupancy));
  }
  return out;
}

OccupancyMetrics occupancy_metrics(const RunRecord & record, std::span<const std::vector<OccupancySet>> occupancy)
{
  const int horizon = record.config.horizon;
  const auto & states = record.trace.states;
  OccupancyMetrics m;
  m.success_rate.assign(static_cast<std::size_t>(horizon), 0.0);
  m.mean_area.assign(static_cast<std::size_t>(horizon), 0.0);
  std::vector<int> evaluated(static_cast<std::size_t>(horizon), 0);

  for (std::size_t i = 0; i < occupancy.size(); ++i) {
    const int k = record.iterations[i].k;
    std::vector<bool> flags;
    for (const auto & occ : occupancy[i]) {
      const auto j = static_cast<std::size_t>(occ.step - 1);
      m.mean_area[j] += occ.area();
      const auto t = static_cast<std::size_t>(k + occ.step);
      if (t >= states.size()) continue;
      const Vector2 truth(states[t].px, states[t].py);
      const bool inside = contains_point(occ.zonotope, truth);
      flags.push_back(inside);
      evaluated[j] += 1;
      if (inside) m.success_rate[j] += 1.0;
    }
    m.contained.push_back(std::move(flags));
  }

  int total = 0;
  double hits = 0.0;
  for (std::size_t j = 0; j < m.success_rate.size(); ++j) {
    hits += m.success_rate[j];
    total += evaluated[j];
    m.success_rate[j] = evaluated[j] > 0 ? 100.0 * m.success_rate[j] / evaluated[j] : 0.0;
    m.mean_area[j] = occupancy.empty() ? 0.0 : m.mean_area[j] / static_cast<double>(occupancy.size());
  }
  m.overall = total > 0 ? 100.0 * hits / total : 0.0;
  return m;
}

MetricsReport compute_metrics(const RunRecord & record, const std::vector<std::vector<OccupancySet>> * baseline)
{
  MetricsReport report;
  report.iterations = static_cast<int>(record.iterations.size());
  report.horizon = record.config.horizon;

  int inside = 0;
  for (std::size_t i = 0; i + 1 < record.iterations.size(); ++i) {
    const bool ok = contains_point(
      record.iterations[i].control_set.zonotope, record.iterations[i + 1].estimate.vector());
    report.control_contained.push_back(ok);
    inside += ok ? 1 : 0;
  }
  report.control_containment = report.control_contained.empty()
                                 ? 0.0
                                 : 100.0 * inside / static_cast<double>(report.control_contained.size());

  std::vector<std::vector<OccupancySet>> adaptive;
  adaptive.reserve(record.iterations.size());
  for (const auto & it : record.iterations) adaptive.push_back(it.occupancy);
  report.adaptive = occupancy_metrics(record, adaptive);
  if (baseline != nullptr) report.baseline = occupancy_metrics(record, *baseline);

  for (const auto & it : record.iterations) {
    report.mean_timing.ekf += it.timings.ekf;
    report.mean_timing.control_set += it.timings.control_set;
    report.mean_timing.reachability += it.timings.reachability;
    report.mean_timing.occupancy += it.timings.occupancy;
  }
  if (!record.iterations.empty()) {
    const double n = static_cast<double>(record.iterations.size());
    report.mean_timing.ekf /= n;
    report.mean_timing.control_set /= n;
    report.mean_timing.reachability /= n;
    report.mean_timing.occupancy /= n;
  }
  return report;
}

std::vector<double> measure_timing(const RunConfig & cfg, std::span<const int> horizons, int repeats)
{
  int max_horizon = 1;
  for (int h : horizons) max_horizon = std::max(max_horizon, h);
  const SimulationTrace trace = simulate(cfg.scenario, cfg.tracker, max_horizon);

  // Horizons are interleaved within each repeat so slow drifts of the
  // machine affect all of them alike; each iteration keeps its fastest run.
  std::vector<std::vector<double>> best(horizons.size());
  for (int r = 0; r < std::max(repeats, 1); ++r) {
    for (std::size_t i = 0; i < horizons.size(); ++i) {
      RunConfig c = cfg;
      c.horizon = horizons[i];
      const auto records = run_pipeline(c, trace);
      if (best[i].empty()) best[i].assign(records.size(), std::numeric_limits<double>::infinity());
      for (std::size_t k = 0; k < records.size(); ++k) best[i][k] = std::min(best[i][k], records[k].timings.total());
    }
  }
  std::vector<double> result;
  for (const auto & per_iteration : best) {
    double sum = 0.0;
    for (double t : per_iteration) sum += t;
    result.push_back(per_iteration.empty() ? 0.0 : sum / static_cast<double>(per_iteration.size()));
  }
  return result;
}

}  // namespace zonopred
