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

#ifndef ZONOPRED_EXPERIMENT_HPP_
#define ZONOPRED_EXPERIMENT_HPP_

#include "zonopred/control_set.hpp"
#include "zonopred/ekf.hpp"
#include "zonopred/occupancy.hpp"
#include "zonopred/reachability.hpp"
#include "zonopred/scenario.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace zonopred
{

/// Everything that determines a run.
struct RunConfig
{
  ScenarioConfig scenario;
  TrackerParams tracker;
  NoiseConfig ekf = NoiseConfig::defaults();
  ControlSetOptions control_set;
  ReachabilityOptions reachability;
  OccupancyOptions occupancy;
  int horizon = 10;
  bool baseline = false;
  std::string output_dir = "out";
};

/// Throws std::invalid_argument on any inconsistent parameter.
void validate(const RunConfig & cfg);

/// Wall-clock seconds spent per pipeline stage.
struct StageTimings
{
  double ekf = 0.0;
  double control_set = 0.0;
  double reachability = 0.0;
  double occupancy = 0.0;

  double total() const { return ekf + control_set + reachability + occupancy; }
};

struct IterationRecord
{
  int k = 0;
  Measurement measurement;
  EkfBelief belief;
  ControlSample estimate;
  ControlInputSet control_set;
  ReachableTube tube;
  std::vector<OccupancySet> occupancy;
  StageTimings timings;
};

struct RunRecord
{
  RunConfig config;
  SimulationTrace trace;
  std::vector<IterationRecord> iterations;  ///< k = 1 .. config.scenario.iterations
};

/**
 * Closed-loop experiment. z_0 seeds the filter; every iteration k = 1 .. K
 * then runs EKF predict/update on z_k, pushes the estimate into the window,
 * fits and expands the Control-Input set, propagates the horizon and
 * extracts occupancy sets.
 */
RunRecord run_experiment(const RunConfig & cfg);

/// Estimation/prediction loop on an existing trace (trace.states must cover k + horizon).
std::vector<IterationRecord> run_pipeline(const RunConfig & cfg, const SimulationTrace & trace);

/// Axis-aligned box over every control estimate of the run. Throws on an empty record.
ControlInputSet worst_case_baseline(const RunRecord & record);

/// Prediction pass with a fixed control set; occupancy per iteration.
std::vector<std::vector<OccupancySet>> predict_with_fixed_set(const RunRecord & record, const ControlInputSet & set);

struct OccupancyMetrics
{
  std::vector<double> success_rate;  ///< % per prediction step 1 .. horizon
  double overall = 0.0;              ///< % over all sets
  std::vector<double> mean_area;     ///< m^2 per prediction step
  std::vector<std::vector<bool>> contained;  ///< [iteration][step]
};

struct MetricsReport
{
  int iterations = 0;
  int horizon = 0;
  double control_containment = 0.0;  ///< %
  std::vector<bool> control_contained;  ///< next estimate inside the current set, per iteration but the last
  OccupancyMetrics adaptive;
  std::optional<OccupancyMetrics> baseline;
  StageTimings mean_timing;
};

/// Occupancy success against the true positions x_{k+j} of the trace.
OccupancyMetrics occupancy_metrics(
  const RunRecord & record, std::span<const std::vector<OccupancySet>> occupancy);

MetricsReport compute_metrics(
  const RunRecord & record, const std::vector<std::vector<OccupancySet>> * baseline = nullptr);

/// Mean per-iteration pipeline time (s) for each horizon, each iteration timed
/// as its fastest of `repeats` runs.
std::vector<double> measure_timing(const RunConfig & cfg, std::span<const int> horizons, int repeats);

}  // namespace zonopred

#endif  // ZONOPRED_EXPERIMENT_HPP_
