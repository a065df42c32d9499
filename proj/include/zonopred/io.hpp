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

#ifndef ZONOPRED_IO_HPP_
#define ZONOPRED_IO_HPP_

#include "zonopred/experiment.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace zonopred
{

/// Raised when an output file cannot be created or written.
class OutputError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// JSON schemas -------------------------------------------------------------

/// {"center": [...], "generators": [[column], ...]}
nlohmann::json zonotope_to_json(const Zonotoped & z);
Zonotoped zonotope_from_json(const nlohmann::json & j);

/// Zonotope schema plus {"alphas": [...], "window": [[a, kappa], ...]}.
nlohmann::json control_set_to_json(const ControlInputSet & set);
ControlInputSet control_set_from_json(const nlohmann::json & j);

/// Array of zonotope objects tagged with "step" and "timestamp" (s).
nlohmann::json tube_to_json(const ReachableTube & tube, double start_time);

/// Deterministic metrics (no wall-clock data).
nlohmann::json metrics_to_json(const MetricsReport & report);

nlohmann::json timings_to_json(const StageTimings & mean, std::span<const int> sweep_horizons = {},
                               std::span<const double> sweep_seconds = {});

// CSV -----------------------------------------------------------------------

/// k,t,px,py,theta,v,a_true,kappa_true,z_px,z_py,z_v,a_est,kappa_est for k = 1 .. iterations.
/// The estimate columns are left empty when `iterations` is empty.
void write_trajectory_csv(std::ostream & os, const SimulationTrace & trace, double sampling_time,
                          std::span<const IterationRecord> iterations = {});

/// k,t,z_px,z_py,z_v for k = 1 .. iterations.
void write_measurements_csv(std::ostream & os, const SimulationTrace & trace, double sampling_time);

/// step,k,vertex_index,x,y. `first_k` is the iteration index of occupancy[0].
void write_occupancy_csv(std::ostream & os, std::span<const std::vector<OccupancySet>> occupancy, int first_k);

// Record directories -------------------------------------------------------------

/// Opens path for writing, creating parent directories. Throws OutputError.
std::ofstream open_output(const std::filesystem::path & path);

/// trajectory.csv, measurements.csv.
void write_simulation(const std::filesystem::path & dir, const SimulationTrace & trace, double sampling_time);

/// Full record: simulation files, occupancy.csv, control_sets.json, tubes.json,
/// metrics.json, timing.json, plus occupancy_baseline.csv when a baseline is given.
void write_record(const std::filesystem::path & dir, const RunRecord & record, const MetricsReport & metrics,
                  const std::vector<std::vector<OccupancySet>> * baseline = nullptr,
                  std::span<const int> sweep_horizons = {}, std::span<const double> sweep_seconds = {});

nlohmann::json read_json(const std::filesystem::path & path);

/// Parsed CSV: header names and rows of cells.
struct CsvTable
{
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string & name) const;
};

CsvTable read_csv(const std::filesystem::path & path);

}  // namespace zonopred

#endif  // ZONOPRED_IO_HPP_
