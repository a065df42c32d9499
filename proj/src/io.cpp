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

#include "zonopred/io.hpp"

#include <iomanip>
#include <sstream>

namespace zonopred
{

using nlohmann::json;
namespace fs = std::filesystem;

json zonotope_to_json(const Zonotoped & z)
{
  json center = json::array();
  for (Eigen::Index i = 0; i < z.dim(); ++i) center.push_back(z.center()(i));
  json generators = json::array();
  for (Eigen::Index j = 0; j < z.num_generators(); ++j) {
    json col = json::array();
    for (Eigen::Index i = 0; i < z.dim(); ++i) col.push_back(z.generators()(i, j));
    generators.push_back(std::move(col));
  }
  return {{"center", std::move(center)}, {"generators", std::move(generators)}};
}

Zonotoped zonotope_from_json(const json & j)
{
  const auto c = j.at("center").get<std::vector<double>>();
  const auto g = j.at("generators").get<std::vector<std::vector<double>>>();
  Eigen::VectorXd center = Eigen::Map<const Eigen::VectorXd>(c.data(), static_cast<Eigen::Index>(c.size()));
  Eigen::MatrixXd gens(center.size(), static_cast<Eigen::Index>(g.size()));
  for (std::size_t col = 0; col < g.size(); ++col) {
    if (static_cast<Eigen::Index>(g[col].size()) != center.size()) {
      throw std::invalid_argument("zonotope json: generator length differs from center dimension");
    }
    for (std::size_t i = 0; i < g[col].size(); ++i) {
      gens(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(col)) = g[col][i];
    }
  }
  return Zonotoped(std::move(center), std::move(gens));
}

json control_set_to_json(const ControlInputSet & set)
{
  json j = zonotope_to_json(set.zonotope);
  j["alphas"] = std::vector<double>(set.alphas.data(), set.alphas.data() + set.alphas.size());
  json window = json::array();
  for (const auto & u : set.window) window.push_back({u.a, u.kappa});
  j["window"] = std::move(window);
  return j;
}

ControlInputSet control_set_from_json(const json & j)
{
  ControlInputSet set;
  set.zonotope = zonotope_from_json(j);
  const auto alphas = j.value("alphas", std::vector<double>{});
  set.alphas = Eigen::Map<const Eigen::VectorXd>(alphas.data(), static_cast<Eigen::Index>(alphas.size()));
  set.center = ControlSample::from_vector(set.zonotope.center());
  for (const auto & u : j.value("window", std::vector<std::vector<double>>{})) {
    if (u.size() != 2) throw std::invalid_argument("control set json: window entries must be pairs");
    set.window.push_back({u[0], u[1]});
  }
  return set;
}

json tube_to_json(const ReachableTube & tube, double start_time)
{
  json arr = json::array();
  for (std::size_t j = 0; j < tube.steps.size(); ++j) {
    json z = zonotope_to_json(tube.steps[j]);
    z["step"] = j;
    z["timestamp"] = start_time + static_cast<double>(j) * tube.params.sampling_time;
    arr.push_back(std::move(z));
  }
  return arr;
}

namespace
{

json occupancy_metrics_json(const OccupancyMetrics & m)
{
  return {
    {"success_rate", m.success_rate},
    {"overall", m.overall},
    {"mean_area", m.mean_area},
    {"step_area_at_horizon", m.mean_area.empty() ? 0.0 : m.mean_area.back()},
  };
}

std::string num(double x)
{
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

}  // namespace

json metrics_to_json(const MetricsReport & report)
{
  json j = {
    {"iterations", report.iterations},
    {"horizon", report.horizon},
    {"control_containment", report.control_containment},
    {"occupancy", occupancy_metrics_json(report.adaptive)},
  };
  if (report.baseline) j["baseline"] = occupancy_metrics_json(*report.baseline);
  return j;
}

json timings_to_json(const StageTimings & mean, std::span<const int> sweep_horizons, std::span<const double> sweep_seconds)
{
  json j = {
    {"mean_seconds",
     {{"ekf", mean.ekf},
      {"control_set", mean.control_set},
      {"reachability", mean.reachability},
      {"occupancy", mean.occupancy},
      {"total", mean.total()}}},
  };
  if (!sweep_horizons.empty()) {
    json sweep = json::array();
    for (std::size_t i = 0; i < sweep_horizons.size() && i < sweep_seconds.size(); ++i) {
      sweep.push_back({{"horizon", sweep_horizons[i]}, {"seconds", sweep_seconds[i]}});
    }
    j["sweep"] = std::move(sweep);
  }
  return j;
}

void write_trajectory_csv(std::ostream & os, const SimulationTrace & trace, double sampling_time,
                          std::span<const IterationRecord> iterations)
{
  os << "k,t,px,py,theta,v,a_true,kappa_true,z_px,z_py,z_v,a_est,kappa_est\n";
  for (std::size_t k = 1; k < trace.measurements.size(); ++k) {
    const VehicleState & x = trace.states[k];
    const ControlSample & u = trace.applied[k - 1];
    const Measurement & z = trace.measurements[k];
    os << k << ',' << num(static_cast<double>(k) * sampling_time) << ',' << num(x.px) << ',' << num(x.py)
       << ',' << num(x.theta) << ',' << num(x.v) << ',' << num(u.a) << ',' << num(u.kappa) << ','
       << num(z.px) << ',' << num(z.py) << ',' << num(z.v) << ',';
    if (k - 1 < iterations.size()) {
      const ControlSample & e = iterations[k - 1].estimate;
      os << num(e.a) << ',' << num(e.kappa);
    } else {
      os << ',';
    }
    os << '\n';
  }
}

void write_measurements_csv(std::ostream & os, const SimulationTrace & trace, double sampling_time)
{
  os << "k,t,z_px,z_py,z_v\n";
  for (std::size_t k = 1; k < trace.measurements.size(); ++k) {
    const Measurement & z = trace.measurements[k];
    os << k << ',' << num(static_cast<double>(k) * sampling_time) << ',' << num(z.px) << ',' << num(z.py)
       << ',' << num(z.v) << '\n';
  }
}

void write_occupancy_csv(std::ostream & os, std::span<const std::vector<OccupancySet>> occupancy, int first_k)
{
  os << "step,k,vertex_index,x,y\n";
  for (std::size_t i = 0; i < occupancy.size(); ++i) {
    const int k = first_k + static_cast<int>(i);
    for (const auto & occ : occupancy[i]) {
      for (std::size_t v = 0; v < occ.polygon.size(); ++v) {
        os << occ.step << ',' << k << ',' << v << ',' << num(occ.polygon[v].x()) << ','
           << num(occ.polygon[v].y()) << '\n';
      }
    }
  }
}

std::ofstream open_output(const fs::path & path)
{
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  if (ec) throw OutputError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw OutputError("cannot open " + path.string() + " for writing");
  return os;
}

namespace
{

template <typename Writer>
void write_file(const fs::path & path, Writer && writer)
{
  std::ofstream os = open_output(path);
  writer(os);
  os.flush();
  if (!os) throw OutputError("failed writing " + path.string());
}

}  // namespace

void write_simulation(const fs::path & dir, const SimulationTrace & trace, double sampling_time)
{
  write_file(dir / "trajectory.csv", [&](std::ostream & os) { write_trajectory_csv(os, trace, sampling_time); });
  write_file(dir / "measurements.csv", [&](std::ostream & os) { write_measurements_csv(os, trace, sampling_time); });
}

void write_record(const fs::path & dir, const RunRecord & record, const MetricsReport & metrics,
                  const std::vector<std::vector<OccupancySet>> * baseline, std::span<const int> sweep_horizons,
                  std::span<const double> sweep_seconds)
{
  const double ts = record.config.scenario.sampling_time;
  write_file(dir / "trajectory.csv",
             [&](std::ostream & os) { write_trajectory_csv(os, record.trace, ts, record.iterations); });
  write_file(dir / "measurements.csv", [&](std::ostream & os) { write_measurements_csv(os, record.trace, ts); });

  std::vector<std::vector<OccupancySet>> adaptive;
  json control_sets = json::array();
  json tubes = json::array();
  for (std::size_t i = 0; i < record.iterations.size(); ++i) {
    const IterationRecord & it = record.iterations[i];
    adaptive.push_back(it.occupancy);
    json cs = control_set_to_json(it.control_set);
    cs["k"] = it.k;
    cs["estimate"] = {it.estimate.a, it.estimate.kappa};
    if (i < metrics.control_contained.size()) cs["next_contained"] = static_cast<bool>(metrics.control_contained[i]);
    control_sets.push_back(std::move(cs));
    tubes.push_back({{"k", it.k}, {"steps", tube_to_json(it.tube, static_cast<double>(it.k) * ts)}});
  }
  const int first_k = record.iterations.empty() ? 1 : record.iterations.front().k;
  write_file(dir / "occupancy.csv", [&](std::ostream & os) { write_occupancy_csv(os, adaptive, first_k); });
  if (baseline != nullptr) {
    write_file(dir / "occupancy_baseline.csv", [&](std::ostream & os) { write_occupancy_csv(os, *baseline, first_k); });
  }
  write_file(dir / "control_sets.json", [&](std::ostream & os) { os << control_sets.dump() << '\n'; });
  write_file(dir / "tubes.json", [&](std::ostream & os) { os << tubes.dump() << '\n'; });
  write_file(dir / "metrics.json", [&](std::ostream & os) { os << metrics_to_json(metrics).dump(2) << '\n'; });
  write_file(dir / "timing.json", [&](std::ostream & os) {
    os << timings_to_json(metrics.mean_timing, sweep_horizons, sweep_seconds).dump(2) << '\n';
  });
}

json read_json(const fs::path & path)
{
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read " + path.string());
  return json::parse(is);
}

std::size_t CsvTable::column(const std::string & name) const
{
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw std::out_of_range("csv: no column named " + name);
}

CsvTable read_csv(const fs::path & path)
{
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read " + path.string());
  auto split = [](const std::string & line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
  };
  CsvTable table;
  std::string line;
  if (std::getline(is, line)) table.header = split(line);
  while (std::getline(is, line)) {
    if (!line.empty()) table.rows.push_back(split(line));
  }
  return table;
}

}  // namespace zonopred
