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

// zonopred: simulate, run, evaluate and export occupancy predictions.
//
// Exit codes: 0 success, 1 internal error, 2 invalid configuration or
// arguments, 3 unwritable output, 4 missing record files.

#include "zonopred/config.hpp"
#include "zonopred/io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <optional>
#include <set>
#include <thread>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace zonopred;

namespace
{

constexpr int kExitConfig = 2;
constexpr int kExitOutput = 3;
constexpr int kExitMissing = 4;

class MissingRecord : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct CommonOptions
{
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> iterations;
  std::optional<std::string> out;
};

RunConfig resolve_config(const CommonOptions & opts)
{
  RunConfig cfg = opts.config_path.empty() ? RunConfig{} : load_config(opts.config_path);
  if (opts.seed) cfg.scenario.seed = *opts.seed;
  if (opts.iterations) cfg.scenario.iterations = *opts.iterations;
  if (opts.out) cfg.output_dir = *opts.out;
  try {
    validate(cfg);
  } catch (const std::invalid_argument & e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

void add_common(CLI::App * cmd, CommonOptions & opts)
{
  cmd->add_option("-c,--config", opts.config_path, "configuration file (defaults when omitted)");
  cmd->add_option("--seed", opts.seed, "random seed, overrides [scenario] seed");
  cmd->add_option("--iterations", opts.iterations, "iterations, overrides [scenario] iterations");
  cmd->add_option("-o,--out", opts.out, "output directory, overrides [output] directory");
}

// simulate ---------------------------------------------------------------------

int cmd_simulate(const CommonOptions & opts)
{
  const RunConfig cfg = resolve_config(opts);
  const SimulationTrace trace = simulate(cfg.scenario, cfg.tracker, 0);
  write_simulation(cfg.output_dir, trace, cfg.scenario.sampling_time);
  std::cout << "wrote " << cfg.scenario.iterations << " steps to " << cfg.output_dir << '\n';
  return 0;
}

// run ---------------------------------------------------------------------------

struct RunOptions
{
  std::optional<int> horizon;
  bool baseline = false;
  bool timing_sweep = false;
  int timing_repeats = 15;
  std::vector<std::uint64_t> seeds;
  unsigned jobs = 1;
};

MetricsReport run_one(const RunConfig & cfg, int timing_repeats, bool quiet)
{
  const RunRecord record = run_experiment(cfg);
  std::optional<std::vector<std::vector<OccupancySet>>> baseline;
  if (cfg.baseline) baseline = predict_with_fixed_set(record, worst_case_baseline(record));
  const MetricsReport metrics = compute_metrics(record, baseline ? &*baseline : nullptr);

  std::vector<int> horizons;
  std::vector<double> seconds;
  if (timing_repeats > 0) {
    for (int h = 3; h <= 10; ++h) horizons.push_back(h);
    seconds = measure_timing(cfg, horizons, timing_repeats);
  }
  write_record(cfg.output_dir, record, metrics, baseline ? &*baseline : nullptr, horizons, seconds);
  if (!quiet) {
    std::cout << std::fixed << std::setprecision(2) << "control containment " << metrics.control_containment
              << " %, occupancy overall " << metrics.adaptive.overall << " %, mean "
              << metrics.mean_timing.total() * 1e3 << " ms/iteration\nwrote " << cfg.output_dir << '\n';
  }
  return metrics;
}

int cmd_run(const CommonOptions & common, const RunOptions & opts)
{
  RunConfig cfg = resolve_config(common);
  if (opts.horizon) cfg.horizon = *opts.horizon;
  if (opts.baseline) cfg.baseline = true;
  try {
    validate(cfg);
  } catch (const std::invalid_argument & e) {
    throw ConfigError(e.what());
  }

  const int repeats = opts.timing_sweep ? opts.timing_repeats : 0;
  if (opts.seeds.empty()) {
    run_one(cfg, repeats, false);
    return 0;
  }

  // Independent seeds in parallel; each run owns its RNG and output directory.
  std::atomic<std::size_t> next{0};
  std::mutex mutex;
  std::exception_ptr failure;
  auto worker = [&] {
    for (std::size_t i = next++; i < opts.seeds.size(); i = next++) {
      RunConfig c = cfg;
      c.scenario.seed = opts.seeds[i];
      c.output_dir = (fs::path(cfg.output_dir) / ("seed_" + std::to_string(opts.seeds[i]))).string();
      try {
        const MetricsReport m = run_one(c, repeats, true);
        const std::lock_guard lock(mutex);
        std::cout << std::fixed << std::setprecision(2) << "seed " << opts.seeds[i] << ": control containment "
                  << m.control_containment << " %, occupancy overall " << m.adaptive.overall << " %\n";
      } catch (...) {
        const std::lock_guard lock(mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned jobs = std::clamp<unsigned>(opts.jobs, 1, static_cast<unsigned>(opts.seeds.size()));
  std::vector<std::thread> threads;
  for (unsigned t = 0; t < jobs; ++t) threads.emplace_back(worker);
  for (auto & t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
  return 0;
}

// evaluate ----------------------------------------------------------------------

json load_required_json(const fs::path & path)
{
  if (!fs::is_regular_file(path)) throw MissingRecord("missing " + path.string());
  return read_json(path);
}

CsvTable load_required_csv(const fs::path & path)
{
  if (!fs::is_regular_file(path)) throw MissingRecord("missing " + path.string());
  return read_csv(path);
}

json evaluation(const json & metrics, const json & timing)
{
  const auto rates = metrics.at("occupancy").at("success_rate").get<std::vector<double>>();
  const auto areas = metrics.at("occupancy").at("mean_area").get<std::vector<double>>();
  const bool has_baseline = metrics.contains("baseline");
  std::vector<double> baseline_areas;
  if (has_baseline) baseline_areas = metrics.at("baseline").at("mean_area").get<std::vector<double>>();

  json table1 = json::array();
  bool monotone = true;
  for (std::size_t j = 0; j < rates.size(); ++j) {
    json row = {{"step", j + 1}, {"success_rate", rates[j]}, {"mean_area", areas.at(j)}};
    if (has_baseline) row["baseline_mean_area"] = baseline_areas.at(j);
    table1.push_back(std::move(row));
    if (j > 0 && rates[j] > rates[j - 1]) monotone = false;
  }

  json table2 = json::array();
  if (timing.contains("sweep")) {
    for (const auto & entry : timing.at("sweep")) {
      table2.push_back({{"horizon", entry.at("horizon")}, {"ms", entry.at("seconds").get<double>() * 1e3}});
    }
  }
  json stages = json::object();
  for (const auto & [name, seconds] : timing.at("mean_seconds").items()) stages[name] = seconds.get<double>() * 1e3;

  json out = {
    {"control_containment", metrics.at("control_containment")},
    {"occupancy_overall", metrics.at("occupancy").at("overall")},
    {"success_non_increasing", monotone},
    {"table1", std::move(table1)},
    {"table2", std::move(table2)},
    {"stage_ms", std::move(stages)},
  };
  if (has_baseline) {
    const double adaptive = areas.empty() ? 0.0 : areas.back();
    const double baseline = baseline_areas.empty() ? 0.0 : baseline_areas.back();
    out["baseline_area_ratio_at_horizon"] = adaptive > 0.0 ? baseline / adaptive : 0.0;
  }
  return out;
}

void print_tables(const json & eval)
{
  std::printf("Occupancy success per prediction step\n");
  const bool has_baseline = !eval.at("table1").empty() && eval.at("table1").front().contains("baseline_mean_area");
  std::printf("  %4s  %10s  %12s%s\n", "step", "success %", "area m^2", has_baseline ? "  baseline m^2" : "");
  for (const auto & row : eval.at("table1")) {
    std::printf("  %4d  %10.2f  %12.2f", row.at("step").get<int>(), row.at("success_rate").get<double>(),
                row.at("mean_area").get<double>());
    if (has_baseline) std::printf("  %13.2f", row.at("baseline_mean_area").get<double>());
    std::printf("\n");
  }
  std::printf("  overall %.2f %%, control containment %.2f %%\n", eval.at("occupancy_overall").get<double>(),
              eval.at("control_containment").get<double>());
  if (eval.contains("baseline_area_ratio_at_horizon")) {
    std::printf("  baseline / adaptive area at horizon: %.2f\n", eval.at("baseline_area_ratio_at_horizon").get<double>());
  }

  std::printf("\nComputational cost\n");
  if (!eval.at("table2").empty()) {
    std::printf("  %7s  %10s\n", "horizon", "ms/iter");
    for (const auto & row : eval.at("table2")) {
      std::printf("  %7d  %10.3f\n", row.at("horizon").get<int>(), row.at("ms").get<double>());
    }
  }
  for (const auto & [name, ms] : eval.at("stage_ms").items()) {
    std::printf("  %-13s %8.3f ms\n", name.c_str(), ms.get<double>());
  }
}

int cmd_evaluate(const fs::path & dir, const std::string & format)
{
  const json metrics = load_required_json(dir / "metrics.json");
  const json timing = load_required_json(dir / "timing.json");
  const json eval = evaluation(metrics, timing);
  {
    std::ofstream os = open_output(dir / "evaluation.json");
    os << eval.dump(2) << '\n';
    if (!os) throw OutputError("failed writing " + (dir / "evaluation.json").string());
  }
  if (format == "json") {
    std::cout << eval.dump(2) << '\n';
  } else {
    print_tables(eval);
  }
  return 0;
}

// export-plots ------------------------------------------------------------------

std::set<int> parse_steps(const std::string & text)
{
  std::set<int> steps;
  if (text.empty()) return steps;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int k = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      steps.insert(k);
    } catch (const std::exception &) {
      throw ConfigError("--steps expects comma-separated integers, got '" + item + "'");
    }
  }
  return steps;
}

int cmd_export_plots(const fs::path & dir, const std::string & steps_text)
{
  const std::set<int> steps = parse_steps(steps_text);
  const CsvTable trajectory = load_required_csv(dir / "trajectory.csv");
  const json control_sets = load_required_json(dir / "control_sets.json");
  const CsvTable occupancy = load_required_csv(dir / "occupancy.csv");
  const fs::path plots = dir / "plots";

  {
    std::ofstream os = open_output(plots / "path.csv");
    os << "k,t,px,py,z_px,z_py\n";
    const std::size_t cols[] = {trajectory.column("k"),    trajectory.column("t"),    trajectory.column("px"),
                                trajectory.column("py"),   trajectory.column("z_px"), trajectory.column("z_py")};
    for (const auto & row : trajectory.rows) {
      for (std::size_t i = 0; i < std::size(cols); ++i) os << (i ? "," : "") << row.at(cols[i]);
      os << '\n';
    }
  }

  double ts = 0.0;
  if (!trajectory.rows.empty()) {
    const auto & first = trajectory.rows.front();
    ts = std::stod(first.at(trajectory.column("t"))) / std::stod(first.at(trajectory.column("k")));
  }
  {
    std::ofstream os = open_output(plots / "control_actions.csv");
    std::ofstream cls = open_output(plots / "containment.csv");
    os << "k,t,a_est,kappa_est,a_lo,a_hi,kappa_lo,kappa_hi\n";
    cls << "k,a_next,kappa_next,contained\n";
    os << std::setprecision(12);
    cls << std::setprecision(12);
    for (std::size_t i = 0; i < control_sets.size(); ++i) {
      const json & cs = control_sets[i];
      const Zonotoped z = zonotope_from_json(cs);
      const auto hull = interval_hull(z);
      const int k = cs.at("k").get<int>();
      const auto est = cs.at("estimate").get<std::vector<double>>();
      os << k << ',' << ts * k << ',' << est.at(0) << ',' << est.at(1) << ',' << hull[0].lo() << ','
         << hull[0].hi() << ',' << hull[1].lo() << ',' << hull[1].hi() << '\n';
      if (cs.contains("next_contained") && i + 1 < control_sets.size()) {
        const auto next = control_sets[i + 1].at("estimate").get<std::vector<double>>();
        cls << k << ',' << next.at(0) << ',' << next.at(1) << ','
            << (cs.at("next_contained").get<bool>() ? "inside" : "outside") << '\n';
      }
    }
  }

  {
    std::ofstream os = open_output(plots / "occupancy_polygons.csv");
    os << "k,step,vertex_index,x,y\n";
    const std::size_t ck = occupancy.column("k"), cs = occupancy.column("step"), cv = occupancy.column("vertex_index"),
                      cx = occupancy.column("x"), cy = occupancy.column("y");
    for (const auto & row : occupancy.rows) {
      if (!steps.empty() && !steps.contains(std::stoi(row.at(ck)))) continue;
      os << row.at(ck) << ',' << row.at(cs) << ',' << row.at(cv) << ',' << row.at(cx) << ',' << row.at(cy) << '\n';
    }
  }
  std::cout << "wrote " << plots.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Set-based occupancy prediction for surrounding vehicles"};
  app.require_subcommand(1);

  CommonOptions sim_opts;
  CLI::App * sim = app.add_subcommand("simulate", "simulate the scenario and write trajectory/measurement CSVs");
  add_common(sim, sim_opts);

  CommonOptions run_common;
  RunOptions run_opts;
  CLI::App * run = app.add_subcommand("run", "run the full prediction pipeline and write a record directory");
  add_common(run, run_common);
  run->add_option("--np", run_opts.horizon, "prediction horizon (steps)");
  run->add_flag("--baseline", run_opts.baseline, "also evaluate the worst-case bounding-box baseline");
  run->add_flag("--timing-sweep", run_opts.timing_sweep, "record mean iteration time for horizons 3..10");
  run->add_option("--timing-repeats", run_opts.timing_repeats, "repeats per horizon for --timing-sweep")
    ->check(CLI::PositiveNumber);
  run->add_option("--seeds", run_opts.seeds, "run several seeds into <out>/seed_<n>")->delimiter(',');
  run->add_option("-j,--jobs", run_opts.jobs, "parallel runs for --seeds")->check(CLI::PositiveNumber);

  fs::path eval_dir;
  std::string format = "text";
  CLI::App * eval = app.add_subcommand("evaluate", "print success and timing tables for a record directory");
  eval->add_option("dir", eval_dir, "record directory")->required();
  eval->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  fs::path plots_dir;
  std::string steps;
  CLI::App * plots = app.add_subcommand("export-plots", "write plot-ready CSVs into <dir>/plots");
  plots->add_option("dir", plots_dir, "record directory")->required();
  plots->add_option("--steps", steps, "comma-separated iterations k whose occupancy polygons are exported");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (*sim) return cmd_simulate(sim_opts);
    if (*run) return cmd_run(run_common, run_opts);
    if (*eval) return cmd_evaluate(eval_dir, format);
    if (*plots) return cmd_export_plots(plots_dir, steps);
  } catch (const ConfigError & e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const OutputError & e) {
    std::cerr << "output error: " << e.what() << '\n';
    return kExitOutput;
  } catch (const MissingRecord & e) {
    std::cerr << "record error: " << e.what() << '\n';
    return kExitMissing;
  } catch (const std::exception & e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
