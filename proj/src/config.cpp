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

#include "zonopred/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>

namespace zonopred
{

ConfigError::ConfigError(const std::string & message, int line)
: std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line)
{
}

namespace
{

std::string trim(std::string_view s)
{
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string & s, char sep)
{
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep)) parts.push_back(trim(part));
  return parts;
}

double to_double(const std::string & s, int line)
{
  double value = 0.0;
  const char * end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end || s.empty()) throw ConfigError("expected a number, got '" + s + "'", line);
  return value;
}

long long to_integer(const std::string & s, int line)
{
  long long value = 0;
  const char * end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end || s.empty()) throw ConfigError("expected an integer, got '" + s + "'", line);
  return value;
}

bool to_bool(const std::string & s, int line)
{
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ConfigError("expected a boolean, got '" + s + "'", line);
}

Eigen::VectorXd to_list(const std::string & s, Eigen::Index size, int line)
{
  const auto parts = split(s, ',');
  if (static_cast<Eigen::Index>(parts.size()) != size) {
    throw ConfigError("expected " + std::to_string(size) + " comma-separated values", line);
  }
  Eigen::VectorXd v(size);
  for (Eigen::Index i = 0; i < size; ++i) v(i) = to_double(parts[static_cast<std::size_t>(i)], line);
  return v;
}

std::vector<Vector2> to_waypoints(const std::string & s, int line)
{
  std::vector<Vector2> points;
  if (s.empty()) return points;
  for (const auto & item : split(s, ';')) {
    std::istringstream is(item);
    std::string x, y, extra;
    if (!(is >> x >> y) || (is >> extra)) throw ConfigError("waypoints must be 'x y; x y; ...'", line);
    points.emplace_back(to_double(x, line), to_double(y, line));
  }
  return points;
}

using Setter = std::function<void(RunConfig &, const std::string &, int)>;

const std::map<std::string, Setter> & setters()
{
  static const std::map<std::string, Setter> table = {
    {"scenario.block_size", [](RunConfig & c, const std::string & v, int l) { c.scenario.block_size = to_double(v, l); }},
    {"scenario.turns", [](RunConfig & c, const std::string & v, int) { c.scenario.turns = v; }},
    {"scenario.corner_radius", [](RunConfig & c, const std::string & v, int l) { c.scenario.corner_radius = to_double(v, l); }},
    {"scenario.final_straight", [](RunConfig & c, const std::string & v, int l) { c.scenario.final_straight = to_double(v, l); }},
    {"scenario.waypoints", [](RunConfig & c, const std::string & v, int l) { c.scenario.waypoints = to_waypoints(v, l); }},
    {"scenario.cruise_speed", [](RunConfig & c, const std::string & v, int l) { c.scenario.cruise_speed = to_double(v, l); }},
    {"scenario.corner_speed", [](RunConfig & c, const std::string & v, int l) { c.scenario.corner_speed = to_double(v, l); }},
    {"scenario.comfort_accel", [](RunConfig & c, const std::string & v, int l) { c.scenario.comfort_accel = to_double(v, l); }},
    {"scenario.comfort_decel", [](RunConfig & c, const std::string & v, int l) { c.scenario.comfort_decel = to_double(v, l); }},
    {"scenario.iterations", [](RunConfig & c, const std::string & v, int l) { c.scenario.iterations = static_cast<int>(to_integer(v, l)); }},
    {"scenario.seed",
     [](RunConfig & c, const std::string & v, int l) {
       const long long seed = to_integer(v, l);
       if (seed < 0) throw ConfigError("seed must be non-negative", l);
       c.scenario.seed = static_cast<std::uint64_t>(seed);
     }},
    {"scenario.sampling_time", [](RunConfig & c, const std::string & v, int l) { c.scenario.sampling_time = to_double(v, l); }},
    {"noise.sigma_a", [](RunConfig & c, const std::string & v, int l) { c.scenario.actuation.sigma_a = to_double(v, l); }},
    {"noise.sigma_kappa", [](RunConfig & c, const std::string & v, int l) { c.scenario.actuation.sigma_kappa = to_double(v, l); }},
    {"noise.sigma_px", [](RunConfig & c, const std::string & v, int l) { c.scenario.measurement.sigma_px = to_double(v, l); }},
    {"noise.sigma_py", [](RunConfig & c, const std::string & v, int l) { c.scenario.measurement.sigma_py = to_double(v, l); }},
    {"noise.sigma_v", [](RunConfig & c, const std::string & v, int l) { c.scenario.measurement.sigma_v = to_double(v, l); }},
    {"tracker.lookahead_min", [](RunConfig & c, const std::string & v, int l) { c.tracker.lookahead_min = to_double(v, l); }},
    {"tracker.lookahead_time", [](RunConfig & c, const std::string & v, int l) { c.tracker.lookahead_time = to_double(v, l); }},
    {"tracker.speed_gain", [](RunConfig & c, const std::string & v, int l) { c.tracker.speed_gain = to_double(v, l); }},
    {"tracker.a_max", [](RunConfig & c, const std::string & v, int l) { c.tracker.a_max = to_double(v, l); }},
    {"tracker.kappa_max", [](RunConfig & c, const std::string & v, int l) { c.tracker.kappa_max = to_double(v, l); }},
    {"ekf.q", [](RunConfig & c, const std::string & v, int l) { c.ekf.q = to_list(v, 6, l).asDiagonal(); }},
    {"ekf.r", [](RunConfig & c, const std::string & v, int l) { c.ekf.r = to_list(v, 3, l).asDiagonal(); }},
    {"ekf.p0", [](RunConfig & c, const std::string & v, int l) { c.ekf.p0 = to_list(v, 6, l).asDiagonal(); }},
    {"control_set.window",
     [](RunConfig & c, const std::string & v, int l) {
       const long long w = to_integer(v, l);
       if (w < 1) throw ConfigError("window must be at least 1", l);
       c.control_set.window = static_cast<std::size_t>(w);
     }},
    {"control_set.generators", [](RunConfig & c, const std::string & v, int l) { c.control_set.num_generators = static_cast<int>(to_integer(v, l)); }},
    {"control_set.a_scale", [](RunConfig & c, const std::string & v, int l) { c.control_set.scaling.a = to_double(v, l); }},
    {"control_set.kappa_scale", [](RunConfig & c, const std::string & v, int l) { c.control_set.scaling.kappa = to_double(v, l); }},
    {"control_set.expansion_a", [](RunConfig & c, const std::string & v, int l) { c.control_set.expansion_a = to_double(v, l); }},
    {"control_set.expansion_kappa", [](RunConfig & c, const std::string & v, int l) { c.control_set.expansion_kappa = to_double(v, l); }},
    {"reachability.horizon", [](RunConfig & c, const std::string & v, int l) { c.horizon = static_cast<int>(to_integer(v, l)); }},
    {"reachability.budget", [](RunConfig & c, const std::string & v, int l) { c.reachability.budget = to_integer(v, l); }},
    {"reachability.sigma_multiplier", [](RunConfig & c, const std::string & v, int l) { c.reachability.sigma_multiplier = to_double(v, l); }},
    {"reachability.radius_floor", [](RunConfig & c, const std::string & v, int l) { c.reachability.radius_floor = to_list(v, 4, l); }},
    {"occupancy.dilation", [](RunConfig & c, const std::string & v, int l) { c.occupancy.dilation = to_list(v, 2, l); }},
    {"occupancy.dilation_growth", [](RunConfig & c, const std::string & v, int l) { c.occupancy.dilation_growth = to_list(v, 2, l); }},
    {"occupancy.budget", [](RunConfig & c, const std::string & v, int l) { c.occupancy.budget = to_integer(v, l); }},
    {"output.directory", [](RunConfig & c, const std::string & v, int) { c.output_dir = v; }},
    {"output.baseline", [](RunConfig & c, const std::string & v, int l) { c.baseline = to_bool(v, l); }},
  };
  return table;
}

}  // namespace

RunConfig parse_config(std::istream & is)
{
  RunConfig cfg;
  std::string section;
  std::string raw;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    // ';' separates waypoints, so only a leading ';' starts a comment.
    std::string text = trim(raw.substr(0, raw.find('#')));
    if (text.empty() || text.front() == ';') continue;
    if (text.front() == '[') {
      if (text.back() != ']') throw ConfigError("unterminated section header", line);
      section = trim(text.substr(1, text.size() - 2));
      const bool known = std::any_of(setters().begin(), setters().end(), [&](const auto & entry) {
        return entry.first.starts_with(section + ".");
      });
      if (!known) throw ConfigError("unknown section [" + section + "]", line);
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line);
    if (section.empty()) throw ConfigError("key outside of a section", line);
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    const auto it = setters().find(section + "." + key);
    if (it == setters().end()) throw ConfigError("unknown key '" + key + "' in [" + section + "]", line);
    it->second(cfg, value, line);
  }
  try {
    validate(cfg);
  } catch (const std::invalid_argument & e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path & path)
{
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read config file " + path.string());
  return parse_config(is);
}

std::string format_config(const RunConfig & cfg)
{
  std::ostringstream os;
  os << std::setprecision(17);
  auto list = [&](const auto & v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v(i);
    os << '\n';
  };
  const ScenarioConfig & s = cfg.scenario;
  os << "[scenario]\n"
     << "block_size = " << s.block_size << "\nturns = " << s.turns << "\ncorner_radius = " << s.corner_radius
     << "\nfinal_straight = " << s.final_straight << "\nwaypoints = ";
  for (std::size_t i = 0; i < s.waypoints.size(); ++i) {
    os << (i ? "; " : "") << s.waypoints[i].x() << ' ' << s.waypoints[i].y();
  }
  os << "\ncruise_speed = " << s.cruise_speed << "\ncorner_speed = " << s.corner_speed
     << "\ncomfort_accel = " << s.comfort_accel << "\ncomfort_decel = " << s.comfort_decel
     << "\niterations = " << s.iterations << "\nseed = " << s.seed << "\nsampling_time = " << s.sampling_time
     << "\n\n[noise]\nsigma_a = " << s.actuation.sigma_a << "\nsigma_kappa = " << s.actuation.sigma_kappa
     << "\nsigma_px = " << s.measurement.sigma_px << "\nsigma_py = " << s.measurement.sigma_py
     << "\nsigma_v = " << s.measurement.sigma_v;
  const TrackerParams & t = cfg.tracker;
  os << "\n\n[tracker]\nlookahead_min = " << t.lookahead_min << "\nlookahead_time = " << t.lookahead_time
     << "\nspeed_gain = " << t.speed_gain << "\na_max = " << t.a_max << "\nkappa_max = " << t.kappa_max
     << "\n\n[ekf]\nq = ";
  list(cfg.ekf.q.diagonal());
  os << "r = ";
  list(cfg.ekf.r.diagonal());
  os << "p0 = ";
  list(cfg.ekf.p0.diagonal());
  const ControlSetOptions & cs = cfg.control_set;
  os << "\n[control_set]\nwindow = " << cs.window << "\ngenerators = " << cs.num_generators
     << "\na_scale = " << cs.scaling.a << "\nkappa_scale = " << cs.scaling.kappa
     << "\nexpansion_a = " << cs.expansion_a << "\nexpansion_kappa = " << cs.expansion_kappa
     << "\n\n[reachability]\nhorizon = " << cfg.horizon << "\nbudget = " << cfg.reachability.budget
     << "\nsigma_multiplier = " << cfg.reachability.sigma_multiplier << "\nradius_floor = ";
  list(cfg.reachability.radius_floor);
  os << "\n[occupancy]\ndilation = ";
  list(cfg.occupancy.dilation);
  os << "dilation_growth = ";
  list(cfg.occupancy.dilation_growth);
  os << "budget = " << cfg.occupancy.budget << "\n\n[output]\ndirectory = " << cfg.output_dir
     << "\nbaseline = " << (cfg.baseline ? "true" : "false") << '\n';
  return os.str();
}

}  // namespace zonopred
