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

#ifndef ZONOPRED_CONFIG_HPP_
#define ZONOPRED_CONFIG_HPP_

#include "zonopred/experiment.hpp"

#include <filesystem>
#include <istream>
#include <stdexcept>
#include <string>

namespace zonopred
{

/// Parse or validation failure. line() is 0 when the error is not tied to a line.
class ConfigError : public std::runtime_error
{
public:
  ConfigError(const std::string & message, int line = 0);
  int line() const { return line_; }

private:
  int line_;
};

/**
 * INI-style run configuration:
 *
 *   [scenario]
 *   turns = LRS
 *   [ekf]
 *   q = 1e-6, 1e-6, 1e-6, 1e-6, 0.04, 4e-4
 *
 * Unknown sections or keys are rejected. Lists are comma separated;
 * waypoints are "x y; x y; ...". The result is validated.
 */
RunConfig parse_config(std::istream & is);
RunConfig load_config(const std::filesystem::path & path);

/// Renders cfg in the format accepted by parse_config.
std::string format_config(const RunConfig & cfg);

}  // namespace zonopred

#endif  // ZONOPRED_CONFIG_HPP_
