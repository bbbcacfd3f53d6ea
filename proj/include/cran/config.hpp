/*
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "cran/harness.hpp"
#include "cran/model.hpp"
#include "cran/scenario.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cran {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Config {
    Network network;               // every configured RRH
    std::vector<int> usable_rrhs;  // RRH ids kept in the simulated network; empty = all
    ScenarioConfig scenario;
    SweepSpec sweep;

    bool operator==(const Config&) const = default;
};

/// Five-RRH reference deployment, S = 2, T = 3, up to 7 users.
Config default_config();

/// Parses an INI-style file with [network], [scenario] and [sweep] sections.
/// Keys match the field names; list values are comma separated. Anything not
/// given keeps its default. Throws ConfigError.
Config parse_config(std::string_view text, std::string_view source = "<config>");
Config load_config(const std::string& path);

/// Canonical text form; parse_config(dump_config(c)) == c.
std::string dump_config(const Config& config);

/// The network restricted to usable_rrhs. Throws ConfigError on an unknown id.
Network effective_network(const Config& config);

} // namespace cran
