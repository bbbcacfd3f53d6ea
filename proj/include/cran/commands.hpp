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

#include "cran/config.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cran {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,       // bad arguments, config or input file
    kExitInfeasible = 2,  // optimal solver found no schedule
    kExitSolver = 3,      // internal numerical failure
    kExitViolations = 4,  // validate found constraint violations
};

/// Command-line overrides applied on top of the config file.
struct CommandOptions {
    std::optional<std::string> config_path;
    std::vector<std::string> algorithms;
    std::optional<std::uint64_t> seed;
    std::vector<double> gamma_db;
    std::vector<double> epsilon;
    std::vector<int> r_max;
    std::optional<int> subcarriers;
    std::optional<int> horizon;
    std::vector<int> rrhs;
    std::string arrivals;   // per_run or per_slot; empty keeps the config value
    std::optional<std::size_t> runs;
    std::optional<std::size_t> threads;
    std::string out;        // CSV destination; empty = stdout
    std::string emit;       // run-file destination for simulate
    std::string run_file;   // input for validate
};

/// Config after overrides. Throws ConfigError.
Config resolve_config(const CommandOptions& options);

int cmd_simulate(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_compare(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_sweep(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_validate(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_dump_config(const CommandOptions& options, std::ostream& out, std::ostream& err);

} // namespace cran
