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

#include "cran/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

void add_common(CLI::App* cmd, cran::CommandOptions& o)
{
    cmd->add_option("--config", o.config_path, "INI config file ([network], [scenario], [sweep])")
        ->check(CLI::ExistingFile);
    cmd->add_option("--seed", o.seed, "Instance seed (base seed for multi-run commands)");
    cmd->add_option("--gamma-db", o.gamma_db, "Minimum SINR in dB (comma separated for sweeps)")->delimiter(',');
    cmd->add_option("--epsilon", o.epsilon, "Orthogonality threshold (comma separated for sweeps)")->delimiter(',');
    cmd->add_option("--r-max", o.r_max, "Potential users per instance or per slot (comma separated for sweeps)")->delimiter(',');
    cmd->add_option("--subcarriers", o.subcarriers, "Subcarriers per RRH");
    cmd->add_option("--horizon", o.horizon, "Slots in the horizon");
    cmd->add_option("--arrivals", o.arrivals, "per_run: r-max users per instance; per_slot: r-max users per slot");
    cmd->add_option("--rrhs", o.rrhs, "Ids of the RRHs to keep, e.g. 1,5")->delimiter(',');
}

void add_algos(CLI::App* cmd, cran::CommandOptions& o)
{
    cmd->add_option("--algo", o.algorithms, "optimal, greedy-p1, greedy-p2, heuristic")->delimiter(',');
}

void add_runs(CLI::App* cmd, cran::CommandOptions& o)
{
    cmd->add_option("--runs", o.runs, "Seeded runs per cell")->check(CLI::PositiveNumber);
    cmd->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
    cmd->add_option("--out", o.out, "CSV output path (default stdout)");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"C-RAN joint RRH activation, scheduling and power allocation experiments"};
    app.require_subcommand(1);
    cran::CommandOptions o;

    auto* simulate = app.add_subcommand("simulate", "Run one algorithm on one seeded instance");
    add_common(simulate, o);
    add_algos(simulate, o);
    simulate->add_option("--emit", o.emit, "Write the instance and schedule as a JSON run file");

    auto* compare = app.add_subcommand("compare", "Paired comparison of algorithms on shared seeds");
    add_common(compare, o);
    add_algos(compare, o);
    add_runs(compare, o);

    auto* sweep = app.add_subcommand("sweep", "Parameter sweep to CSV");
    add_common(sweep, o);
    add_algos(sweep, o);
    add_runs(sweep, o);

    auto* validate = app.add_subcommand("validate", "Check a JSON run file against every constraint");
    validate->add_option("run_file", o.run_file, "Run file written by simulate --emit")->required();

    auto* dump = app.add_subcommand("dump-config", "Print the effective configuration");
    add_common(dump, o);
    add_algos(dump, o);
    add_runs(dump, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? cran::kExitOk : cran::kExitUsage;
    }

    if (simulate->parsed()) {
        return cran::cmd_simulate(o, std::cout, std::cerr);
    }
    if (compare->parsed()) {
        return cran::cmd_compare(o, std::cout, std::cerr);
    }
    if (sweep->parsed()) {
        return cran::cmd_sweep(o, std::cout, std::cerr);
    }
    if (validate->parsed()) {
        return cran::cmd_validate(o, std::cout, std::cerr);
    }
    return cran::cmd_dump_config(o, std::cout, std::cerr);
}
