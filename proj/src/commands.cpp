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

#include "cran/cost.hpp"
#include "cran/harness.hpp"
#include "cran/run_file.hpp"
#include "cran/simplex.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

namespace cran {

namespace {

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::vector<Algorithm> parse_algorithms(const std::vector<std::string>& names)
{
    std::vector<Algorithm> out;
    for (const std::string& name : names) {
        const auto a = parse_algorithm(name);
        if (!a) {
            throw ConfigError("unknown algorithm '" + name + "' (expected optimal, greedy-p1, greedy-p2, heuristic)");
        }
        out.push_back(*a);
    }
    return out;
}

int guarded(std::ostream& err, const std::function<int()>& body)
{
    try {
        return body();
    } catch (const lp::SolverError& e) {
        err << "error: solver failure: " << e.what() << "\n";
        return kExitSolver;
    } catch (const InstanceTooLarge& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const RunFileError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: internal failure: " << e.what() << "\n";
        return kExitSolver;
    }
}

// Writes to the --out file when given, otherwise to `fallback`.
void emit_text(const std::string& path, std::ostream& fallback, const std::string& text)
{
    if (path.empty()) {
        fallback << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw ConfigError("cannot write '" + path + "'");
    }
    file << text;
}

} // namespace

Config resolve_config(const CommandOptions& o)
{
    Config cfg = o.config_path ? load_config(*o.config_path) : default_config();
    if (o.subcarriers) {
        cfg.network.num_subcarriers = *o.subcarriers;
    }
    if (o.horizon) {
        cfg.network.horizon = *o.horizon;
    }
    if (!o.rrhs.empty()) {
        cfg.usable_rrhs = o.rrhs;
    }
    if (!o.arrivals.empty()) {
        const auto mode = parse_arrival_mode(o.arrivals);
        if (!mode) {
            throw ConfigError("--arrivals: expected per_run or per_slot, got '" + o.arrivals + "'");
        }
        cfg.scenario.arrival_mode = *mode;
    }
    if (o.seed) {
        cfg.scenario.seed = *o.seed;
        cfg.sweep.base_seed = *o.seed;
    }
    if (!o.gamma_db.empty()) {
        cfg.scenario.min_sinr_db = o.gamma_db.front();
        cfg.sweep.gamma_db_values = o.gamma_db;
    }
    if (!o.epsilon.empty()) {
        cfg.network.epsilon = o.epsilon.front();
        cfg.sweep.epsilon_values = o.epsilon;
    }
    if (!o.r_max.empty()) {
        cfg.scenario.max_users = o.r_max.front();
        cfg.sweep.r_max_values = o.r_max;
    }
    if (!o.algorithms.empty()) {
        cfg.sweep.algorithms = parse_algorithms(o.algorithms);
    }
    if (o.runs) {
        cfg.sweep.runs = *o.runs;
    }
    if (o.threads) {
        cfg.sweep.threads = *o.threads;
    }
    try {
        check_network(cfg.network);
        check_scenario(cfg.scenario);
        check_sweep(cfg.sweep);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    effective_network(cfg);
    return cfg;
}

int cmd_simulate(const CommandOptions& options, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const Config cfg = resolve_config(options);
        if (options.algorithms.size() > 1) {
            throw ConfigError("simulate takes a single --algo");
        }
        const Algorithm algo =
            options.algorithms.empty() ? Algorithm::GreedyP1 : parse_algorithms(options.algorithms).front();
        const Network network = effective_network(cfg);
        const Instance instance = generate_instance(cfg.scenario, network);
        const RunOutcome run = run_once(instance.requests, algo, network);

        out << "algo: " << to_string(algo) << "\n";
        out << "seed: " << cfg.scenario.seed << "\n";
        out << "gamma_db: " << fmt(cfg.scenario.min_sinr_db) << "\n";
        out << "epsilon: " << fmt(network.epsilon) << "\n";
        out << "requests: " << instance.requests.size() << "\n";
        if (!run.feasible) {
            out << "feasible: no\n";
            return static_cast<int>(kExitInfeasible);
        }
        out << "satisfied: " << run.schedule.satisfied.size() << "\n";
        out << "satisfied_ratio: " << fmt(run.metrics.satisfied_ratio) << "\n";
        out << "weighted_cost_w: " << fmt(run.metrics.weighted_cost) << "\n";
        out << "tx_w: " << fmt(run.metrics.breakdown.tx) << "\n";
        out << "activation_w: " << fmt(run.metrics.breakdown.rrh_activation) << "\n";
        out << "bbu_w: " << fmt(run.metrics.breakdown.bbu) << "\n";
        for (std::size_t j = 0; j < network.num_rrhs(); ++j) {
            out << "act_rrh" << network.rrhs[j].id << ": " << fmt(run.metrics.rrh_activation[j]) << "\n";
        }
        if (!options.emit.empty()) {
            write_run_file(options.emit, {network, instance.requests, run.schedule});
        }
        return static_cast<int>(kExitOk);
    });
}

int cmd_compare(const CommandOptions& options, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        Config cfg = resolve_config(options);
        SweepSpec spec = cfg.sweep;
        spec.gamma_db_values = {cfg.scenario.min_sinr_db};
        spec.epsilon_values = {cfg.network.epsilon};
        spec.r_max_values = {cfg.scenario.max_users};
        const SweepResult result = run_sweep(spec, cfg.scenario, effective_network(cfg));

        char line[256];
        std::snprintf(line, sizeof line, "%-10s %6s %12s %12s %10s %10s\n", "algo", "runs", "mean_cost_w",
                      "stderr", "satisfied", "stderr");
        out << line;
        for (const CellResult& c : result.cells) {
            if (!c.skipped.empty()) {
                out << std::string(to_string(c.algorithm)) << ": skipped (" << c.skipped << ")\n";
                continue;
            }
            std::snprintf(line, sizeof line, "%-10s %6zu %12.6g %12.6g %10.6g %10.6g\n",
                          std::string(to_string(c.algorithm)).c_str(), c.runs, c.mean_cost, c.stderr_cost,
                          c.satisfied_ratio, c.stderr_ratio);
            out << line;
            if (c.infeasible != 0) {
                out << "  (" << c.infeasible << " infeasible instances excluded)\n";
            }
        }
        if (!options.out.empty()) {
            std::ostringstream csv;
            write_csv(csv, result);
            emit_text(options.out, out, csv.str());
        }
        return static_cast<int>(kExitOk);
    });
}

int cmd_sweep(const CommandOptions& options, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const Config cfg = resolve_config(options);
        const SweepResult result = run_sweep(cfg.sweep, cfg.scenario, effective_network(cfg));
        for (const CellResult& c : result.cells) {
            if (!c.skipped.empty()) {
                err << "note: " << to_string(c.algorithm) << " at r_max=" << c.r_max << " skipped: " << c.skipped
                    << "\n";
            }
        }
        std::ostringstream csv;
        write_csv(csv, result);
        emit_text(options.out, out, csv.str());
        return static_cast<int>(kExitOk);
    });
}

int cmd_validate(const CommandOptions& options, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        if (options.run_file.empty()) {
            throw ConfigError("validate needs a run file");
        }
        const RunFile run = read_run_file(options.run_file);
        const auto violations = validate_schedule(run.schedule, run.requests, run.network);
        for (const Violation& v : violations) {
            out << "violation: " << to_string(v.kind) << " slot=" << v.slot << " index=" << v.index
                << " magnitude=" << fmt(v.magnitude) << "\n";
        }
        out << "requests: " << run.requests.size() << "\n";
        out << "satisfied: " << run.schedule.satisfied.size() << "\n";
        out << "weighted_cost_w: " << fmt(horizon_cost(run.schedule, run.requests, run.network)) << "\n";
        out << (violations.empty() ? "ok\n" : "violations: " + std::to_string(violations.size()) + "\n");
        return static_cast<int>(violations.empty() ? kExitOk : kExitViolations);
    });
}

int cmd_dump_config(const CommandOptions& options, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        out << dump_config(resolve_config(options));
        return static_cast<int>(kExitOk);
    });
}

} // namespace cran
