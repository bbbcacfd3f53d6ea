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

#include "cran/harness.hpp"

#include "cran/baseline.hpp"
#include "cran/greedy_online.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace cran {

std::string_view to_string(Algorithm algorithm)
{
    switch (algorithm) {
    case Algorithm::Optimal: return "optimal";
    case Algorithm::GreedyP1: return "greedy-p1";
    case Algorithm::GreedyP2: return "greedy-p2";
    case Algorithm::Heuristic: return "heuristic";
    }
    return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view text)
{
    for (Algorithm a : {Algorithm::Optimal, Algorithm::GreedyP1, Algorithm::GreedyP2, Algorithm::Heuristic}) {
        if (text == to_string(a)) {
            return a;
        }
    }
    return std::nullopt;
}

RunOutcome run_once(std::span<const Request> requests,
                    Algorithm algorithm,
                    const Network& network,
                    const DpOptions& dp_options)
{
    RunOutcome out;
    switch (algorithm) {
    case Algorithm::Optimal: {
        auto solution = solve_offline(requests, network, dp_options);
        if (!solution) {
            out.feasible = false;
            out.schedule = empty_schedule(requests.size(), network);
        } else {
            out.schedule = std::move(solution->schedule);
        }
        break;
    }
    case Algorithm::GreedyP1:
        out.schedule = run_online(requests, network, FallbackPolicy::DropShared).schedule;
        break;
    case Algorithm::GreedyP2:
        out.schedule = run_online(requests, network, FallbackPolicy::ActivateSpare).schedule;
        break;
    case Algorithm::Heuristic:
        out.schedule = run_heuristic(requests, network);
        break;
    }
    out.metrics = compute_metrics(out.schedule, requests, network);
    return out;
}

void check_sweep(const SweepSpec& spec)
{
    if (spec.algorithms.empty() || spec.gamma_db_values.empty() || spec.epsilon_values.empty() ||
        spec.r_max_values.empty()) {
        throw std::invalid_argument("sweep axes must be non-empty");
    }
    if (spec.runs < 1) {
        throw std::invalid_argument("sweep runs must be >= 1");
    }
    for (double e : spec.epsilon_values) {
        if (e < 0.0) {
            throw std::invalid_argument("epsilon values must be >= 0");
        }
    }
    for (int r : spec.r_max_values) {
        if (r < 0) {
            throw std::invalid_argument("r_max values must be >= 0");
        }
    }
}

double pairwise_sum(std::span<const double> values)
{
    if (values.size() <= 8) {
        double s = 0.0;
        for (double v : values) {
            s += v;
        }
        return s;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

namespace {

struct Tuple {
    double gamma_db;
    double epsilon;
    int r_max;
};

struct Sample {
    bool used = false;
    bool infeasible = false;
    RunMetrics metrics;
};

void mean_and_stderr(const std::vector<double>& v, double& mean, double& err)
{
    const double n = static_cast<double>(v.size());
    if (v.empty()) {
        mean = std::numeric_limits<double>::quiet_NaN();
        err = mean;
        return;
    }
    mean = pairwise_sum(v) / n;
    if (v.size() < 2) {
        err = 0.0;
        return;
    }
    std::vector<double> sq(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        sq[i] = (v[i] - mean) * (v[i] - mean);
    }
    err = std::sqrt(pairwise_sum(sq) / (n - 1.0) / n);
}

std::string skip_reason(Algorithm algorithm, int r_max, const ScenarioConfig& scenario, const Network& network,
                        const DpOptions& dp)
{
    if (algorithm != Algorithm::Optimal || dp.allow_oversize) {
        return {};
    }
    ScenarioConfig sc = scenario;
    sc.max_users = r_max;
    const std::size_t users = potential_users(sc, network);
    if (users > dp.max_requests) {
        std::string what = "r_max " + std::to_string(r_max);
        if (sc.arrival_mode == ArrivalMode::PerSlot) {
            what += " (" + std::to_string(users) + " potential users)";
        }
        return what + " exceeds the optimal solver limit of " + std::to_string(dp.max_requests) + " requests";
    }
    if (network.num_rrhs() > dp.max_rrhs) {
        return std::to_string(network.num_rrhs()) + " RRHs exceed the optimal solver limit of " +
               std::to_string(dp.max_rrhs);
    }
    return {};
}

} // namespace

SweepResult run_sweep(const SweepSpec& spec,
                      const ScenarioConfig& scenario,
                      const Network& network,
                      const DpOptions& dp_options)
{
    check_sweep(spec);
    check_scenario(scenario);
    check_network(network);

    std::vector<Tuple> tuples;
    for (double g : spec.gamma_db_values) {
        for (double e : spec.epsilon_values) {
            for (int r : spec.r_max_values) {
                tuples.push_back({g, e, r});
            }
        }
    }
    const std::size_t num_algos = spec.algorithms.size();
    const std::size_t runs = spec.runs;
    std::vector<std::vector<std::string>> skipped(tuples.size(), std::vector<std::string>(num_algos));
    for (std::size_t c = 0; c < tuples.size(); ++c) {
        for (std::size_t a = 0; a < num_algos; ++a) {
            skipped[c][a] = skip_reason(spec.algorithms[a], tuples[c].r_max, scenario, network, dp_options);
        }
    }

    // samples[(tuple * runs + run) * num_algos + algo]
    std::vector<Sample> samples(tuples.size() * runs * num_algos);
    const std::size_t tasks = tuples.size() * runs;
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::size_t error_task = tasks;
    std::exception_ptr error;

    auto worker = [&] {
        for (;;) {
            const std::size_t task = next.fetch_add(1);
            if (task >= tasks) {
                return;
            }
            const std::size_t c = task / runs;
            const std::size_t run = task % runs;
            try {
                ScenarioConfig sc = scenario;
                sc.min_sinr_db = tuples[c].gamma_db;
                sc.max_users = tuples[c].r_max;
                sc.seed = spec.base_seed + run;
                Network net = network;
                net.epsilon = tuples[c].epsilon;
                const Instance instance = generate_instance(sc, net);
                for (std::size_t a = 0; a < num_algos; ++a) {
                    if (!skipped[c][a].empty()) {
                        continue;
                    }
                    RunOutcome outcome = run_once(instance.requests, spec.algorithms[a], net, dp_options);
                    Sample& s = samples[task * num_algos + a];
                    s.infeasible = !outcome.feasible;
                    s.used = outcome.feasible;
                    s.metrics = std::move(outcome.metrics);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (task < error_task) {
                    error_task = task;
                    error = std::current_exception();
                }
            }
        }
    };

    std::size_t threads = spec.threads != 0 ? spec.threads : std::max(1U, std::thread::hardware_concurrency());
    threads = std::min(threads, tasks);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t i = 0; i < threads; ++i) {
            pool.emplace_back(worker);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }

    SweepResult result;
    for (const Rrh& rrh : network.rrhs) {
        result.rrh_ids.push_back(rrh.id);
    }
    const std::size_t num_rrhs = network.num_rrhs();
    for (std::size_t c = 0; c < tuples.size(); ++c) {
        for (std::size_t a = 0; a < num_algos; ++a) {
            CellResult cell;
            cell.algorithm = spec.algorithms[a];
            cell.gamma_db = tuples[c].gamma_db;
            cell.epsilon = tuples[c].epsilon;
            cell.r_max = tuples[c].r_max;
            cell.skipped = skipped[c][a];
            std::vector<double> cost, ratio, tx, act, bbu;
            std::vector<std::vector<double>> per_rrh(num_rrhs);
            for (std::size_t run = 0; run < runs; ++run) {
                const Sample& s = samples[(c * runs + run) * num_algos + a];
                cell.infeasible += s.infeasible ? 1 : 0;
                if (!s.used) {
                    continue;
                }
                cost.push_back(s.metrics.weighted_cost);
                ratio.push_back(s.metrics.satisfied_ratio);
                tx.push_back(s.metrics.breakdown.tx);
                act.push_back(s.metrics.breakdown.rrh_activation);
                bbu.push_back(s.metrics.breakdown.bbu);
                for (std::size_t j = 0; j < num_rrhs; ++j) {
                    per_rrh[j].push_back(s.metrics.rrh_activation[j]);
                }
            }
            cell.runs = cost.size();
            double unused = 0.0;
            mean_and_stderr(cost, cell.mean_cost, cell.stderr_cost);
            mean_and_stderr(ratio, cell.satisfied_ratio, cell.stderr_ratio);
            mean_and_stderr(tx, cell.tx, unused);
            mean_and_stderr(act, cell.activation_w, unused);
            mean_and_stderr(bbu, cell.bbu, unused);
            cell.activation.resize(num_rrhs);
            for (std::size_t j = 0; j < num_rrhs; ++j) {
                mean_and_stderr(per_rrh[j], cell.activation[j], unused);
            }
            result.cells.push_back(std::move(cell));
        }
    }
    std::stable_sort(result.cells.begin(), result.cells.end(), [](const CellResult& x, const CellResult& y) {
        return std::make_tuple(to_string(x.algorithm), x.gamma_db, x.epsilon, x.r_max) <
               std::make_tuple(to_string(y.algorithm), y.gamma_db, y.epsilon, y.r_max);
    });
    return result;
}

namespace {

std::string fmt(double v)
{
    if (std::isnan(v)) {
        return "nan";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

} // namespace

void write_csv(std::ostream& out, const SweepResult& result)
{
    out << "algo,gamma_db,epsilon,r_max,runs,mean_cost_w,stderr_cost_w,satisfied_ratio,stderr_ratio";
    for (int id : result.rrh_ids) {
        out << ",act_rrh" << id;
    }
    out << ",tx_w,activation_w,bbu_w\n";
    for (const CellResult& c : result.cells) {
        out << to_string(c.algorithm) << ',' << fmt(c.gamma_db) << ',' << fmt(c.epsilon) << ',' << c.r_max << ','
            << c.runs << ',' << fmt(c.mean_cost) << ',' << fmt(c.stderr_cost) << ',' << fmt(c.satisfied_ratio)
            << ',' << fmt(c.stderr_ratio);
        for (std::size_t j = 0; j < result.rrh_ids.size(); ++j) {
            out << ',' << fmt(j < c.activation.size() ? c.activation[j] : std::nan(""));
        }
        out << ',' << fmt(c.tx) << ',' << fmt(c.activation_w) << ',' << fmt(c.bbu) << '\n';
    }
}

} // namespace cran
