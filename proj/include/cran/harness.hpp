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

#include "cran/dp_offline.hpp"
#include "cran/metrics.hpp"
#include "cran/model.hpp"
#include "cran/scenario.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cran {

enum class Algorithm { Optimal, GreedyP1, GreedyP2, Heuristic };

std::string_view to_string(Algorithm algorithm);
std::optional<Algorithm> parse_algorithm(std::string_view text);

struct RunOutcome {
    bool feasible = true;  // false only when the optimal solver finds no schedule
    Schedule schedule;
    RunMetrics metrics;
};

RunOutcome run_once(std::span<const Request> requests,
                    Algorithm algorithm,
                    const Network& network,
                    const DpOptions& dp_options = {});

struct SweepSpec {
    std::vector<Algorithm> algorithms{Algorithm::Optimal, Algorithm::GreedyP1, Algorithm::GreedyP2,
                                      Algorithm::Heuristic};
    std::vector<double> gamma_db_values{0.0, 5.0, 10.0, 15.0, 20.0};
    std::vector<double> epsilon_values{0.0};
    std::vector<int> r_max_values{7};
    std::size_t runs = 500;
    std::uint64_t base_seed = 1;
    std::size_t threads = 0;  // 0 = hardware concurrency

    bool operator==(const SweepSpec&) const = default;
};

/// Throws std::invalid_argument on an empty axis or runs == 0.
void check_sweep(const SweepSpec& spec);

/// Aggregates over one (algorithm, gamma, epsilon, r_max) cell.
struct CellResult {
    Algorithm algorithm = Algorithm::Optimal;
    double gamma_db = 0.0;
    double epsilon = 0.0;
    int r_max = 0;
    std::size_t runs = 0;        // runs that entered the means
    std::size_t infeasible = 0;  // optimal runs without a feasible schedule
    double mean_cost = 0.0;
    double stderr_cost = 0.0;
    double satisfied_ratio = 0.0;
    double stderr_ratio = 0.0;
    std::vector<double> activation;  // per RRH
    double tx = 0.0;
    double activation_w = 0.0;       // unweighted activation/fiber/sleep power
    double bbu = 0.0;
    std::string skipped;             // non-empty when the cell was not run
};

struct SweepResult {
    std::vector<int> rrh_ids;
    std::vector<CellResult> cells;  // sorted by (algorithm name, gamma, epsilon, r_max)
};

/// Runs every cell on seeds base_seed + i, i < runs. All algorithms within a
/// (gamma, epsilon, r_max) tuple see the same instances. Output does not depend
/// on the thread count.
SweepResult run_sweep(const SweepSpec& spec,
                      const ScenarioConfig& scenario,
                      const Network& network,
                      const DpOptions& dp_options = {});

void write_csv(std::ostream& out, const SweepResult& result);

/// Pairwise (cascade) summation, deterministic for a given order.
double pairwise_sum(std::span<const double> values);

} // namespace cran
