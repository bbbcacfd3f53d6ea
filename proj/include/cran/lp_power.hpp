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

#include "cran/model.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace cran {

/// One scheduled request and the subcarrier it is allocated to.
struct Allocation {
    std::size_t request = 0;
    std::size_t subcarrier = 0;

    bool operator==(const Allocation&) const = default;
};

struct PowerVariable {
    std::size_t request = 0;
    std::size_t rrh = 0;
    std::size_t subcarrier = 0;
};

/// Single-slot power minimisation for a fixed allocation and activation set.
/// Variables exist only for (scheduled request, active RRH, its subcarrier);
/// every other p_rjs is fixed at zero by omission.
struct PowerProblem {
    std::vector<Allocation> scheduled;
    std::vector<std::size_t> active_rrhs;
    std::vector<PowerVariable> variables;  // index = k * active_rrhs.size() + jj
    /// gain[k][jj]: gain of scheduled request k toward active RRH jj on its subcarrier.
    std::vector<std::vector<double>> gains;
    std::vector<double> caps;          // per active RRH
    std::vector<double> sinr_targets;  // per scheduled request
    double noise = 0.0;

    std::size_t num_variables() const { return variables.size(); }
    /// One linearised SINR row per scheduled request plus one cap row per active RRH.
    std::size_t num_constraints() const { return scheduled.size() + active_rrhs.size(); }
    std::size_t variable_index(std::size_t k, std::size_t jj) const { return k * active_rrhs.size() + jj; }
};

enum class PowerStatus { Optimal, Infeasible };

struct PowerSolution {
    PowerStatus status = PowerStatus::Infeasible;
    std::vector<double> power;  // per PowerProblem::variables
    double objective = 0.0;     // total transmit power, W
};

/// Residual tolerance for accepted solutions, on the linearised SINR rows
/// normalised by gamma * sigma^2 and on the cap rows in W.
inline constexpr double kFeasibilityTol = 1e-9;

/// Throws std::invalid_argument when an allocation references an unknown request,
/// RRH or subcarrier, or a request is allocated twice.
PowerProblem build_problem(std::span<const Allocation> scheduled,
                           std::span<const std::size_t> active_rrhs,
                           std::span<const Request> requests,
                           const Network& network);

/// Reads a(t) and y(t) from a slot assignment. Throws if a request holds more
/// than one subcarrier.
PowerProblem build_problem(const SlotAssignment& slot, std::span<const Request> requests, const Network& network);

/// Exact LP solve. Throws lp::SolverError on numerical failure.
PowerSolution solve(const PowerProblem& problem);

/// Writes the solution's powers into the slot (other entries untouched).
void apply_solution(const PowerProblem& problem, const PowerSolution& solution, SlotAssignment& slot);

/// Largest residual violation of the problem's rows at the given powers
/// (0 when every row holds).
double max_violation(const PowerProblem& problem, std::span<const double> power);

} // namespace cran
