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

#include "cran/lp_power.hpp"
#include "cran/model.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace cran {

/// Refusal to run an exponential solver on an oversized instance.
class InstanceTooLarge : public std::length_error {
public:
    using std::length_error::length_error;
};

struct DpOptions {
    std::size_t max_requests = 12;
    std::size_t max_rrhs = 6;
    /// Lift the size guard (requests are still limited to 31 by the state mask).
    bool allow_oversize = false;
    /// Disable to recompute every state from scratch (test use only; exponential).
    bool memoize = true;
};

/// Bellman state. Bit r of `outstanding` is set while request r is unscheduled;
/// requests that have not arrived yet are simply ineligible at `slot`.
struct DpState {
    int slot = 1;
    std::uint32_t outstanding = 0;

    bool operator==(const DpState&) const = default;
};

/// One slot decision. assignment[r] is the subcarrier of request r or -1.
struct Action {
    std::vector<int> assignment;
    std::uint32_t active_mask = 0;

    bool operator==(const Action&) const = default;
};

struct DpSolution {
    Schedule schedule;
    double cost = 0.0;
    std::size_t explored_states = 0;
    std::size_t lp_solves = 0;
};

/// Every (a(t), y(t)) for the state after capacity and must-schedule-now pruning.
/// Materialises the full set, so only meant for small states.
std::vector<Action> enumerate_actions(const DpState& state, std::span<const Request> requests, const Network& network);

/// Backward induction over (slot, outstanding-mask) with memoisation.
/// Per-action transmit power comes from the power LP, which is cached across
/// slots because gains are constant over the horizon.
class OfflineSolver {
public:
    OfflineSolver(std::span<const Request> requests, const Network& network, DpOptions options = {});

    /// Optimal cost from `state` to the end of the horizon; +infinity if no
    /// feasible continuation exists.
    double cost_to_go(const DpState& state);

    /// Full-horizon solution, or nullopt when the instance is infeasible.
    std::optional<DpSolution> solve();

    std::size_t explored_states() const { return memo_.size(); }
    std::size_t lp_solves() const { return lp_solves_; }

private:
    struct Decision {
        double value = 0.0;
        Action action;
        bool has_action = false;
    };
    struct PsiValue {
        bool feasible = false;
        double tx = 0.0;
        std::vector<double> power;
    };

    Decision decide(const DpState& state);
    const PsiValue& psi(const std::vector<Allocation>& scheduled, std::uint32_t active_mask);
    std::uint64_t key(const DpState& state) const;

    std::span<const Request> requests_;
    const Network& network_;
    DpOptions options_;
    std::unordered_map<std::uint64_t, Decision> memo_;
    std::map<std::string, PsiValue> psi_cache_;
    std::size_t lp_solves_ = 0;
};

std::optional<DpSolution> solve_offline(std::span<const Request> requests,
                                        const Network& network,
                                        const DpOptions& options = {});

/// Exhaustive search over every horizon-wide allocation and activation pattern.
/// Limited to R <= 4, T <= 3, H <= 3.
std::optional<DpSolution> brute_force(std::span<const Request> requests, const Network& network);

/// True iff some policy schedules every request inside its window.
bool feasibility_test(std::span<const Request> requests, const Network& network, const DpOptions& options = {});

} // namespace cran
