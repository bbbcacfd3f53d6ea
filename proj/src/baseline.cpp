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

#include "cran/baseline.hpp"

#include "cran/lp_power.hpp"

#include <algorithm>
#include <limits>
#include <optional>

namespace cran {

SlotDecision all_on_schedule(const std::vector<std::size_t>& outstanding,
                             std::span<const Request> requests,
                             const Network& network,
                             int slot)
{
    SlotDecision decision;
    decision.slot = SlotAssignment(requests.size(), network.num_rrhs(), network.subcarriers());
    if (outstanding.empty()) {
        return decision;
    }
    for (std::size_t j = 0; j < network.num_rrhs(); ++j) {
        decision.slot.set_active(j, true);
    }

    // An infinite threshold keeps every RRH eligible in every round.
    const GreedyState state =
        make_greedy_state(slot, outstanding, requests, std::numeric_limits<double>::infinity());
    std::vector<LinkEntry> entries = phase1(state, requests, network).phase1_sched;

    std::vector<std::size_t> all(network.num_rrhs());
    for (std::size_t j = 0; j < all.size(); ++j) {
        all[j] = j;
    }
    while (!entries.empty()) {
        std::vector<Allocation> alloc;
        for (const LinkEntry& e : entries) {
            alloc.push_back({e.request, e.subcarrier});
        }
        std::sort(alloc.begin(), alloc.end(),
                  [](const Allocation& a, const Allocation& b) { return a.request < b.request; });
        const PowerProblem problem = build_problem(alloc, all, requests, network);
        const PowerSolution solution = solve(problem);
        if (solution.status == PowerStatus::Optimal) {
            for (const Allocation& a : alloc) {
                decision.slot.set_allocated(a.request, a.subcarrier, true);
                decision.scheduled.push_back(a.request);
            }
            apply_solution(problem, solution, decision.slot);
            break;
        }
        std::size_t worst = 0;
        for (std::size_t i = 1; i < entries.size(); ++i) {
            if (entries[i].xi >= entries[worst].xi) {
                worst = i;
            }
        }
        entries.erase(entries.begin() + static_cast<std::ptrdiff_t>(worst));
    }
    return decision;
}

Schedule run_heuristic(std::span<const Request> requests, const Network& network)
{
    check_network(network);
    Schedule schedule = empty_schedule(requests.size(), network);
    for (int t = 1; t <= network.horizon; ++t) {
        std::vector<std::size_t> outstanding;
        for (std::size_t r = 0; r < requests.size(); ++r) {
            if (schedule.satisfied.count(r) == 0 && requests[r].in_window(t)) {
                outstanding.push_back(r);
            }
        }
        SlotDecision decision = all_on_schedule(outstanding, requests, network, t);
        schedule.slots[static_cast<std::size_t>(t - 1)] = std::move(decision.slot);
        schedule.satisfied.insert(decision.scheduled.begin(), decision.scheduled.end());
    }
    return schedule;
}

} // namespace cran
