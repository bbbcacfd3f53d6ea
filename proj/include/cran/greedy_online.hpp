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
#include <span>
#include <vector>

namespace cran {

/// Outstanding requests at one slot and how long each has waited.
struct GreedyState {
    int slot = 1;
    std::vector<std::size_t> outstanding;  // request indices, ascending
    std::vector<int> waiting;              // parallel to outstanding
    double epsilon = 0.0;
};

GreedyState make_greedy_state(int slot,
                              std::vector<std::size_t> outstanding,
                              std::span<const Request> requests,
                              double epsilon);

/// A (request, RRH, subcarrier) link with its isolated power requirement.
struct LinkEntry {
    std::size_t request = 0;
    std::size_t rrh = 0;
    std::size_t subcarrier = 0;
    double xi = 0.0;

    bool operator==(const LinkEntry&) const = default;
};

struct PhasePolicy {
    std::vector<std::size_t> phase1_active;  // RRH indices in activation order
    std::vector<LinkEntry> phase1_sched;
    std::vector<LinkEntry> phase2_sched;
    std::vector<double> residual;            // per RRH index; 0 for RRHs not activated
};

enum class FallbackPolicy {
    DropShared = 1,     // shed the most expensive channel-sharing entries
    ActivateSpare = 2,  // switch on further RRHs first
};

/// Order in which Phase I scans candidates. Descending priority serves urgent
/// and cheap links first; ascending is the literal sort order and kept for comparison.
enum class AdmissionOrder { PriorityDescending, PriorityAscending };

struct GreedyOptions {
    AdmissionOrder order = AdmissionOrder::PriorityDescending;
};

/// Elementary operation counters used for complexity checks.
struct GreedyStats {
    std::uint64_t candidate_evals = 0;
    std::uint64_t sort_work = 0;  // sum of n*ceil(log2 n) over sorts
    std::uint64_t lp_solves = 0;
    std::uint64_t epsilon_resets = 0;

    std::uint64_t total() const { return candidate_evals + sort_work; }
    GreedyStats& operator+=(const GreedyStats& other);
};

/// gamma * sigma^2 / g; +infinity when g = 0.
double min_power_requirement(double min_sinr, double gain, double noise_power);

/// (q + 1) / xi; 0 when xi is infinite.
double priority_metric(int waiting, double xi);

/// Greedy orthogonal scheduling. Besides the forward epsilon test on newly
/// eligible RRHs, a candidate is refused when an already activated RRH that uses
/// the same subcarrier reaches the candidate with gain above epsilon.
PhasePolicy phase1(const GreedyState& state,
                   std::span<const Request> requests,
                   const Network& network,
                   const GreedyOptions& options = {},
                   GreedyStats* stats = nullptr);

/// Channel sharing / joint transmission top-up on the Phase I residual power.
void phase2(PhasePolicy& policy,
            const GreedyState& state,
            std::span<const Request> requests,
            const Network& network,
            GreedyStats* stats = nullptr);

struct SlotDecision {
    SlotAssignment slot;
    std::vector<std::size_t> scheduled;  // request indices, ascending
    bool epsilon_reset = false;          // Phase I was rerun with epsilon = 0
};

/// Turns a phase policy into a power-feasible slot assignment, falling back per
/// `fallback` when the power problem has no solution.
SlotDecision finalize_slot(const PhasePolicy& policy,
                           const GreedyState& state,
                           std::span<const Request> requests,
                           const Network& network,
                           FallbackPolicy fallback,
                           const GreedyOptions& options = {},
                           GreedyStats* stats = nullptr);

struct OnlineResult {
    Schedule schedule;
    GreedyStats stats;
};

/// Slot-by-slot greedy scheduling. Requests whose window closes unscheduled are
/// dropped and stay out of the satisfied set.
OnlineResult run_online(std::span<const Request> requests,
                        const Network& network,
                        FallbackPolicy fallback,
                        const GreedyOptions& options = {});

} // namespace cran
