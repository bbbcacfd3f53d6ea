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

#include "cran/greedy_online.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <optional>

namespace cran {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t sort_cost(std::size_t n)
{
    if (n < 2) {
        return n;
    }
    return static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(std::bit_width(n - 1));
}

struct Candidate {
    LinkEntry entry;
    double nu = 0.0;
};

struct Admitted {
    std::vector<LinkEntry> entries;
    double xi_sum = 0.0;
    double units = 0.0;
};

// Step I.2 for one RRH: scan candidates in priority order and keep those that fit
// the power budget, the BBU pool and the one-per-subcarrier / one-per-request rules.
Admitted admit_on_rrh(std::vector<Candidate>& cands,
                      std::span<const Request> requests,
                      const Network& network,
                      std::size_t rrh,
                      double units_in_use,
                      AdmissionOrder order,
                      GreedyStats* stats)
{
    std::sort(cands.begin(), cands.end(), [order](const Candidate& a, const Candidate& b) {
        if (a.nu != b.nu) {
            return order == AdmissionOrder::PriorityDescending ? a.nu > b.nu : a.nu < b.nu;
        }
        if (a.entry.xi != b.entry.xi) {
            return a.entry.xi < b.entry.xi;
        }
        if (a.entry.request != b.entry.request) {
            return a.entry.request < b.entry.request;
        }
        return a.entry.subcarrier < b.entry.subcarrier;
    });
    if (stats != nullptr) {
        stats->sort_work += sort_cost(cands.size());
    }
    Admitted out;
    const double budget = network.rrhs[rrh].max_power;
    std::vector<bool> subcarrier_used(network.subcarriers(), false);
    std::vector<std::size_t> taken;
    for (const Candidate& c : cands) {
        const LinkEntry& e = c.entry;
        if (subcarrier_used[e.subcarrier] || std::find(taken.begin(), taken.end(), e.request) != taken.end()) {
            continue;
        }
        if (out.xi_sum + e.xi > budget) {
            continue;
        }
        const double m = requests[e.request].resources;
        if (units_in_use + out.units + m > network.bbu_capacity * (1.0 + 1e-12)) {
            continue;
        }
        subcarrier_used[e.subcarrier] = true;
        taken.push_back(e.request);
        out.entries.push_back(e);
        out.xi_sum += e.xi;
        out.units += m;
    }
    return out;
}

double units_of(const std::vector<LinkEntry>& entries, std::span<const Request> requests)
{
    double units = 0.0;
    for (const LinkEntry& e : entries) {
        units += requests[e.request].resources;
    }
    return units;
}

struct Attempt {
    PowerProblem problem;
    PowerSolution solution;
};

std::optional<Attempt> try_power(const std::vector<LinkEntry>& entries,
                                 const std::vector<std::size_t>& active,
                                 std::span<const Request> requests,
                                 const Network& network,
                                 GreedyStats* stats)
{
    std::vector<Allocation> alloc;
    alloc.reserve(entries.size());
    for (const LinkEntry& e : entries) {
        alloc.push_back({e.request, e.subcarrier});
    }
    std::sort(alloc.begin(), alloc.end(),
              [](const Allocation& a, const Allocation& b) { return a.request < b.request; });
    std::vector<std::size_t> rrhs = active;
    std::sort(rrhs.begin(), rrhs.end());
    Attempt attempt;
    attempt.problem = build_problem(alloc, rrhs, requests, network);
    attempt.solution = solve(attempt.problem);
    if (stats != nullptr) {
        ++stats->lp_solves;
    }
    if (attempt.solution.status != PowerStatus::Optimal) {
        return std::nullopt;
    }
    return attempt;
}

// Index of the entry with the largest xi; the later entry wins ties.
std::size_t most_expensive(const std::vector<LinkEntry>& entries)
{
    std::size_t worst = 0;
    for (std::size_t i = 1; i < entries.size(); ++i) {
        if (entries[i].xi >= entries[worst].xi) {
            worst = i;
        }
    }
    return worst;
}

} // namespace

GreedyStats& GreedyStats::operator+=(const GreedyStats& other)
{
    candidate_evals += other.candidate_evals;
    sort_work += other.sort_work;
    lp_solves += other.lp_solves;
    epsilon_resets += other.epsilon_resets;
    return *this;
}

GreedyState make_greedy_state(int slot,
                              std::vector<std::size_t> outstanding,
                              std::span<const Request> requests,
                              double epsilon)
{
    GreedyState state;
    state.slot = slot;
    std::sort(outstanding.begin(), outstanding.end());
    state.outstanding = std::move(outstanding);
    state.epsilon = epsilon;
    for (std::size_t r : state.outstanding) {
        state.waiting.push_back(std::max(0, slot - requests[r].arrival_slot));
    }
    return state;
}

double min_power_requirement(double min_sinr, double gain, double noise_power)
{
    if (min_sinr == 0.0) {
        return 0.0;
    }
    if (gain <= 0.0) {
        return kInf;
    }
    return min_sinr * noise_power / gain;
}

double priority_metric(int waiting, double xi)
{
    if (std::isinf(xi)) {
        return 0.0;
    }
    return (static_cast<double>(waiting) + 1.0) / xi;
}

PhasePolicy phase1(const GreedyState& state,
                   std::span<const Request> requests,
                   const Network& network,
                   const GreedyOptions& options,
                   GreedyStats* stats)
{
    const std::size_t num_rrhs = network.num_rrhs();
    const std::size_t num_sc = network.subcarriers();
    const double eps = state.epsilon;

    PhasePolicy policy;
    policy.residual.assign(num_rrhs, 0.0);
    std::vector<bool> remaining(state.outstanding.size(), true);
    std::vector<bool> orthogonal(num_rrhs, true);
    // users_of[k][s]: Phase I requests that activated RRH k serves on subcarrier s.
    std::vector<std::vector<std::vector<std::size_t>>> users_of(num_rrhs, std::vector<std::vector<std::size_t>>(num_sc));
    double units = 0.0;

    for (;;) {
        double min_m = kInf;
        for (std::size_t i = 0; i < remaining.size(); ++i) {
            if (remaining[i]) {
                min_m = std::min(min_m, requests[state.outstanding[i]].resources);
            }
        }
        if (min_m == kInf || units + min_m > network.bbu_capacity * (1.0 + 1e-12)) {
            break;
        }
        if (std::none_of(orthogonal.begin(), orthogonal.end(), [](bool b) { return b; })) {
            break;
        }

        std::size_t best_j = num_rrhs;
        Admitted best;
        double best_score = kInf;
        for (std::size_t j = 0; j < num_rrhs; ++j) {
            if (!orthogonal[j]) {
                continue;
            }
            std::vector<Candidate> cands;
            for (std::size_t i = 0; i < remaining.size(); ++i) {
                if (!remaining[i]) {
                    continue;
                }
                const std::size_t r = state.outstanding[i];
                const Request& req = requests[r];
                for (std::size_t s = 0; s < num_sc; ++s) {
                    if (stats != nullptr) {
                        ++stats->candidate_evals;
                    }
                    const double xi = min_power_requirement(req.min_sinr, req.gains(j, s), network.noise_power);
                    if (!(xi <= network.rrhs[j].max_power)) {
                        continue;
                    }
                    bool clear = true;
                    for (std::size_t k : policy.phase1_active) {
                        if (!users_of[k][s].empty() && req.gains(k, s) > eps) {
                            clear = false;
                            break;
                        }
                    }
                    if (clear) {
                        cands.push_back({{r, j, s, xi}, priority_metric(state.waiting[i], xi)});
                    }
                }
            }
            Admitted admitted = admit_on_rrh(cands, requests, network, j, units, options.order, stats);
            const double score =
                admitted.xi_sum + network.rrhs[j].activation_power + network.rrhs[j].fiber_power;
            if (best_j == num_rrhs || admitted.entries.size() > best.entries.size() ||
                (admitted.entries.size() == best.entries.size() && score < best_score)) {
                best_j = j;
                best = std::move(admitted);
                best_score = score;
            }
        }
        if (best_j == num_rrhs || best.entries.empty()) {
            break;
        }

        policy.phase1_active.push_back(best_j);
        policy.residual[best_j] = network.rrhs[best_j].max_power - best.xi_sum;
        units += best.units;
        orthogonal[best_j] = false;
        for (const LinkEntry& e : best.entries) {
            users_of[best_j][e.subcarrier].push_back(e.request);
            const auto pos = std::lower_bound(state.outstanding.begin(), state.outstanding.end(), e.request);
            remaining[static_cast<std::size_t>(pos - state.outstanding.begin())] = false;
            policy.phase1_sched.push_back(e);
        }
        for (std::size_t j = 0; j < num_rrhs; ++j) {
            if (!orthogonal[j]) {
                continue;
            }
            for (const LinkEntry& e : best.entries) {
                if (requests[e.request].gains(j, e.subcarrier) > eps) {
                    orthogonal[j] = false;
                    break;
                }
            }
        }
    }
    return policy;
}

void phase2(PhasePolicy& policy,
            const GreedyState& state,
            std::span<const Request> requests,
            const Network& network,
            GreedyStats* stats)
{
    policy.phase2_sched.clear();
    std::vector<std::size_t> remaining;
    for (std::size_t r : state.outstanding) {
        const bool in_phase1 = std::any_of(policy.phase1_sched.begin(), policy.phase1_sched.end(),
                                           [r](const LinkEntry& e) { return e.request == r; });
        if (!in_phase1) {
            remaining.push_back(r);
        }
    }
    std::vector<std::size_t> open;
    for (std::size_t j : policy.phase1_active) {
        if (policy.residual[j] > 0.0) {
            open.push_back(j);
        }
    }
    std::sort(open.begin(), open.end());
    double units = units_of(policy.phase1_sched, requests);

    while (!open.empty() && !remaining.empty()) {
        std::optional<LinkEntry> pick;
        std::size_t pick_pos = 0;
        for (std::size_t i = 0; i < remaining.size(); ++i) {
            const Request& req = requests[remaining[i]];
            if (units + req.resources > network.bbu_capacity * (1.0 + 1e-12)) {
                continue;
            }
            for (std::size_t j : open) {
                for (std::size_t s = 0; s < network.subcarriers(); ++s) {
                    if (stats != nullptr) {
                        ++stats->candidate_evals;
                    }
                    const double xi = min_power_requirement(req.min_sinr, req.gains(j, s), network.noise_power);
                    if (xi < policy.residual[j] && (!pick || xi < pick->xi)) {
                        pick = LinkEntry{remaining[i], j, s, xi};
                        pick_pos = i;
                    }
                }
            }
        }
        if (!pick) {
            break;
        }
        policy.phase2_sched.push_back(*pick);
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick_pos));
        units += requests[pick->request].resources;
        policy.residual[pick->rrh] -= pick->xi;
        if (policy.residual[pick->rrh] <= 0.0) {
            open.erase(std::find(open.begin(), open.end(), pick->rrh));
        }
    }
}

SlotDecision finalize_slot(const PhasePolicy& policy,
                           const GreedyState& state,
                           std::span<const Request> requests,
                           const Network& network,
                           FallbackPolicy fallback,
                           const GreedyOptions& options,
                           GreedyStats* stats)
{
    std::vector<LinkEntry> first = policy.phase1_sched;
    std::vector<LinkEntry> shared = policy.phase2_sched;
    std::vector<std::size_t> active = policy.phase1_active;
    SlotDecision decision;

    auto entries = [&] {
        std::vector<LinkEntry> all = first;
        all.insert(all.end(), shared.begin(), shared.end());
        return all;
    };

    std::optional<Attempt> attempt = try_power(entries(), active, requests, network, stats);

    if (!attempt && fallback == FallbackPolicy::ActivateSpare) {
        std::vector<std::size_t> spare;
        for (std::size_t j = 0; j < network.num_rrhs(); ++j) {
            if (std::find(active.begin(), active.end(), j) == active.end()) {
                spare.push_back(j);
            }
        }
        std::stable_sort(spare.begin(), spare.end(), [&](std::size_t a, std::size_t b) {
            return network.rrhs[a].activation_power + network.rrhs[a].fiber_power <
                   network.rrhs[b].activation_power + network.rrhs[b].fiber_power;
        });
        for (std::size_t j : spare) {
            active.push_back(j);
            attempt = try_power(entries(), active, requests, network, stats);
            if (attempt) {
                break;
            }
        }
    }

    while (!attempt && !shared.empty()) {
        shared.erase(shared.begin() + static_cast<std::ptrdiff_t>(most_expensive(shared)));
        attempt = try_power(entries(), active, requests, network, stats);
    }

    if (!attempt && state.epsilon > 0.0) {
        GreedyState orthogonal = state;
        orthogonal.epsilon = 0.0;
        const PhasePolicy redo = phase1(orthogonal, requests, network, options, stats);
        first = redo.phase1_sched;
        active = redo.phase1_active;
        decision.epsilon_reset = true;
        if (stats != nullptr) {
            ++stats->epsilon_resets;
        }
        attempt = try_power(entries(), active, requests, network, stats);
    }

    // Numerical safety net; the orthogonal schedule is feasible in exact arithmetic.
    while (!attempt && !first.empty()) {
        first.erase(first.begin() + static_cast<std::ptrdiff_t>(most_expensive(first)));
        attempt = try_power(entries(), active, requests, network, stats);
    }

    decision.slot = SlotAssignment(requests.size(), network.num_rrhs(), network.subcarriers());
    const std::vector<LinkEntry> kept = entries();
    if (kept.empty() || !attempt) {
        return decision;
    }
    for (std::size_t j : active) {
        decision.slot.set_active(j, true);
    }
    for (const LinkEntry& e : kept) {
        decision.slot.set_allocated(e.request, e.subcarrier, true);
        decision.scheduled.push_back(e.request);
    }
    std::sort(decision.scheduled.begin(), decision.scheduled.end());
    apply_solution(attempt->problem, attempt->solution, decision.slot);
    return decision;
}

OnlineResult run_online(std::span<const Request> requests,
                        const Network& network,
                        FallbackPolicy fallback,
                        const GreedyOptions& options)
{
    check_network(network);
    OnlineResult result;
    result.schedule = empty_schedule(requests.size(), network);
    for (int t = 1; t <= network.horizon; ++t) {
        std::vector<std::size_t> outstanding;
        for (std::size_t r = 0; r < requests.size(); ++r) {
            if (result.schedule.satisfied.count(r) == 0 && requests[r].in_window(t)) {
                outstanding.push_back(r);
            }
        }
        if (outstanding.empty()) {
            continue;
        }
        const GreedyState state = make_greedy_state(t, std::move(outstanding), requests, network.epsilon);
        PhasePolicy policy = phase1(state, requests, network, options, &result.stats);
        phase2(policy, state, requests, network, &result.stats);
        SlotDecision decision = finalize_slot(policy, state, requests, network, fallback, options, &result.stats);
        result.schedule.slots[static_cast<std::size_t>(t - 1)] = std::move(decision.slot);
        result.schedule.satisfied.insert(decision.scheduled.begin(), decision.scheduled.end());
    }
    return result;
}

} // namespace cran
