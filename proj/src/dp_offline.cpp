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

#include "cran/dp_offline.hpp"

#include "cran/cost.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <unordered_set>

namespace cran {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int last_slot(const Request& r, int horizon)
{
    return std::min(r.deadline(), horizon);
}

std::uint32_t full_mask(std::size_t n)
{
    return n == 0 ? 0U : static_cast<std::uint32_t>((std::uint64_t{1} << n) - 1);
}

bool has_expired(const DpState& st, std::span<const Request> requests, int horizon)
{
    for (std::size_t r = 0; r < requests.size(); ++r) {
        if (((st.outstanding >> r) & 1U) && last_slot(requests[r], horizon) < st.slot) {
            return true;
        }
    }
    return false;
}

// Visits every allocation of the eligible outstanding requests that keeps the
// BBU within capacity and schedules every request whose last usable slot is now.
// Order: lexicographic in the per-request assignment vector (-1 = unscheduled).
template <class Fn>
void for_each_assignment(const DpState& st, std::span<const Request> requests, const Network& network, Fn&& fn)
{
    std::vector<std::size_t> eligible;
    for (std::size_t r = 0; r < requests.size(); ++r) {
        if (((st.outstanding >> r) & 1U) && requests[r].in_window(st.slot) && st.slot <= network.horizon) {
            eligible.push_back(r);
        }
    }
    const int num_sc = network.num_subcarriers;
    std::vector<int> digits(eligible.size(), 0);
    std::vector<int> assignment(requests.size(), -1);
    std::vector<Allocation> scheduled;
    for (;;) {
        bool ok = true;
        double used = 0.0;
        scheduled.clear();
        for (std::size_t i = 0; i < eligible.size() && ok; ++i) {
            const std::size_t r = eligible[i];
            assignment[r] = digits[i] - 1;
            if (digits[i] == 0) {
                ok = last_slot(requests[r], network.horizon) != st.slot;
            } else {
                used += requests[r].resources;
                scheduled.push_back({r, static_cast<std::size_t>(digits[i] - 1)});
            }
        }
        if (ok && used <= network.bbu_capacity * (1.0 + 1e-12)) {
            fn(static_cast<const std::vector<int>&>(assignment), static_cast<const std::vector<Allocation>&>(scheduled),
               used);
        }
        std::size_t pos = eligible.size();
        while (pos > 0) {
            --pos;
            if (++digits[pos] <= num_sc) {
                break;
            }
            digits[pos] = 0;
            if (pos == 0) {
                return;
            }
        }
        if (eligible.empty()) {
            return;
        }
    }
}

std::vector<std::size_t> mask_to_rrhs(std::uint32_t mask, std::size_t num_rrhs)
{
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < num_rrhs; ++j) {
        if ((mask >> j) & 1U) {
            out.push_back(j);
        }
    }
    return out;
}

std::string psi_key(const std::vector<Allocation>& scheduled, std::uint32_t mask)
{
    std::string key;
    key.reserve(scheduled.size() * 2 + 4);
    for (const Allocation& a : scheduled) {
        key.push_back(static_cast<char>(a.request));
        key.push_back(static_cast<char>(a.subcarrier));
    }
    for (int b = 0; b < 4; ++b) {
        key.push_back(static_cast<char>((mask >> (8 * b)) & 0xFFU));
    }
    return key;
}

bool tie_or_better(double cost, double best)
{
    return cost <= best + 1e-12 * std::max(1.0, std::abs(best));
}

bool strictly_better(double cost, double best)
{
    return cost < best - 1e-12 * std::max(1.0, std::abs(best));
}

bool action_less(const Action& a, const Action& b)
{
    if (a.active_mask != b.active_mask) {
        return a.active_mask < b.active_mask;
    }
    return a.assignment < b.assignment;
}

void check_size(std::span<const Request> requests, const Network& network, const DpOptions& options)
{
    if (requests.size() > 31) {
        throw InstanceTooLarge("offline solver supports at most 31 requests");
    }
    if (network.num_rrhs() > 31) {
        throw InstanceTooLarge("offline solver supports at most 31 RRHs");
    }
    if (!options.allow_oversize &&
        (requests.size() > options.max_requests || network.num_rrhs() > options.max_rrhs)) {
        throw InstanceTooLarge("instance too large for the offline solver (R=" + std::to_string(requests.size()) +
                               ", H=" + std::to_string(network.num_rrhs()) + "; limits R<=" +
                               std::to_string(options.max_requests) + ", H<=" + std::to_string(options.max_rrhs) +
                               ")");
    }
}

} // namespace

std::vector<Action> enumerate_actions(const DpState& state, std::span<const Request> requests, const Network& network)
{
    std::vector<Action> out;
    const std::uint32_t masks = 1U << network.num_rrhs();
    for_each_assignment(state, requests, network,
                        [&](const std::vector<int>& assignment, const std::vector<Allocation>&, double) {
                            for (std::uint32_t y = 0; y < masks; ++y) {
                                out.push_back({assignment, y});
                            }
                        });
    return out;
}

OfflineSolver::OfflineSolver(std::span<const Request> requests, const Network& network, DpOptions options)
    : requests_(requests), network_(network), options_(options)
{
    check_network(network);
    check_size(requests, network, options);
}

std::uint64_t OfflineSolver::key(const DpState& state) const
{
    return (static_cast<std::uint64_t>(state.slot) << 32) | state.outstanding;
}

const OfflineSolver::PsiValue& OfflineSolver::psi(const std::vector<Allocation>& scheduled, std::uint32_t active_mask)
{
    const std::string k = psi_key(scheduled, active_mask);
    auto it = psi_cache_.find(k);
    if (it != psi_cache_.end()) {
        return it->second;
    }
    const auto active = mask_to_rrhs(active_mask, network_.num_rrhs());
    const PowerProblem problem = build_problem(scheduled, active, requests_, network_);
    const PowerSolution sol = cran::solve(problem);
    ++lp_solves_;
    PsiValue v;
    v.feasible = sol.status == PowerStatus::Optimal;
    v.tx = sol.objective;
    v.power = sol.power;
    return psi_cache_.emplace(k, std::move(v)).first->second;
}

OfflineSolver::Decision OfflineSolver::decide(const DpState& state)
{
    if (state.slot > network_.horizon) {
        return {state.outstanding == 0 ? 0.0 : kInf, {}, false};
    }
    const std::uint64_t k = key(state);
    if (options_.memoize) {
        if (auto it = memo_.find(k); it != memo_.end()) {
            return it->second;
        }
    }

    Decision best{kInf, {}, false};
    if (!has_expired(state, requests_, network_.horizon)) {
        const std::size_t num_rrhs = network_.num_rrhs();
        const std::uint32_t all = full_mask(num_rrhs);
        const std::uint32_t masks = all + 1;
        for_each_assignment(state, requests_, network_,
                            [&](const std::vector<int>& assignment, const std::vector<Allocation>& scheduled,
                                double used) {
                                if (!scheduled.empty() && !psi(scheduled, all).feasible) {
                                    return;
                                }
                                std::uint32_t next = state.outstanding;
                                for (const Allocation& a : scheduled) {
                                    next &= ~(1U << a.request);
                                }
                                const double future = cost_to_go({state.slot + 1, next});
                                if (future == kInf) {
                                    return;
                                }
                                const double base = network_.weight_bbu * network_.bbu_power_per_unit * used + future;
                                for (std::uint32_t y = 0; y < masks; ++y) {
                                    double tx = 0.0;
                                    if (!scheduled.empty()) {
                                        if (y == 0) {
                                            continue;
                                        }
                                        const PsiValue& v = psi(scheduled, y);
                                        if (!v.feasible) {
                                            continue;
                                        }
                                        tx = v.tx;
                                    }
                                    const double cost =
                                        tx + network_.weight_rrh * activation_cost(y, network_.rrhs) + base;
                                    if (!best.has_action || strictly_better(cost, best.value)) {
                                        best = {cost, {assignment, y}, true};
                                    } else if (tie_or_better(cost, best.value)) {
                                        Action candidate{assignment, y};
                                        if (action_less(candidate, best.action)) {
                                            best = {std::min(cost, best.value), std::move(candidate), true};
                                        }
                                    }
                                }
                            });
    }
    if (options_.memoize) {
        memo_.emplace(k, best);
    }
    return best;
}

double OfflineSolver::cost_to_go(const DpState& state)
{
    return decide(state).value;
}

std::optional<DpSolution> OfflineSolver::solve()
{
    const DpState root{1, full_mask(requests_.size())};
    const double value = cost_to_go(root);
    if (value == kInf) {
        return std::nullopt;
    }

    DpSolution out;
    out.cost = value;
    out.schedule = empty_schedule(requests_.size(), network_);
    DpState st = root;
    for (int t = 1; t <= network_.horizon; ++t) {
        const Decision d = decide(st);
        SlotAssignment& slot = out.schedule.slots[static_cast<std::size_t>(t - 1)];
        std::vector<Allocation> scheduled;
        for (std::size_t r = 0; r < requests_.size(); ++r) {
            if (d.action.assignment.size() == requests_.size() && d.action.assignment[r] >= 0) {
                scheduled.push_back({r, static_cast<std::size_t>(d.action.assignment[r])});
            }
        }
        for (std::size_t j = 0; j < network_.num_rrhs(); ++j) {
            slot.set_active(j, (d.action.active_mask >> j) & 1U);
        }
        for (const Allocation& a : scheduled) {
            slot.set_allocated(a.request, a.subcarrier, true);
            out.schedule.satisfied.insert(a.request);
            st.outstanding &= ~(1U << a.request);
        }
        if (!scheduled.empty()) {
            const PsiValue& v = psi(scheduled, d.action.active_mask);
            const auto active = mask_to_rrhs(d.action.active_mask, network_.num_rrhs());
            const PowerProblem problem = build_problem(scheduled, active, requests_, network_);
            PowerSolution sol;
            sol.status = PowerStatus::Optimal;
            sol.power = v.power;
            apply_solution(problem, sol, slot);
        }
        st.slot = t + 1;
    }
    out.explored_states = explored_states();
    out.lp_solves = lp_solves_;
    return out;
}

std::optional<DpSolution> solve_offline(std::span<const Request> requests, const Network& network,
                                        const DpOptions& options)
{
    OfflineSolver solver(requests, network, options);
    return solver.solve();
}

std::optional<DpSolution> brute_force(std::span<const Request> requests, const Network& network)
{
    check_network(network);
    if (requests.size() > 4 || network.horizon > 3 || network.num_rrhs() > 3) {
        throw InstanceTooLarge("brute force is limited to R<=4, T<=3, H<=3");
    }
    const int horizon = network.horizon;
    const std::size_t num_sc = network.subcarriers();
    const std::size_t num_rrhs = network.num_rrhs();

    // Every (slot, subcarrier) a request may use.
    std::vector<std::vector<std::pair<int, std::size_t>>> choices(requests.size());
    for (std::size_t r = 0; r < requests.size(); ++r) {
        for (int t = 1; t <= horizon; ++t) {
            if (requests[r].in_window(t)) {
                for (std::size_t s = 0; s < num_sc; ++s) {
                    choices[r].push_back({t, s});
                }
            }
        }
        if (choices[r].empty()) {
            return std::nullopt;
        }
    }

    std::map<std::string, PowerSolution> cache;
    std::size_t lp_solves = 0;
    auto psi = [&](const std::vector<Allocation>& scheduled, std::uint32_t mask) -> const PowerSolution& {
        const std::string k = psi_key(scheduled, mask);
        auto it = cache.find(k);
        if (it == cache.end()) {
            ++lp_solves;
            const auto active = mask_to_rrhs(mask, num_rrhs);
            it = cache.emplace(k, solve(build_problem(scheduled, active, requests, network))).first;
        }
        return it->second;
    };

    const std::uint32_t masks = 1U << num_rrhs;
    double best_cost = kInf;
    std::vector<std::size_t> best_pick;
    std::vector<std::uint32_t> best_masks;
    std::vector<std::size_t> pick(requests.size(), 0);
    std::size_t enumerated = 0;
    for (;;) {
        ++enumerated;
        double total = 0.0;
        std::vector<std::uint32_t> slot_masks(static_cast<std::size_t>(horizon), 0);
        for (int t = 1; t <= horizon && total < kInf; ++t) {
            std::vector<Allocation> scheduled;
            double used = 0.0;
            for (std::size_t r = 0; r < requests.size(); ++r) {
                const auto& c = choices[r][pick[r]];
                if (c.first == t) {
                    scheduled.push_back({r, c.second});
                    used += requests[r].resources;
                }
            }
            if (used > network.bbu_capacity * (1.0 + 1e-12)) {
                total = kInf;
                break;
            }
            double slot_best = kInf;
            for (std::uint32_t y = 0; y < masks; ++y) {
                double tx = 0.0;
                if (!scheduled.empty()) {
                    const PowerSolution& sol = psi(scheduled, y);
                    if (sol.status != PowerStatus::Optimal) {
                        continue;
                    }
                    tx = sol.objective;
                }
                const double c = tx + network.weight_rrh * activation_cost(y, network.rrhs);
                if (c < slot_best) {
                    slot_best = c;
                    slot_masks[static_cast<std::size_t>(t - 1)] = y;
                }
            }
            total += slot_best + network.weight_bbu * network.bbu_power_per_unit * used;
        }
        if (total < best_cost) {
            best_cost = total;
            best_pick = pick;
            best_masks = slot_masks;
        }
        std::size_t pos = requests.size();
        bool done = true;
        while (pos > 0) {
            --pos;
            if (++pick[pos] < choices[pos].size()) {
                done = false;
                break;
            }
            pick[pos] = 0;
        }
        if (done) {
            break;
        }
    }
    if (best_cost == kInf) {
        return std::nullopt;
    }

    DpSolution out;
    out.cost = best_cost;
    out.explored_states = enumerated;
    out.schedule = empty_schedule(requests.size(), network);
    for (int t = 1; t <= horizon; ++t) {
        SlotAssignment& slot = out.schedule.slots[static_cast<std::size_t>(t - 1)];
        const std::uint32_t y = best_masks[static_cast<std::size_t>(t - 1)];
        std::vector<Allocation> scheduled;
        for (std::size_t r = 0; r < requests.size(); ++r) {
            const auto& c = choices[r][best_pick[r]];
            if (c.first == t) {
                scheduled.push_back({r, c.second});
                slot.set_allocated(r, c.second, true);
                out.schedule.satisfied.insert(r);
            }
        }
        for (std::size_t j = 0; j < num_rrhs; ++j) {
            slot.set_active(j, (y >> j) & 1U);
        }
        if (!scheduled.empty()) {
            const auto active = mask_to_rrhs(y, num_rrhs);
            const PowerProblem problem = build_problem(scheduled, active, requests, network);
            apply_solution(problem, psi(scheduled, y), slot);
        }
    }
    out.lp_solves = lp_solves;
    return out;
}

bool feasibility_test(std::span<const Request> requests, const Network& network, const DpOptions& options)
{
    check_network(network);
    check_size(requests, network, options);
    const std::uint32_t all = full_mask(network.num_rrhs());
    const auto active = mask_to_rrhs(all, network.num_rrhs());
    std::map<std::string, bool> psi_feasible;
    std::unordered_set<std::uint64_t> dead;

    // With a constant objective only reachability matters, and activating every
    // RRH never shrinks the power-feasible set, so y = all-on is the only
    // activation pattern worth testing.
    auto feasible = [&](auto&& self, const DpState& st) -> bool {
        if (st.slot > network.horizon) {
            return st.outstanding == 0;
        }
        if (has_expired(st, requests, network.horizon)) {
            return false;
        }
        const std::uint64_t k = (static_cast<std::uint64_t>(st.slot) << 32) | st.outstanding;
        if (dead.count(k) != 0) {
            return false;
        }
        bool found = false;
        for_each_assignment(st, requests, network,
                            [&](const std::vector<int>&, const std::vector<Allocation>& scheduled, double) {
                                if (found) {
                                    return;
                                }
                                if (!scheduled.empty()) {
                                    const std::string key = psi_key(scheduled, all);
                                    auto it = psi_feasible.find(key);
                                    if (it == psi_feasible.end()) {
                                        const auto sol = solve(build_problem(scheduled, active, requests, network));
                                        it = psi_feasible.emplace(key, sol.status == PowerStatus::Optimal).first;
                                    }
                                    if (!it->second) {
                                        return;
                                    }
                                }
                                std::uint32_t next = st.outstanding;
                                for (const Allocation& a : scheduled) {
                                    next &= ~(1U << a.request);
                                }
                                found = self(self, DpState{st.slot + 1, next});
                            });
        if (!found) {
            dead.insert(k);
        }
        return found;
    };
    return feasible(feasible, DpState{1, full_mask(requests.size())});
}

} // namespace cran
