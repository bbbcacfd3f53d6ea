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

#include "support.hpp"

#include "cran/cost.hpp"
#include "cran/greedy_online.hpp"
#include "cran/scenario.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

using namespace cran;
using namespace cran::testing;

namespace {

std::vector<std::size_t> all_indices(std::size_t n)
{
    std::vector<std::size_t> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = i;
    }
    return out;
}

void check_phase1_structure(const PhasePolicy& policy, const std::vector<Request>& req, const Network& n)
{
    std::map<std::size_t, double> spent;
    std::set<std::size_t> seen_requests;
    std::set<std::pair<std::size_t, std::size_t>> seen_channels;
    double units = 0.0;
    for (const LinkEntry& e : policy.phase1_sched) {
        CHECK(std::find(policy.phase1_active.begin(), policy.phase1_active.end(), e.rrh) !=
              policy.phase1_active.end());
        CHECK(seen_requests.insert(e.request).second);
        CHECK(seen_channels.insert({e.rrh, e.subcarrier}).second);
        spent[e.rrh] += e.xi;
        units += req[e.request].resources;
    }
    for (const auto& [j, total] : spent) {
        CHECK(total <= n.rrhs[j].max_power);
        CHECK(policy.residual[j] >= 0.0);
    }
    CHECK(units <= n.bbu_capacity * (1 + 1e-12));
}

} // namespace

TEST_CASE("power requirement and priority")
{
    CHECK(min_power_requirement(1.0, 1e-10, 1e-13) == doctest::Approx(1e-3).epsilon(1e-12));
    CHECK(min_power_requirement(0.0, 0.0, 1e-13) == 0.0);
    CHECK(std::isinf(min_power_requirement(1.0, 0.0, 1e-13)));
    CHECK(priority_metric(0, 1e-3) == doctest::Approx(1000.0));
    CHECK(priority_metric(2, 1e-3) == doctest::Approx(3000.0));
    CHECK(priority_metric(5, std::numeric_limits<double>::infinity()) == 0.0);
}

TEST_CASE("make_greedy_state sorts and records waiting time")
{
    Network n = small_network(1, 1, 5);
    std::vector<Request> req{make_request(0, 1, 4, 1.0, GainMatrix(1, 1, 1e-10), n),
                             make_request(1, 3, 2, 1.0, GainMatrix(1, 1, 1e-10), n)};
    const GreedyState st = make_greedy_state(4, {1, 0}, req, 0.0);
    CHECK(st.outstanding == std::vector<std::size_t>{0, 1});
    CHECK(st.waiting == std::vector<int>{3, 1});
}

TEST_CASE("phase 1 examples")
{
    Network n = default_network();
    std::vector<Request> none;
    const PhasePolicy empty = phase1(make_greedy_state(1, {}, none, 0.0), none, n);
    CHECK(empty.phase1_active.empty());
    CHECK(empty.phase1_sched.empty());

    GainMatrix g(5, 2, 1e-11);
    g(2, 0) = 1e-9;
    g(2, 1) = 1e-9;
    std::vector<Request> one{make_request(0, 1, 0, 1.0, g, n)};
    const PhasePolicy p = phase1(make_greedy_state(1, {0}, one, 0.0), one, n);
    REQUIRE(p.phase1_active.size() == 1);
    CHECK(n.rrhs[p.phase1_active[0]].id == 3);
    REQUIRE(p.phase1_sched.size() == 1);
    CHECK(p.phase1_sched[0].xi == doctest::Approx(1e-4));
    CHECK(p.residual[2] == doctest::Approx(n.rrhs[2].max_power - 1e-4));

    // With every cross gain positive and epsilon 0 only one RRH gets switched on.
    Rng rng(3);
    auto many = random_requests(rng, n, 8, 1.0, 2.0);
    const PhasePolicy q = phase1(make_greedy_state(1, all_indices(many.size()), many, 0.0), many, n);
    CHECK(q.phase1_active.size() == 1);
    CHECK(q.phase1_sched.size() == 2);  // one per subcarrier
}

TEST_CASE("phase 1 serves the longest-waiting request on ties")
{
    Network n = small_network(1, 1, 3);
    std::vector<Request> req{make_request(0, 3, 0, 1.0, GainMatrix(1, 1, 1e-10), n),
                             make_request(1, 1, 2, 1.0, GainMatrix(1, 1, 1e-10), n)};
    const GreedyState st = make_greedy_state(3, {0, 1}, req, 0.0);
    const PhasePolicy p = phase1(st, req, n);
    REQUIRE(p.phase1_sched.size() == 1);
    CHECK(p.phase1_sched[0].request == 1);

    GreedyOptions asc;
    asc.order = AdmissionOrder::PriorityAscending;
    const PhasePolicy a = phase1(st, req, n, asc);
    REQUIRE(a.phase1_sched.size() == 1);
    CHECK(a.phase1_sched[0].request == 0);
}

TEST_CASE("phase 1 respects budgets, uniqueness and the BBU pool")
{
    Rng rng(11);
    std::uniform_real_distribution<double> eps_draw(0.0, 1e-9);
    for (int trial = 0; trial < 300; ++trial) {
        Network n = default_network();
        n.num_subcarriers = 1 + trial % 4;
        n.bbu_capacity = trial % 5 == 0 ? 20.0 : 100.0;
        auto req = random_requests(rng, n, 1 + trial % 12, 0.5, 100.0, trial % 2 == 0 ? 0.4 : 0.0);
        const double eps = trial % 3 == 0 ? 0.0 : eps_draw(rng);
        const PhasePolicy p = phase1(make_greedy_state(1, all_indices(req.size()), req, eps), req, n);
        check_phase1_structure(p, req, n);
        if (eps == 0.0) {
            std::vector<std::size_t> active = p.phase1_active;
            std::sort(active.begin(), active.end());
            std::vector<Allocation> alloc;
            for (const LinkEntry& e : p.phase1_sched) {
                alloc.push_back({e.request, e.subcarrier});
            }
            std::sort(alloc.begin(), alloc.end(),
                      [](const Allocation& x, const Allocation& y) { return x.request < y.request; });
            CHECK(solve(build_problem(alloc, active, req, n)).status == PowerStatus::Optimal);
        }
    }
}

TEST_CASE("phase 2 picks the cheapest link that fits the residual")
{
    Network n = small_network(1, 1, 1);
    std::vector<Request> req{make_request(0, 1, 0, 1.0, GainMatrix(1, 1, 1e-10), n),
                             make_request(1, 1, 0, 1.0, GainMatrix(1, 1, 1e-10 / 1.5), n)};
    PhasePolicy policy;
    policy.phase1_active = {0};
    policy.residual = {2e-3};
    const GreedyState st = make_greedy_state(1, {0, 1}, req, 0.0);
    phase2(policy, st, req, n);
    REQUIRE(policy.phase2_sched.size() == 1);
    CHECK(policy.phase2_sched[0].request == 0);
    CHECK(policy.residual[0] == doctest::Approx(1e-3));

    PhasePolicy tight;
    tight.phase1_active = {0};
    tight.residual = {2e-3};
    n.bbu_capacity = 4.0;
    phase2(tight, st, req, n);
    CHECK(tight.phase2_sched.empty());
}

TEST_CASE("finalize fallbacks")
{
    Network n = small_network(2, 1, 1);
    GainMatrix ga(2, 1, 0.0);
    ga(0, 0) = 1e-10;
    std::vector<Request> req{make_request(0, 1, 0, 3.0, ga, n),
                             make_request(1, 1, 0, 3.0, GainMatrix(2, 1, 1e-10), n)};
    PhasePolicy policy;
    policy.phase1_active = {0};
    policy.phase1_sched = {{0, 0, 0, 3e-3}};
    policy.phase2_sched = {{1, 0, 0, 3e-3}};
    policy.residual = {n.rrhs[0].max_power - 3e-3, 0.0};
    const GreedyState st = make_greedy_state(1, {0, 1}, req, 0.0);

    const SlotDecision drop = finalize_slot(policy, st, req, n, FallbackPolicy::DropShared);
    CHECK(drop.scheduled == std::vector<std::size_t>{0});
    CHECK(drop.slot.active(0));
    CHECK_FALSE(drop.slot.active(1));
    CHECK(validate_slot(drop.slot, 1, req, n).empty());

    const SlotDecision spare = finalize_slot(policy, st, req, n, FallbackPolicy::ActivateSpare);
    CHECK(spare.scheduled == std::vector<std::size_t>{0, 1});
    CHECK(spare.slot.active(0));
    CHECK(spare.slot.active(1));
    CHECK(validate_slot(spare.slot, 1, req, n).empty());
}

TEST_CASE("a failed non-orthogonal slot falls back to epsilon zero")
{
    Network n = small_network(2, 1, 1);
    std::vector<Request> req{make_request(0, 1, 0, 3.0, GainMatrix(2, 1, 1e-10), n),
                             make_request(1, 1, 0, 3.0, GainMatrix(2, 1, 1e-10), n)};
    const GreedyState st = make_greedy_state(1, {0, 1}, req, 1.0);
    PhasePolicy p = phase1(st, req, n);
    CHECK(p.phase1_active.size() == 2);
    phase2(p, st, req, n);
    GreedyStats stats;
    const SlotDecision d = finalize_slot(p, st, req, n, FallbackPolicy::DropShared, {}, &stats);
    CHECK(d.epsilon_reset);
    CHECK(stats.epsilon_resets == 1);
    CHECK(d.scheduled.size() == 1);
    CHECK(validate_slot(d.slot, 1, req, n).empty());
}

TEST_CASE("online run on light load and on an empty instance")
{
    Network n = default_network();
    std::vector<Request> none;
    for (FallbackPolicy f : {FallbackPolicy::DropShared, FallbackPolicy::ActivateSpare}) {
        const OnlineResult r = run_online(none, n, f);
        CHECK(horizon_cost(r.schedule, none, n) == doctest::Approx(11.25));
    }

    std::vector<Request> light{make_request(0, 1, 2, 1.0, GainMatrix(5, 2, 1e-10), n),
                               make_request(1, 2, 1, 1.0, GainMatrix(5, 2, 2e-10), n)};
    for (FallbackPolicy f : {FallbackPolicy::DropShared, FallbackPolicy::ActivateSpare}) {
        const OnlineResult r = run_online(light, n, f);
        CHECK(r.schedule.satisfied.size() == 2);
        CHECK(validate_schedule(r.schedule, light, n).empty());
    }
}

TEST_CASE("every online slot is feasible on generated instances")
{
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        ScenarioConfig cfg;
        cfg.seed = seed;
        cfg.max_users = 4 + static_cast<int>(seed % 27);
        cfg.min_sinr_db = static_cast<double>(seed % 5) * 5.0;
        Network n = default_network();
        n.num_subcarriers = seed % 2 == 0 ? 2 : 8;
        n.horizon = seed % 2 == 0 ? 3 : 10;
        n.epsilon = seed % 3 == 0 ? 5e-10 : 0.0;
        const auto inst = generate_instance(cfg, n);
        for (FallbackPolicy f : {FallbackPolicy::DropShared, FallbackPolicy::ActivateSpare}) {
            const OnlineResult r = run_online(inst.requests, n, f);
            for (int t = 1; t <= n.horizon; ++t) {
                CHECK(validate_slot(r.schedule.slots[static_cast<std::size_t>(t - 1)], t, inst.requests, n).empty());
            }
            for (const Violation& v : validate_schedule(r.schedule, inst.requests, n)) {
                CHECK(v.kind == ViolationKind::SchedulingCount);
                CHECK(r.schedule.satisfied.count(v.index) == 0);
            }
        }
    }
}
