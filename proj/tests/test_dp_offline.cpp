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
#include "cran/dp_offline.hpp"
#include "cran/lp_power.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace cran;
using namespace cran::testing;

namespace {

std::vector<Request> oracle_instance(Rng& rng, Network& n)
{
    std::uniform_int_distribution<int> rrhs(1, 3);
    std::uniform_int_distribution<int> count(0, 4);
    n = small_network(rrhs(rng), 2, 3);
    return random_requests(rng, n, count(rng), 0.5, 6.0, 0.2);
}

// Random horizon-wide schedule with LP powers, or nullopt if the draw is not
// power feasible.
std::optional<double> random_schedule_cost(Rng& rng, const std::vector<Request>& req, const Network& n)
{
    Schedule sch = empty_schedule(req.size(), n);
    for (std::size_t r = 0; r < req.size(); ++r) {
        std::uniform_int_distribution<int> slot(req[r].arrival_slot, std::min(req[r].deadline(), n.horizon));
        std::uniform_int_distribution<std::size_t> sc(0, n.subcarriers() - 1);
        sch.slots[static_cast<std::size_t>(slot(rng) - 1)].set_allocated(r, sc(rng), true);
        sch.satisfied.insert(r);
    }
    std::bernoulli_distribution on(0.6);
    for (SlotAssignment& slot : sch.slots) {
        for (std::size_t j = 0; j < n.num_rrhs(); ++j) {
            slot.set_active(j, on(rng));
        }
        const PowerProblem p = build_problem(slot, req, n);
        const PowerSolution s = solve(p);
        if (s.status != PowerStatus::Optimal) {
            return std::nullopt;
        }
        apply_solution(p, s, slot);
    }
    if (!validate_schedule(sch, req, n).empty()) {
        return std::nullopt;
    }
    return horizon_cost(sch, req, n);
}

} // namespace

TEST_CASE("enumerate_actions counts")
{
    Network n = small_network(2, 2, 3);
    std::vector<Request> none;
    CHECK(enumerate_actions({1, 0}, none, n).size() == 4);

    std::vector<Request> two{make_request(0, 1, 2, 1.0, GainMatrix(2, 2, 1e-10), n),
                             make_request(1, 1, 2, 1.0, GainMatrix(2, 2, 1e-10), n)};
    const auto actions = enumerate_actions({1, 0b11}, two, n);
    CHECK(actions.size() <= 36);
    CHECK(actions.size() == 36);

    n.bbu_capacity = 3.0;  // below one request's 6 units
    for (const Action& a : enumerate_actions({1, 0b11}, two, n)) {
        CHECK(a.assignment == std::vector<int>{-1, -1});
    }
}

TEST_CASE("single request closed form")
{
    Network n = small_network(1, 1, 1);
    std::vector<Request> req{make_request(0, 1, 0, 1.0, GainMatrix(1, 1, 1e-10), n)};
    const auto sol = solve_offline(req, n);
    REQUIRE(sol);
    // transmit power + w_R (130 + 2) + w_B * 6
    CHECK(sol->cost == doctest::Approx(1e-3 + 0.01 * 132.0 + 0.1 * 6.0).epsilon(1e-9));
    CHECK(sol->schedule.satisfied.count(0) == 1);
    CHECK(validate_schedule(sol->schedule, req, n).empty());
}

TEST_CASE("no requests keeps every RRH asleep")
{
    Network n = default_network();
    std::vector<Request> none;
    const auto sol = solve_offline(none, n);
    REQUIRE(sol);
    CHECK(sol->cost == doctest::Approx(11.25).epsilon(1e-12));
}

TEST_CASE("dynamic program agrees with exhaustive search")
{
    Rng rng(2024);
    int feasible = 0;
    for (int trial = 0; trial < 100; ++trial) {
        Network n;
        const auto req = oracle_instance(rng, n);
        const auto dp = solve_offline(req, n);
        const auto bf = brute_force(req, n);
        REQUIRE(dp.has_value() == bf.has_value());
        if (!dp) {
            CHECK_FALSE(feasibility_test(req, n));
            continue;
        }
        ++feasible;
        CHECK(dp->cost == doctest::Approx(bf->cost).epsilon(1e-6));
        CHECK(validate_schedule(dp->schedule, req, n).empty());
        CHECK(oracle_feasible(dp->schedule, req, n));
        CHECK(oracle_feasible(bf->schedule, req, n));
        CHECK(horizon_cost(dp->schedule, req, n) == doctest::Approx(dp->cost).epsilon(1e-9));
        CHECK(feasibility_test(req, n));
    }
    CHECK(feasible > 50);
}

TEST_CASE("infeasible instance is reported by every solver")
{
    Network n = small_network(1, 1, 2);
    std::vector<Request> req{make_request(0, 1, 1, 1.0, GainMatrix(1, 1, 1e-16), n)};
    CHECK_FALSE(solve_offline(req, n).has_value());
    CHECK_FALSE(brute_force(req, n).has_value());
    CHECK_FALSE(feasibility_test(req, n));
}

TEST_CASE("feasibility_test examples")
{
    Network n = small_network(1, 1, 3);
    std::vector<Request> none;
    CHECK(feasibility_test(none, n));

    std::vector<Request> late{make_request(0, 4, 0, 1.0, GainMatrix(1, 1, 1e-10), n)};
    CHECK_FALSE(feasibility_test(late, n));

    // 6 units each against 10: they fit only in different slots.
    n.bbu_capacity = 10.0;
    n.num_subcarriers = 2;
    std::vector<Request> pair{make_request(0, 1, 1, 1.0, GainMatrix(1, 2, 1e-10), n),
                              make_request(1, 1, 1, 1.0, GainMatrix(1, 2, 1e-10), n)};
    CHECK(feasibility_test(pair, n));
    n.horizon = 1;
    pair[0].window_len = 0;
    pair[1].window_len = 0;
    CHECK_FALSE(feasibility_test(pair, n));
}

TEST_CASE("optimal cost is below random feasible schedules")
{
    Rng rng(77);
    int compared = 0;
    for (int trial = 0; trial < 40; ++trial) {
        Network n = small_network(2, 2, 3);
        const auto req = random_requests(rng, n, 3, 0.5, 3.0);
        const auto dp = solve_offline(req, n);
        if (!dp) {
            continue;
        }
        for (int k = 0; k < 25; ++k) {
            if (auto c = random_schedule_cost(rng, req, n)) {
                CHECK(dp->cost <= *c * (1.0 + 1e-9));
                ++compared;
            }
        }
    }
    CHECK(compared > 100);
}

TEST_CASE("memoisation does not change the optimum")
{
    Rng rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        Network n = small_network(2, 2, 3);
        const auto req = random_requests(rng, n, 3, 0.5, 3.0);
        DpOptions plain;
        plain.memoize = false;
        const auto a = solve_offline(req, n);
        const auto b = solve_offline(req, n, plain);
        REQUIRE(a.has_value() == b.has_value());
        if (a) {
            CHECK(a->cost == doctest::Approx(b->cost).epsilon(1e-12));
        }
    }
}

TEST_CASE("explored states stay within the mask-by-slot bound")
{
    Rng rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        Network n = small_network(3, 2, 4);
        const auto req = random_requests(rng, n, 6, 0.5, 3.0);
        OfflineSolver solver(req, n);
        const auto sol = solver.solve();
        const std::size_t bound = (std::size_t{1} << req.size()) * static_cast<std::size_t>(n.horizon);
        CHECK(solver.explored_states() <= bound);
        if (sol) {
            CHECK(sol->explored_states <= bound);
        }
    }
}

TEST_CASE("size guard")
{
    Network n = small_network(1, 1, 1);
    std::vector<Request> many;
    for (int r = 0; r < 13; ++r) {
        many.push_back(make_request(r, 1, 0, 1.0, GainMatrix(1, 1, 1e-10), n));
    }
    CHECK_THROWS_AS(solve_offline(many, n), InstanceTooLarge);
    Network wide = small_network(7, 1, 1);
    std::vector<Request> none;
    CHECK_THROWS_AS(solve_offline(none, wide), InstanceTooLarge);
    DpOptions lifted;
    lifted.allow_oversize = true;
    CHECK(solve_offline(none, wide, lifted).has_value());

    Network big = small_network(4, 2, 3);
    CHECK_THROWS(brute_force(none, big));
}
