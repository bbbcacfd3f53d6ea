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

#include "cran/harness.hpp"

#include <doctest.h>

#include <sstream>

using namespace cran;
using namespace cran::testing;

namespace {

SweepSpec small_spec()
{
    SweepSpec spec;
    spec.gamma_db_values = {0.0, 10.0};
    spec.runs = 6;
    spec.base_seed = 17;
    spec.threads = 1;
    return spec;
}

Network two_rrhs()
{
    Network n = default_network();
    n.rrhs = {n.rrhs[0], n.rrhs[4]};
    return n;
}

} // namespace

TEST_CASE("algorithm names round-trip")
{
    for (Algorithm a : {Algorithm::Optimal, Algorithm::GreedyP1, Algorithm::GreedyP2, Algorithm::Heuristic}) {
        CHECK(parse_algorithm(to_string(a)) == a);
    }
    CHECK_FALSE(parse_algorithm("fastest").has_value());
}

TEST_CASE("run_once on an empty instance")
{
    Network n = default_network();
    std::vector<Request> none;
    for (Algorithm a : {Algorithm::Optimal, Algorithm::GreedyP1, Algorithm::GreedyP2, Algorithm::Heuristic}) {
        const RunOutcome o = run_once(none, a, n);
        CHECK(o.feasible);
        CHECK(o.metrics.weighted_cost == doctest::Approx(11.25));
        CHECK(o.metrics.satisfied_ratio == 1.0);
        CHECK(o.metrics.rrh_activation == std::vector<double>(5, 0.0));
    }
}

TEST_CASE("a one-run sweep reproduces run_once")
{
    SweepSpec spec = small_spec();
    spec.runs = 1;
    spec.gamma_db_values = {5.0};
    ScenarioConfig sc;
    const Network n = two_rrhs();
    const SweepResult res = run_sweep(spec, sc, n);
    REQUIRE(res.cells.size() == 4);
    CHECK(res.rrh_ids == std::vector<int>{1, 5});
    ScenarioConfig one = sc;
    one.seed = spec.base_seed;
    one.min_sinr_db = 5.0;
    const auto inst = generate_instance(one, n);
    for (const CellResult& c : res.cells) {
        const RunOutcome o = run_once(inst.requests, c.algorithm, n);
        if (!o.feasible) {
            CHECK(c.runs == 0);
            CHECK(c.infeasible == 1);
            continue;
        }
        CHECK(c.runs == 1);
        CHECK(c.mean_cost == doctest::Approx(o.metrics.weighted_cost).epsilon(1e-12));
        CHECK(c.satisfied_ratio == doctest::Approx(o.metrics.satisfied_ratio));
        CHECK(c.stderr_cost == 0.0);
    }
}

TEST_CASE("sweep output does not depend on the thread count")
{
    SweepSpec spec = small_spec();
    ScenarioConfig sc;
    const Network n = two_rrhs();
    std::ostringstream a;
    std::ostringstream b;
    write_csv(a, run_sweep(spec, sc, n));
    spec.threads = 3;
    write_csv(b, run_sweep(spec, sc, n));
    CHECK(a.str() == b.str());
}

TEST_CASE("csv layout")
{
    SweepSpec spec = small_spec();
    spec.algorithms = {Algorithm::Heuristic, Algorithm::GreedyP1};
    spec.gamma_db_values = {10.0, 0.0};
    ScenarioConfig sc;
    std::ostringstream out;
    write_csv(out, run_sweep(spec, sc, default_network()));
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line ==
          "algo,gamma_db,epsilon,r_max,runs,mean_cost_w,stderr_cost_w,satisfied_ratio,stderr_ratio,"
          "act_rrh1,act_rrh2,act_rrh3,act_rrh4,act_rrh5,tx_w,activation_w,bbu_w");
    std::vector<std::string> rows;
    while (std::getline(in, line)) {
        rows.push_back(line);
    }
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].rfind("greedy-p1,0,0,7,6,", 0) == 0);
    CHECK(rows[1].rfind("greedy-p1,10,0,7,6,", 0) == 0);
    CHECK(rows[2].rfind("heuristic,0,", 0) == 0);
    CHECK(rows[3].rfind("heuristic,10,", 0) == 0);
}

TEST_CASE("oversized optimal cells are skipped with a reason")
{
    SweepSpec spec = small_spec();
    spec.algorithms = {Algorithm::Optimal, Algorithm::GreedyP1};
    spec.gamma_db_values = {0.0};
    spec.r_max_values = {30};
    spec.runs = 2;
    ScenarioConfig sc;
    const SweepResult res = run_sweep(spec, sc, default_network());
    REQUIRE(res.cells.size() == 2);
    const CellResult& greedy = res.cells[0];
    const CellResult& opt = res.cells[1];
    CHECK(greedy.skipped.empty());
    CHECK(opt.algorithm == Algorithm::Optimal);
    CHECK(opt.skipped.find("r_max 30") != std::string::npos);
    CHECK(opt.runs == 0);
    std::ostringstream out;
    write_csv(out, res);
    CHECK(out.str().find("optimal,0,0,30,0,nan,nan,nan,nan") != std::string::npos);
}

TEST_CASE("sweep argument checks")
{
    SweepSpec spec;
    spec.runs = 0;
    CHECK_THROWS_AS(check_sweep(spec), std::invalid_argument);
    spec = SweepSpec{};
    spec.algorithms.clear();
    CHECK_THROWS_AS(check_sweep(spec), std::invalid_argument);
}

TEST_CASE("pairwise summation")
{
    std::vector<double> none;
    CHECK(pairwise_sum(none) == 0.0);
    std::vector<double> v(1000, 0.1);
    CHECK(pairwise_sum(v) == doctest::Approx(100.0).epsilon(1e-14));
    std::vector<double> w{1e16, 1.0, -1e16, 1.0};
    CHECK(pairwise_sum(w) == pairwise_sum(w));
}
