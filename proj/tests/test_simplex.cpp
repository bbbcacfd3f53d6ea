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

#include "cran/simplex.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <functional>
#include <optional>
#include <random>

using namespace cran::lp;

namespace {

Constraint row(std::vector<double> c, Sense s, double rhs)
{
    return {std::move(c), s, rhs};
}

// Minimum over all basic solutions: every choice of n tight rows among the
// constraints and the bounds x >= 0, solved by Gaussian elimination.
std::optional<double> vertex_minimum(const Problem& p)
{
    const std::size_t n = p.num_vars;
    std::vector<std::vector<double>> rows;
    std::vector<double> rhs;
    for (const Constraint& c : p.constraints) {
        rows.push_back(c.coeffs);
        rhs.push_back(c.rhs);
    }
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> e(n, 0.0);
        e[j] = 1.0;
        rows.push_back(e);
        rhs.push_back(0.0);
    }
    const std::size_t total = rows.size();
    std::optional<double> best;
    std::vector<std::size_t> pick(n);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
        if (depth == n) {
            std::vector<std::vector<double>> a(n, std::vector<double>(n + 1));
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    a[i][j] = rows[pick[i]][j];
                }
                a[i][n] = rhs[pick[i]];
            }
            for (std::size_t col = 0; col < n; ++col) {
                std::size_t piv = col;
                for (std::size_t i = col + 1; i < n; ++i) {
                    if (std::abs(a[i][col]) > std::abs(a[piv][col])) {
                        piv = i;
                    }
                }
                if (std::abs(a[piv][col]) < 1e-12) {
                    return;
                }
                std::swap(a[col], a[piv]);
                for (std::size_t i = 0; i < n; ++i) {
                    if (i != col) {
                        const double f = a[i][col] / a[col][col];
                        for (std::size_t j = col; j <= n; ++j) {
                            a[i][j] -= f * a[col][j];
                        }
                    }
                }
            }
            std::vector<double> x(n);
            for (std::size_t i = 0; i < n; ++i) {
                x[i] = a[i][n] / a[i][i];
                if (x[i] < -1e-9) {
                    return;
                }
            }
            for (const Constraint& c : p.constraints) {
                double lhs = 0.0;
                for (std::size_t j = 0; j < n; ++j) {
                    lhs += c.coeffs[j] * x[j];
                }
                const double tol = 1e-9 * std::max(1.0, std::abs(c.rhs));
                if ((c.sense == Sense::LessEqual && lhs > c.rhs + tol) ||
                    (c.sense == Sense::GreaterEqual && lhs < c.rhs - tol) ||
                    (c.sense == Sense::Equal && std::abs(lhs - c.rhs) > tol)) {
                    return;
                }
            }
            double obj = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                obj += p.objective[j] * x[j];
            }
            if (!best || obj < *best) {
                best = obj;
            }
            return;
        }
        for (std::size_t i = start; i < total; ++i) {
            pick[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
    return best;
}

} // namespace

TEST_CASE("simplex small problems")
{
    SUBCASE("single bound")
    {
        Problem p{1, {1.0}, {row({2.0}, Sense::GreaterEqual, 1.0)}};
        const Result r = solve(p);
        REQUIRE(r.status == Status::Optimal);
        CHECK(r.objective == doctest::Approx(0.5));
    }
    SUBCASE("maximisation via negated objective")
    {
        // max 3x + 5y st x <= 4, 2y <= 12, 3x + 2y <= 18
        Problem p{2,
                  {-3.0, -5.0},
                  {row({1, 0}, Sense::LessEqual, 4), row({0, 2}, Sense::LessEqual, 12),
                   row({3, 2}, Sense::LessEqual, 18)}};
        const Result r = solve(p);
        REQUIRE(r.status == Status::Optimal);
        CHECK(r.objective == doctest::Approx(-36.0));
        CHECK(r.x[0] == doctest::Approx(2.0));
        CHECK(r.x[1] == doctest::Approx(6.0));
    }
    SUBCASE("infeasible")
    {
        Problem p{1, {1.0}, {row({1.0}, Sense::GreaterEqual, 2.0), row({1.0}, Sense::LessEqual, 1.0)}};
        CHECK(solve(p).status == Status::Infeasible);
    }
    SUBCASE("unbounded")
    {
        Problem p{2, {-1.0, 0.0}, {row({1.0, -1.0}, Sense::LessEqual, 1.0)}};
        CHECK(solve(p).status == Status::Unbounded);
    }
    SUBCASE("equality and negative right-hand side")
    {
        Problem p{2, {1.0, 2.0}, {row({1, 1}, Sense::Equal, 3), row({-1, 0}, Sense::LessEqual, -1)}};
        const Result r = solve(p);
        REQUIRE(r.status == Status::Optimal);
        CHECK(r.objective == doctest::Approx(3.0));
    }
    SUBCASE("degenerate problem that cycles under naive pricing")
    {
        // Beale's example.
        Problem p{4,
                  {-0.75, 150.0, -0.02, 6.0},
                  {row({0.25, -60, -0.04, 9}, Sense::LessEqual, 0), row({0.5, -90, -0.02, 3}, Sense::LessEqual, 0),
                   row({0, 0, 1, 0}, Sense::LessEqual, 1)}};
        const Result r = solve(p);
        REQUIRE(r.status == Status::Optimal);
        CHECK(r.objective == doctest::Approx(-0.05));
    }
    SUBCASE("tiny pivot budget forces Bland's rule")
    {
        Problem p{2,
                  {-3.0, -5.0},
                  {row({1, 0}, Sense::LessEqual, 4), row({0, 2}, Sense::LessEqual, 12),
                   row({3, 2}, Sense::LessEqual, 18)}};
        Options o;
        o.dantzig_budget = 1;
        const Result r = solve(p, o);
        CHECK(r.used_bland);
        CHECK(r.objective == doctest::Approx(-36.0));
    }
    SUBCASE("pivot cap raises SolverError")
    {
        Problem p{2,
                  {-3.0, -5.0},
                  {row({1, 0}, Sense::LessEqual, 4), row({0, 2}, Sense::LessEqual, 12),
                   row({3, 2}, Sense::LessEqual, 18)}};
        Options o;
        o.max_pivots = 1;
        CHECK_THROWS_AS(solve(p, o), SolverError);
    }
    SUBCASE("dimension mismatch")
    {
        Problem p{2, {1.0}, {}};
        CHECK_THROWS_AS(solve(p), std::invalid_argument);
    }
}

TEST_CASE("simplex agrees with vertex enumeration")
{
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> coef(-3.0, 5.0);
    std::uniform_real_distribution<double> cost(0.1, 4.0);
    std::uniform_int_distribution<int> sense(0, 2);
    int optimal = 0;
    int infeasible = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        Problem p;
        p.num_vars = 2 + trial % 2;
        for (std::size_t j = 0; j < p.num_vars; ++j) {
            p.objective.push_back(cost(rng));
        }
        const int m = 2 + trial % 3;
        for (int i = 0; i < m; ++i) {
            Constraint c;
            for (std::size_t j = 0; j < p.num_vars; ++j) {
                c.coeffs.push_back(std::round(coef(rng) * 4.0) / 4.0);
            }
            const int s = sense(rng);
            c.sense = s == 0 ? Sense::LessEqual : s == 1 ? Sense::GreaterEqual : Sense::LessEqual;
            c.rhs = std::round(coef(rng) * 4.0) / 4.0;
            p.constraints.push_back(c);
        }
        // Positive costs and x >= 0 keep every feasible problem bounded.
        const Result r = solve(p);
        const auto oracle = vertex_minimum(p);
        if (!oracle) {
            CHECK(r.status == Status::Infeasible);
            ++infeasible;
        } else {
            REQUIRE(r.status == Status::Optimal);
            CHECK(r.objective == doctest::Approx(*oracle).epsilon(1e-7));
            ++optimal;
        }
    }
    CHECK(optimal > 200);
    CHECK(infeasible > 50);
}
