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

#include <cstddef>
#include <stdexcept>
#include <vector>

// Small dense two-phase simplex. Problems handled here have at most a few
// hundred variables, so the full tableau is kept in memory.
namespace cran::lp {

enum class Sense { LessEqual, GreaterEqual, Equal };

struct Constraint {
    std::vector<double> coeffs;
    Sense sense = Sense::LessEqual;
    double rhs = 0.0;
};

/// minimize objective . x  subject to constraints, x >= 0
struct Problem {
    std::size_t num_vars = 0;
    std::vector<double> objective;
    std::vector<Constraint> constraints;
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Options {
    double feasibility_tol = 1e-9;
    double optimality_tol = 1e-9;
    double pivot_tol = 1e-11;
    /// Dantzig pricing for this many pivots, Bland's rule afterwards.
    /// 0 selects 50 * (rows + columns).
    std::size_t dantzig_budget = 0;
    /// Hard pivot limit; exceeding it raises SolverError. 0 selects 5000 * (rows + columns).
    std::size_t max_pivots = 0;
    bool equilibrate = true;
};

struct Result {
    Status status = Status::Infeasible;
    std::vector<double> x;
    double objective = 0.0;
    std::size_t pivots = 0;
    bool used_bland = false;
};

/// Numerical failure, distinct from a proven infeasible problem.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Result solve(const Problem& problem, const Options& options = {});

} // namespace cran::lp
