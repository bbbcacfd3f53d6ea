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

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace cran::lp {

namespace {

struct Scaling {
    std::vector<double> row;
    std::vector<double> col;
};

// Geometric-mean passes followed by a max-norm row pass. Gains in the power
// problems span ten or more decades, which the raw tableau does not tolerate.
Scaling equilibrate(const Problem& p)
{
    const std::size_t m = p.constraints.size();
    const std::size_t n = p.num_vars;
    Scaling sc{std::vector<double>(m, 1.0), std::vector<double>(n, 1.0)};
    auto entry = [&](std::size_t i, std::size_t j) {
        return std::abs(p.constraints[i].coeffs[j]) * sc.row[i] * sc.col[j];
    };
    for (int pass = 0; pass < 4; ++pass) {
        for (std::size_t i = 0; i < m; ++i) {
            double lo = std::numeric_limits<double>::infinity();
            double hi = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double v = entry(i, j);
                if (v > 0.0) {
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
            }
            if (hi > 0.0) {
                sc.row[i] /= std::sqrt(lo * hi);
            }
        }
        for (std::size_t j = 0; j < n; ++j) {
            double lo = std::numeric_limits<double>::infinity();
            double hi = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                const double v = entry(i, j);
                if (v > 0.0) {
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
            }
            if (hi > 0.0) {
                sc.col[j] /= std::sqrt(lo * hi);
            }
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        double hi = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            hi = std::max(hi, entry(i, j));
        }
        if (hi > 0.0) {
            sc.row[i] /= hi;
        }
    }
    return sc;
}

class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_((rows + 1) * (cols + 1), 0.0), basis_(rows, 0)
    {
    }

    double& at(std::size_t i, std::size_t j) { return data_[i * (cols_ + 1) + j]; }
    double at(std::size_t i, std::size_t j) const { return data_[i * (cols_ + 1) + j]; }
    double& rhs(std::size_t i) { return at(i, cols_); }
    double& cost(std::size_t j) { return at(rows_, j); }
    double& objective_rhs() { return at(rows_, cols_); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::vector<std::size_t>& basis() { return basis_; }

    void pivot(std::size_t r, std::size_t c)
    {
        const double inv = 1.0 / at(r, c);
        for (std::size_t j = 0; j <= cols_; ++j) {
            at(r, j) *= inv;
        }
        at(r, c) = 1.0;
        for (std::size_t i = 0; i <= rows_; ++i) {
            if (i == r) {
                continue;
            }
            const double f = at(i, c);
            if (f == 0.0) {
                continue;
            }
            for (std::size_t j = 0; j <= cols_; ++j) {
                at(i, j) -= f * at(r, j);
            }
            at(i, c) = 0.0;
        }
        basis_[r] = c;
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> data_;
    std::vector<std::size_t> basis_;
};

enum class Outcome { Optimal, Unbounded };

struct PivotBudget {
    std::size_t dantzig;
    std::size_t hard;
    std::size_t used = 0;
    bool bland = false;
};

// Runs primal simplex on the current objective row. Columns at or beyond
// `enter_limit` never enter the basis.
Outcome iterate(Tableau& t, std::size_t enter_limit, const Options& opt, PivotBudget& budget)
{
    for (;;) {
        if (budget.used >= budget.hard) {
            throw SolverError("simplex pivot limit exceeded (" + std::to_string(budget.hard) + ")");
        }
        const bool bland = budget.used >= budget.dantzig;
        budget.bland = budget.bland || bland;

        std::size_t enter = enter_limit;
        double best = -opt.optimality_tol;
        for (std::size_t j = 0; j < enter_limit; ++j) {
            const double d = t.cost(j);
            if (d < best) {
                enter = j;
                if (bland) {
                    break;
                }
                best = d;
            }
        }
        if (enter == enter_limit) {
            return Outcome::Optimal;
        }

        std::size_t leave = t.rows();
        double best_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < t.rows(); ++i) {
            const double a = t.at(i, enter);
            if (a <= opt.pivot_tol) {
                continue;
            }
            const double ratio = std::max(t.rhs(i), 0.0) / a;
            if (leave == t.rows() || ratio < best_ratio - 1e-12 * std::max(1.0, best_ratio) ||
                (ratio <= best_ratio + 1e-12 * std::max(1.0, best_ratio) && t.basis()[i] < t.basis()[leave])) {
                best_ratio = std::min(best_ratio, ratio);
                leave = i;
            }
        }
        if (leave == t.rows()) {
            return Outcome::Unbounded;
        }
        t.pivot(leave, enter);
        ++budget.used;
    }
}

} // namespace

Result solve(const Problem& problem, const Options& options)
{
    const std::size_t m = problem.constraints.size();
    const std::size_t n = problem.num_vars;
    if (problem.objective.size() != n) {
        throw std::invalid_argument("objective length does not match num_vars");
    }
    for (const Constraint& c : problem.constraints) {
        if (c.coeffs.size() != n) {
            throw std::invalid_argument("constraint length does not match num_vars");
        }
    }

    Scaling sc{std::vector<double>(m, 1.0), std::vector<double>(n, 1.0)};
    if (options.equilibrate) {
        sc = equilibrate(problem);
    }

    // Column layout: [x | slack/surplus | artificial | rhs]
    std::size_t num_slack = 0;
    std::size_t num_art = 0;
    std::vector<Sense> senses(m);
    std::vector<double> sign(m, 1.0);
    for (std::size_t i = 0; i < m; ++i) {
        Sense s = problem.constraints[i].sense;
        if (problem.constraints[i].rhs < 0.0) {
            sign[i] = -1.0;
            if (s == Sense::LessEqual) {
                s = Sense::GreaterEqual;
            } else if (s == Sense::GreaterEqual) {
                s = Sense::LessEqual;
            }
        }
        senses[i] = s;
        num_slack += s != Sense::Equal ? 1 : 0;
        num_art += s != Sense::LessEqual ? 1 : 0;
    }
    const std::size_t art_begin = n + num_slack;
    const std::size_t cols = art_begin + num_art;
    Tableau t(m, cols);

    double max_rhs = 1.0;
    std::size_t next_slack = n;
    std::size_t next_art = art_begin;
    for (std::size_t i = 0; i < m; ++i) {
        const Constraint& c = problem.constraints[i];
        const double f = sign[i] * sc.row[i];
        for (std::size_t j = 0; j < n; ++j) {
            t.at(i, j) = f * c.coeffs[j] * sc.col[j];
        }
        t.rhs(i) = f * c.rhs;
        max_rhs = std::max(max_rhs, std::abs(t.rhs(i)));
        switch (senses[i]) {
        case Sense::LessEqual:
            t.at(i, next_slack) = 1.0;
            t.basis()[i] = next_slack++;
            break;
        case Sense::GreaterEqual:
            t.at(i, next_slack++) = -1.0;
            t.at(i, next_art) = 1.0;
            t.basis()[i] = next_art++;
            break;
        case Sense::Equal:
            t.at(i, next_art) = 1.0;
            t.basis()[i] = next_art++;
            break;
        }
    }

    PivotBudget budget{options.dantzig_budget ? options.dantzig_budget : 50 * (m + cols),
                       options.max_pivots ? options.max_pivots : 5000 * (m + cols)};
    Result result;

    // Phase 1: minimise the sum of artificials.
    if (num_art > 0) {
        for (std::size_t i = 0; i < m; ++i) {
            if (t.basis()[i] >= art_begin) {
                for (std::size_t j = 0; j <= cols; ++j) {
                    if (j < art_begin || j == cols) {
                        t.at(m, j) -= t.at(i, j);
                    }
                }
            }
        }
        iterate(t, art_begin, options, budget);
        const double infeasibility = -t.objective_rhs();
        if (infeasibility > options.feasibility_tol * max_rhs) {
            result.status = Status::Infeasible;
            result.pivots = budget.used;
            result.used_bland = budget.bland;
            return result;
        }
        for (std::size_t i = 0; i < m; ++i) {
            if (t.basis()[i] < art_begin) {
                continue;
            }
            std::size_t k = art_begin;
            double best = options.pivot_tol;
            for (std::size_t j = 0; j < art_begin; ++j) {
                if (std::abs(t.at(i, j)) > best) {
                    best = std::abs(t.at(i, j));
                    k = j;
                }
            }
            if (k < art_begin) {
                t.pivot(i, k);
            }
        }
    }

    // Phase 2 objective, normalised so the largest cost coefficient is 1.
    std::vector<double> c(cols, 0.0);
    double cmax = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        c[j] = problem.objective[j] * sc.col[j];
        cmax = std::max(cmax, std::abs(c[j]));
    }
    if (cmax > 0.0) {
        for (double& v : c) {
            v /= cmax;
        }
    }
    for (std::size_t j = 0; j <= cols; ++j) {
        t.at(m, j) = j < cols ? c[j] : 0.0;
    }
    for (std::size_t i = 0; i < m; ++i) {
        const double cb = c[t.basis()[i]];
        if (cb == 0.0) {
            continue;
        }
        for (std::size_t j = 0; j <= cols; ++j) {
            t.at(m, j) -= cb * t.at(i, j);
        }
    }

    const Outcome outcome = iterate(t, art_begin, options, budget);
    result.pivots = budget.used;
    result.used_bland = budget.bland;
    if (outcome == Outcome::Unbounded) {
        result.status = Status::Unbounded;
        return result;
    }

    result.status = Status::Optimal;
    result.x.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t b = t.basis()[i];
        if (b < n) {
            result.x[b] = std::max(t.rhs(i), 0.0) * sc.col[b];
        }
    }
    result.objective = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        result.objective += problem.objective[j] * result.x[j];
    }
    return result;
}

} // namespace cran::lp
