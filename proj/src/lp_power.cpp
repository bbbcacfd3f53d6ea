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

#include "cran/lp_power.hpp"

#include "cran/simplex.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace cran {

PowerProblem build_problem(std::span<const Allocation> scheduled,
                           std::span<const std::size_t> active_rrhs,
                           std::span<const Request> requests,
                           const Network& network)
{
    PowerProblem p;
    p.noise = network.noise_power;
    std::vector<bool> seen(requests.size(), false);
    for (const Allocation& a : scheduled) {
        if (a.request >= requests.size()) {
            throw std::invalid_argument("allocation references unknown request " + std::to_string(a.request));
        }
        if (a.subcarrier >= network.subcarriers()) {
            throw std::invalid_argument("allocation references unknown subcarrier " + std::to_string(a.subcarrier));
        }
        if (seen[a.request]) {
            throw std::invalid_argument("request " + std::to_string(a.request) + " allocated more than once");
        }
        seen[a.request] = true;
        const GainMatrix& g = requests[a.request].gains;
        if (g.num_rrhs() != network.num_rrhs() || g.num_subcarriers() != network.subcarriers()) {
            throw std::invalid_argument("request gain matrix does not match the network");
        }
    }
    for (std::size_t j : active_rrhs) {
        if (j >= network.num_rrhs()) {
            throw std::invalid_argument("unknown RRH index " + std::to_string(j));
        }
    }
    p.scheduled.assign(scheduled.begin(), scheduled.end());
    p.active_rrhs.assign(active_rrhs.begin(), active_rrhs.end());
    for (const Allocation& a : p.scheduled) {
        std::vector<double> row;
        for (std::size_t j : p.active_rrhs) {
            p.variables.push_back({a.request, j, a.subcarrier});
            row.push_back(requests[a.request].gains(j, a.subcarrier));
        }
        p.gains.push_back(std::move(row));
        p.sinr_targets.push_back(requests[a.request].min_sinr);
    }
    for (std::size_t j : p.active_rrhs) {
        p.caps.push_back(network.rrhs[j].max_power);
    }
    return p;
}

PowerProblem build_problem(const SlotAssignment& slot, std::span<const Request> requests, const Network& network)
{
    if (slot.num_requests() != requests.size() || slot.num_rrhs() != network.num_rrhs() ||
        slot.num_subcarriers() != network.subcarriers()) {
        throw std::invalid_argument("slot assignment dimensions do not match requests/network");
    }
    std::vector<Allocation> scheduled;
    for (std::size_t r = 0; r < slot.num_requests(); ++r) {
        std::size_t count = 0;
        for (std::size_t s = 0; s < slot.num_subcarriers(); ++s) {
            if (slot.allocated(r, s)) {
                scheduled.push_back({r, s});
                ++count;
            }
        }
        if (count > 1) {
            throw std::invalid_argument("request " + std::to_string(r) + " holds more than one subcarrier");
        }
    }
    std::vector<std::size_t> active;
    for (std::size_t j = 0; j < slot.num_rrhs(); ++j) {
        if (slot.active(j)) {
            active.push_back(j);
        }
    }
    return build_problem(scheduled, active, requests, network);
}

namespace {

// Row k, divided by sigma^2:
//   sum_j g_kj/s2 p_kj - gamma_k sum_{k' != k, same subcarrier} sum_j g_kj/s2 p_k'j >= gamma_k
lp::Problem to_lp(const PowerProblem& p)
{
    const std::size_t nh = p.active_rrhs.size();
    lp::Problem lp;
    lp.num_vars = p.variables.size();
    lp.objective.assign(lp.num_vars, 1.0);
    for (std::size_t k = 0; k < p.scheduled.size(); ++k) {
        lp::Constraint row;
        row.coeffs.assign(lp.num_vars, 0.0);
        row.sense = lp::Sense::GreaterEqual;
        row.rhs = p.sinr_targets[k];
        for (std::size_t jj = 0; jj < nh; ++jj) {
            const double g = p.gains[k][jj] / p.noise;
            row.coeffs[p.variable_index(k, jj)] = g;
            for (std::size_t other = 0; other < p.scheduled.size(); ++other) {
                if (other != k && p.scheduled[other].subcarrier == p.scheduled[k].subcarrier) {
                    row.coeffs[p.variable_index(other, jj)] = -p.sinr_targets[k] * g;
                }
            }
        }
        lp.constraints.push_back(std::move(row));
    }
    for (std::size_t jj = 0; jj < nh; ++jj) {
        lp::Constraint row;
        row.coeffs.assign(lp.num_vars, 0.0);
        row.sense = lp::Sense::LessEqual;
        row.rhs = p.caps[jj];
        for (std::size_t k = 0; k < p.scheduled.size(); ++k) {
            row.coeffs[p.variable_index(k, jj)] = 1.0;
        }
        lp.constraints.push_back(std::move(row));
    }
    return lp;
}

struct RowResidual {
    double sinr = 0.0;  // normalised by gamma * sigma^2
    double cap = 0.0;   // W
};

RowResidual residuals(const PowerProblem& p, std::span<const double> power)
{
    const std::size_t nh = p.active_rrhs.size();
    RowResidual worst;
    for (std::size_t k = 0; k < p.scheduled.size(); ++k) {
        double signal = 0.0;
        double interference = 0.0;
        for (std::size_t jj = 0; jj < nh; ++jj) {
            const double g = p.gains[k][jj];
            signal += g * power[p.variable_index(k, jj)];
            for (std::size_t other = 0; other < p.scheduled.size(); ++other) {
                if (other != k && p.scheduled[other].subcarrier == p.scheduled[k].subcarrier) {
                    interference += g * power[p.variable_index(other, jj)];
                }
            }
        }
        const double gamma = p.sinr_targets[k];
        const double lhs = signal - gamma * (p.noise + interference);
        worst.sinr = std::max(worst.sinr, -lhs / (gamma * p.noise));
    }
    for (std::size_t jj = 0; jj < nh; ++jj) {
        double total = 0.0;
        for (std::size_t k = 0; k < p.scheduled.size(); ++k) {
            total += power[p.variable_index(k, jj)];
        }
        worst.cap = std::max(worst.cap, total - p.caps[jj]);
    }
    return worst;
}

} // namespace

double max_violation(const PowerProblem& problem, std::span<const double> power)
{
    const RowResidual r = residuals(problem, power);
    return std::max(r.sinr, r.cap);
}

PowerSolution solve(const PowerProblem& problem)
{
    PowerSolution out;
    if (problem.scheduled.empty()) {
        out.status = PowerStatus::Optimal;
        return out;
    }
    if (problem.active_rrhs.empty()) {
        out.status = PowerStatus::Infeasible;
        return out;
    }
    const lp::Result r = lp::solve(to_lp(problem));
    if (r.status == lp::Status::Infeasible) {
        out.status = PowerStatus::Infeasible;
        return out;
    }
    if (r.status == lp::Status::Unbounded) {
        throw lp::SolverError("power problem reported unbounded");
    }
    out.power = r.x;

    // Scaling every power by c > 1 raises each SINR (noise is fixed), so a tiny
    // round-off shortfall on a SINR row is repaired by a uniform scale-up.
    RowResidual res = residuals(problem, out.power);
    if (res.sinr > 0.0) {
        double factor = 1.0 + 2.0 * res.sinr;
        for (int attempt = 0; attempt < 8 && res.sinr > 0.0; ++attempt) {
            std::vector<double> scaled = r.x;
            for (double& v : scaled) {
                v *= factor;
            }
            const RowResidual trial = residuals(problem, scaled);
            if (trial.sinr <= 0.0 && trial.cap <= kFeasibilityTol) {
                out.power = std::move(scaled);
                res = trial;
                break;
            }
            factor = 1.0 + 2.0 * (factor - 1.0);
        }
    }
    if (res.sinr > kFeasibilityTol || res.cap > kFeasibilityTol * std::max(1.0, *std::max_element(problem.caps.begin(), problem.caps.end()))) {
        // The LP claims feasibility but its point does not verify. Treat a
        // marginal cap overshoot as infeasible rather than shipping it.
        if (res.sinr <= 1e-6 && res.cap <= 1e-6) {
            out.status = PowerStatus::Infeasible;
            out.power.clear();
            return out;
        }
        throw lp::SolverError("power solution failed verification (sinr residual " + std::to_string(res.sinr) +
                              ", cap residual " + std::to_string(res.cap) + ")");
    }
    out.status = PowerStatus::Optimal;
    out.objective = 0.0;
    for (double v : out.power) {
        out.objective += v;
    }
    return out;
}

void apply_solution(const PowerProblem& problem, const PowerSolution& solution, SlotAssignment& slot)
{
    for (std::size_t v = 0; v < problem.variables.size(); ++v) {
        const PowerVariable& var = problem.variables[v];
        slot.set_power(var.request, var.rrh, var.subcarrier,
                       solution.status == PowerStatus::Optimal ? solution.power[v] : 0.0);
    }
}

} // namespace cran
