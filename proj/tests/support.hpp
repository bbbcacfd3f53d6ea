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

#include "cran/model.hpp"
#include "cran/scenario.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace cran::testing {

inline Network small_network(int num_rrhs, int num_subcarriers, int horizon)
{
    Network n;
    for (int j = 0; j < num_rrhs; ++j) {
        n.rrhs.push_back({j + 1, dbm_to_watts(48.0), 130.0, 75.0, j % 3 == 0 ? 2.0 : 1.0,
                          {100.0 * j, 0.0}});
    }
    n.num_subcarriers = num_subcarriers;
    n.horizon = horizon;
    return n;
}

inline Request make_request(int id, int arrival, int window, double gamma, GainMatrix gains, const Network& n)
{
    Request r;
    r.id = id;
    r.user_id = id;
    r.arrival_slot = arrival;
    r.window_len = window;
    r.min_sinr = gamma;
    r.resources = resources_for_request(gamma, n.vm_base, n.theta);
    r.gains = std::move(gains);
    return r;
}

/// Log-uniform gains in [lo, hi], zero with probability `zero_prob`.
inline GainMatrix random_gains(Rng& rng, const Network& n, double lo = 1e-13, double hi = 1e-9,
                               double zero_prob = 0.0)
{
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    std::bernoulli_distribution zero(zero_prob);
    GainMatrix g(n.num_rrhs(), n.subcarriers());
    for (std::size_t j = 0; j < n.num_rrhs(); ++j) {
        for (std::size_t s = 0; s < n.subcarriers(); ++s) {
            const bool z = zero(rng);
            const double v = std::exp(u(rng));
            g(j, s) = z ? 0.0 : v;
        }
    }
    return g;
}

/// Requests with windows inside the horizon and gamma drawn in [gamma_lo, gamma_hi] (linear).
inline std::vector<Request> random_requests(Rng& rng, const Network& n, int count, double gamma_lo = 0.5,
                                            double gamma_hi = 4.0, double zero_prob = 0.0)
{
    std::uniform_int_distribution<int> arrival(1, n.horizon);
    std::uniform_real_distribution<double> gamma(gamma_lo, gamma_hi);
    std::vector<Request> out;
    for (int i = 0; i < count; ++i) {
        const int a = arrival(rng);
        std::uniform_int_distribution<int> window(0, n.horizon - a);
        const int w = window(rng);
        const double gm = gamma(rng);
        out.push_back(make_request(i, a, w, gm, random_gains(rng, n, 1e-13, 1e-9, zero_prob), n));
    }
    return out;
}

/// Independent constraint check over a whole schedule; true when every
/// constraint holds. Written directly from the problem statement.
inline bool oracle_feasible(const Schedule& sch, const std::vector<Request>& req, const Network& n)
{
    const double rel = 1e-6;
    for (std::size_t r = 0; r < req.size(); ++r) {
        int count = 0;
        for (int t = 1; t <= n.horizon; ++t) {
            const SlotAssignment& slot = sch.slots[static_cast<std::size_t>(t - 1)];
            int here = 0;
            for (std::size_t s = 0; s < n.subcarriers(); ++s) {
                if (slot.allocated(r, s)) {
                    ++here;
                    if (t < req[r].arrival_slot || t > req[r].arrival_slot + req[r].window_len) {
                        return false;
                    }
                }
                for (std::size_t j = 0; j < n.num_rrhs(); ++j) {
                    const double p = slot.power(r, j, s);
                    if (p < 0.0 || (p > 0.0 && (!slot.allocated(r, s) || !slot.active(j)))) {
                        return false;
                    }
                }
            }
            if (here > 1) {
                return false;
            }
            count += here;
        }
        if (count != 1 || sch.satisfied.count(r) != 1) {
            return false;
        }
    }
    for (int t = 1; t <= n.horizon; ++t) {
        const SlotAssignment& slot = sch.slots[static_cast<std::size_t>(t - 1)];
        double units = 0.0;
        for (std::size_t j = 0; j < n.num_rrhs(); ++j) {
            double total = 0.0;
            for (std::size_t r = 0; r < req.size(); ++r) {
                for (std::size_t s = 0; s < n.subcarriers(); ++s) {
                    total += slot.power(r, j, s);
                }
            }
            if (total > (slot.active(j) ? n.rrhs[j].max_power : 0.0) * (1 + 1e-9) + 1e-12) {
                return false;
            }
        }
        for (std::size_t r = 0; r < req.size(); ++r) {
            for (std::size_t s = 0; s < n.subcarriers(); ++s) {
                if (!slot.allocated(r, s)) {
                    continue;
                }
                units += req[r].resources;
                double sig = 0.0;
                double intf = 0.0;
                for (std::size_t j = 0; j < n.num_rrhs(); ++j) {
                    sig += slot.power(r, j, s) * req[r].gains(j, s);
                    for (std::size_t o = 0; o < req.size(); ++o) {
                        if (o != r) {
                            intf += slot.power(o, j, s) * req[r].gains(j, s);
                        }
                    }
                }
                if (sig < req[r].min_sinr * (n.noise_power + intf) * (1.0 - rel)) {
                    return false;
                }
            }
        }
        if (units > n.bbu_capacity * (1 + 1e-9)) {
            return false;
        }
    }
    return true;
}

} // namespace cran::testing
