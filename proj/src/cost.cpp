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

#include "cran/cost.hpp"

#include <stdexcept>

namespace cran {

CostBreakdown& CostBreakdown::operator+=(const CostBreakdown& other)
{
    tx += other.tx;
    rrh_activation += other.rrh_activation;
    bbu += other.bbu;
    weighted_total += other.weighted_total;
    return *this;
}

RrhSlotCost rrh_slot_cost(const SlotAssignment& slot, std::span<const Rrh> rrhs)
{
    if (slot.num_rrhs() != rrhs.size()) {
        throw std::invalid_argument("slot assignment and RRH list disagree on H");
    }
    RrhSlotCost cost;
    for (std::size_t j = 0; j < rrhs.size(); ++j) {
        const Rrh& rrh = rrhs[j];
        if (slot.active(j)) {
            cost.tx += slot.rrh_power(j);
            cost.activation += rrh.activation_power + rrh.fiber_power;
        } else {
            cost.activation += rrh.sleep_power;
        }
    }
    return cost;
}

double bbu_slot_cost(const SlotAssignment& slot, std::span<const Request> requests, double bbu_power_per_unit)
{
    if (slot.num_requests() != requests.size()) {
        throw std::invalid_argument("slot assignment and request list disagree on R");
    }
    double units = 0.0;
    for (std::size_t r = 0; r < requests.size(); ++r) {
        for (std::size_t s = 0; s < slot.num_subcarriers(); ++s) {
            if (slot.allocated(r, s)) {
                units += requests[r].resources;
            }
        }
    }
    return bbu_power_per_unit * units;
}

CostBreakdown total_slot_cost(const SlotAssignment& slot, std::span<const Request> requests, const Network& network)
{
    const RrhSlotCost rrh = rrh_slot_cost(slot, network.rrhs);
    CostBreakdown cost;
    cost.tx = rrh.tx;
    cost.rrh_activation = rrh.activation;
    cost.bbu = bbu_slot_cost(slot, requests, network.bbu_power_per_unit);
    cost.weighted_total = cost.tx + network.weight_rrh * cost.rrh_activation + network.weight_bbu * cost.bbu;
    return cost;
}

CostBreakdown horizon_breakdown(const Schedule& schedule, std::span<const Request> requests, const Network& network)
{
    CostBreakdown total;
    for (const SlotAssignment& slot : schedule.slots) {
        total += total_slot_cost(slot, requests, network);
    }
    return total;
}

double horizon_cost(const Schedule& schedule, std::span<const Request> requests, const Network& network)
{
    return horizon_breakdown(schedule, requests, network).weighted_total;
}

double activation_cost(std::uint32_t active_mask, std::span<const Rrh> rrhs)
{
    double total = 0.0;
    for (std::size_t j = 0; j < rrhs.size(); ++j) {
        if ((active_mask >> j) & 1U) {
            total += rrhs[j].activation_power + rrhs[j].fiber_power;
        } else {
            total += rrhs[j].sleep_power;
        }
    }
    return total;
}

} // namespace cran
