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

#include <cstdint>
#include <span>

namespace cran {

/// Per-slot or per-horizon power split. rrh_activation and bbu are unweighted;
/// weighted_total = tx + w_R * rrh_activation + w_B * bbu.
struct CostBreakdown {
    double tx = 0.0;
    double rrh_activation = 0.0;
    double bbu = 0.0;
    double weighted_total = 0.0;

    CostBreakdown& operator+=(const CostBreakdown& other);
};

struct RrhSlotCost {
    double tx = 0.0;
    double activation = 0.0;
};

/// Transmit power of active RRHs and the activation/fiber/sleep term.
RrhSlotCost rrh_slot_cost(const SlotAssignment& slot, std::span<const Rrh> rrhs);

/// P_BBU * sum_r sum_s a_rs m_r.
double bbu_slot_cost(const SlotAssignment& slot, std::span<const Request> requests, double bbu_power_per_unit);

CostBreakdown total_slot_cost(const SlotAssignment& slot, std::span<const Request> requests, const Network& network);

/// Weighted cost summed over all slots of the schedule.
double horizon_cost(const Schedule& schedule, std::span<const Request> requests, const Network& network);

CostBreakdown horizon_breakdown(const Schedule& schedule, std::span<const Request> requests, const Network& network);

/// Activation term for an activation bitmask (bit j set = RRH j on).
double activation_cost(std::uint32_t active_mask, std::span<const Rrh> rrhs);

} // namespace cran
