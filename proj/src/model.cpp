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

#include "cran/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cran {

GainMatrix::GainMatrix(std::size_t num_rrhs, std::size_t num_subcarriers, double fill)
    : rows_(num_rrhs), cols_(num_subcarriers), data_(num_rrhs * num_subcarriers, fill)
{
}

void check_network(const Network& network)
{
    if (network.rrhs.empty()) {
        throw std::invalid_argument("network has no RRHs");
    }
    if (network.num_subcarriers < 1) {
        throw std::invalid_argument("num_subcarriers must be >= 1");
    }
    if (network.horizon < 1) {
        throw std::invalid_argument("horizon must be >= 1");
    }
    if (!(network.bbu_capacity > 0.0)) {
        throw std::invalid_argument("bbu_capacity must be > 0");
    }
    if (!(network.noise_power > 0.0)) {
        throw std::invalid_argument("noise_power must be > 0");
    }
    if (network.weight_rrh < 0.0 || network.weight_bbu < 0.0) {
        throw std::invalid_argument("cost weights must be >= 0");
    }
    if (network.theta < 0.0) {
        throw std::invalid_argument("theta must be >= 0");
    }
    if (network.epsilon < 0.0) {
        throw std::invalid_argument("epsilon must be >= 0");
    }
    if (network.bbu_power_per_unit < 0.0) {
        throw std::invalid_argument("bbu_power_per_unit must be >= 0");
    }
    for (const Rrh& rrh : network.rrhs) {
        if (!(rrh.max_power > 0.0)) {
            throw std::invalid_argument("RRH " + std::to_string(rrh.id) + ": max_power must be > 0");
        }
        if (rrh.activation_power < 0.0 || rrh.sleep_power < 0.0 || rrh.fiber_power < 0.0) {
            throw std::invalid_argument("RRH " + std::to_string(rrh.id) +
                                        ": power constants must be >= 0");
        }
    }
}

void check_request(const Request& request, const Network& network)
{
    const std::string who = "request " + std::to_string(request.id);
    if (request.arrival_slot < 1) {
        throw std::invalid_argument(who + ": arrival_slot must be >= 1");
    }
    if (request.window_len < 0) {
        throw std::invalid_argument(who + ": window_len must be >= 0");
    }
    if (!(request.min_sinr > 0.0)) {
        throw std::invalid_argument(who + ": min_sinr must be > 0 (linear)");
    }
    if (!(request.resources > 0.0)) {
        throw std::invalid_argument(who + ": resources must be > 0");
    }
    if (request.gains.num_rrhs() != network.num_rrhs() ||
        request.gains.num_subcarriers() != network.subcarriers()) {
        throw std::invalid_argument(who + ": gain matrix dimensions do not match the network");
    }
    for (std::size_t j = 0; j < request.gains.num_rrhs(); ++j) {
        for (std::size_t s = 0; s < request.gains.num_subcarriers(); ++s) {
            if (!(request.gains(j, s) >= 0.0)) {
                throw std::invalid_argument(who + ": gains must be >= 0");
            }
        }
    }
}

SlotAssignment::SlotAssignment(std::size_t num_requests, std::size_t num_rrhs, std::size_t num_subcarriers)
    : requests_(num_requests),
      rrhs_(num_rrhs),
      subcarriers_(num_subcarriers),
      alloc_(num_requests * num_subcarriers, 0),
      active_(num_rrhs, 0),
      power_(num_requests * num_rrhs * num_subcarriers, 0.0)
{
}

std::optional<std::size_t> SlotAssignment::subcarrier_of(std::size_t request) const
{
    for (std::size_t s = 0; s < subcarriers_; ++s) {
        if (allocated(request, s)) {
            return s;
        }
    }
    return std::nullopt;
}

std::size_t SlotAssignment::active_count() const
{
    std::size_t count = 0;
    for (auto y : active_) {
        count += y != 0 ? 1 : 0;
    }
    return count;
}

double SlotAssignment::rrh_power(std::size_t rrh) const
{
    double total = 0.0;
    for (std::size_t r = 0; r < requests_; ++r) {
        for (std::size_t s = 0; s < subcarriers_; ++s) {
            total += power(r, rrh, s);
        }
    }
    return total;
}

Schedule empty_schedule(std::size_t num_requests, const Network& network)
{
    Schedule schedule;
    schedule.slots.assign(static_cast<std::size_t>(network.horizon),
                          SlotAssignment(num_requests, network.num_rrhs(), network.subcarriers()));
    return schedule;
}

double resources_for_request(double min_sinr, double vm_base, double theta)
{
    if (min_sinr < 0.0 || std::isnan(min_sinr)) {
        throw std::domain_error("min_sinr must be >= 0");
    }
    return vm_base + theta * std::log2(1.0 + min_sinr);
}

double compute_sinr(const SlotAssignment& slot,
                    std::size_t request,
                    std::size_t subcarrier,
                    std::span<const Request> requests,
                    double noise_power)
{
    const GainMatrix& gains = requests[request].gains;
    double signal = 0.0;
    double interference = 0.0;
    for (std::size_t j = 0; j < slot.num_rrhs(); ++j) {
        const double g = gains(j, subcarrier);
        signal += slot.power(request, j, subcarrier) * g;
        for (std::size_t other = 0; other < slot.num_requests(); ++other) {
            if (other != request) {
                interference += slot.power(other, j, subcarrier) * g;
            }
        }
    }
    if (signal == 0.0) {
        return 0.0;
    }
    return signal / (noise_power + interference);
}

double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

double linear_to_db(double linear)
{
    return 10.0 * std::log10(linear);
}

double dbm_to_watts(double dbm)
{
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

std::string_view to_string(ViolationKind kind)
{
    switch (kind) {
    case ViolationKind::RrhPowerCap: return "rrh_power_cap";
    case ViolationKind::NegativePower: return "negative_power";
    case ViolationKind::PowerWithoutAllocation: return "power_without_allocation";
    case ViolationKind::SchedulingCount: return "scheduling_count";
    case ViolationKind::MultipleSubcarriers: return "multiple_subcarriers";
    case ViolationKind::Sinr: return "sinr";
    case ViolationKind::BbuCapacity: return "bbu_capacity";
    case ViolationKind::AllocationOutsideWindow: return "allocation_outside_window";
    case ViolationKind::PowerOutsideWindow: return "power_outside_window";
    case ViolationKind::SatisfiedMismatch: return "satisfied_mismatch";
    }
    return "unknown";
}

namespace {

void check_dimensions(const SlotAssignment& slot, std::span<const Request> requests, const Network& network)
{
    if (slot.num_requests() != requests.size() || slot.num_rrhs() != network.num_rrhs() ||
        slot.num_subcarriers() != network.subcarriers()) {
        throw std::invalid_argument("slot assignment dimensions do not match requests/network");
    }
    for (const Request& r : requests) {
        if (r.gains.num_rrhs() != network.num_rrhs() || r.gains.num_subcarriers() != network.subcarriers()) {
            throw std::invalid_argument("request " + std::to_string(r.id) +
                                        ": gain matrix dimensions do not match the network");
        }
    }
}

} // namespace

std::vector<Violation> validate_slot(const SlotAssignment& slot,
                                     int slot_index,
                                     std::span<const Request> requests,
                                     const Network& network)
{
    check_dimensions(slot, requests, network);
    std::vector<Violation> out;
    const std::size_t num_requests = requests.size();
    const std::size_t num_rrhs = network.num_rrhs();
    const std::size_t num_sc = network.subcarriers();

    for (std::size_t j = 0; j < num_rrhs; ++j) {
        const double total = slot.rrh_power(j);
        const double cap = slot.active(j) ? network.rrhs[j].max_power : 0.0;
        if (total > cap * (1.0 + kPowerTol) + kPowerTol * 1e-3) {
            out.push_back({ViolationKind::RrhPowerCap, slot_index, j, total - cap});
        }
    }

    double used = 0.0;
    for (std::size_t r = 0; r < num_requests; ++r) {
        const Request& req = requests[r];
        std::size_t allocations = 0;
        double outside_power = 0.0;
        for (std::size_t s = 0; s < num_sc; ++s) {
            const bool a = slot.allocated(r, s);
            allocations += a ? 1 : 0;
            for (std::size_t j = 0; j < num_rrhs; ++j) {
                const double p = slot.power(r, j, s);
                if (p < 0.0) {
                    out.push_back({ViolationKind::NegativePower, slot_index, r, -p});
                } else if (p > 0.0 && !a) {
                    out.push_back({ViolationKind::PowerWithoutAllocation, slot_index, r, p});
                }
                if (!req.in_window(slot_index)) {
                    outside_power += std::abs(p);
                }
            }
            if (a) {
                const double sinr = compute_sinr(slot, r, s, requests, network.noise_power);
                if (sinr < req.min_sinr * (1.0 - kSinrRelTol)) {
                    out.push_back({ViolationKind::Sinr, slot_index, r, req.min_sinr - sinr});
                }
            }
        }
        if (allocations > 1) {
            out.push_back({ViolationKind::MultipleSubcarriers, slot_index, r,
                           static_cast<double>(allocations)});
        }
        if (allocations > 0) {
            used += req.resources * static_cast<double>(allocations);
            if (!req.in_window(slot_index)) {
                out.push_back({ViolationKind::AllocationOutsideWindow, slot_index, r,
                               static_cast<double>(allocations)});
            }
        }
        // An out-of-window allocation already covers its own power.
        if (outside_power > 0.0 && (allocations == 0 || req.in_window(slot_index))) {
            out.push_back({ViolationKind::PowerOutsideWindow, slot_index, r, outside_power});
        }
    }
    if (used > network.bbu_capacity * (1.0 + kPowerTol)) {
        out.push_back({ViolationKind::BbuCapacity, slot_index, 0, used - network.bbu_capacity});
    }
    return out;
}

std::vector<Violation> validate_schedule(const Schedule& schedule,
                                         std::span<const Request> requests,
                                         const Network& network)
{
    if (schedule.slots.size() != static_cast<std::size_t>(network.horizon)) {
        throw std::invalid_argument("schedule length does not match the horizon");
    }
    for (std::size_t r : schedule.satisfied) {
        if (r >= requests.size()) {
            throw std::invalid_argument("satisfied set references an unknown request");
        }
    }
    std::vector<Violation> out;
    std::vector<std::size_t> counts(requests.size(), 0);
    std::vector<std::size_t> in_window_counts(requests.size(), 0);
    for (std::size_t t = 0; t < schedule.slots.size(); ++t) {
        const int slot_index = static_cast<int>(t) + 1;
        const SlotAssignment& slot = schedule.slots[t];
        auto slot_violations = validate_slot(slot, slot_index, requests, network);
        out.insert(out.end(), slot_violations.begin(), slot_violations.end());
        for (std::size_t r = 0; r < requests.size(); ++r) {
            for (std::size_t s = 0; s < network.subcarriers(); ++s) {
                if (slot.allocated(r, s)) {
                    ++counts[r];
                    if (requests[r].in_window(slot_index)) {
                        ++in_window_counts[r];
                    }
                }
            }
        }
    }
    for (std::size_t r = 0; r < requests.size(); ++r) {
        if (counts[r] != 1) {
            out.push_back({ViolationKind::SchedulingCount, 0, r, static_cast<double>(counts[r])});
        }
        const bool served = counts[r] == 1 && in_window_counts[r] == 1;
        if (served != (schedule.satisfied.count(r) != 0)) {
            out.push_back({ViolationKind::SatisfiedMismatch, 0, r, 1.0});
        }
    }
    return out;
}

} // namespace cran
