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
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string_view>
#include <vector>

namespace cran {

struct Position {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Position&) const = default;
};

/// Dense (RRH x subcarrier) matrix of linear channel power gains seen by one user.
class GainMatrix {
public:
    GainMatrix() = default;
    GainMatrix(std::size_t num_rrhs, std::size_t num_subcarriers, double fill = 0.0);

    double operator()(std::size_t rrh, std::size_t subcarrier) const
    {
        return data_[rrh * cols_ + subcarrier];
    }
    double& operator()(std::size_t rrh, std::size_t subcarrier)
    {
        return data_[rrh * cols_ + subcarrier];
    }

    std::size_t num_rrhs() const { return rows_; }
    std::size_t num_subcarriers() const { return cols_; }

    bool operator==(const GainMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// A user transmission demand. Slots are 1-based; the request may be served in
/// any slot of the closed window [arrival_slot, arrival_slot + window_len].
struct Request {
    int id = 0;
    int user_id = 0;
    int arrival_slot = 1;
    int window_len = 0;
    double min_sinr = 1.0;  // linear
    double resources = 0.0; // compute units
    GainMatrix gains;

    int deadline() const { return arrival_slot + window_len; }
    bool in_window(int slot) const { return slot >= arrival_slot && slot <= deadline(); }

    bool operator==(const Request&) const = default;
};

/// Remote radio head. All powers in W.
struct Rrh {
    int id = 0;
    double max_power = 0.0;
    double activation_power = 0.0;
    double sleep_power = 0.0;
    double fiber_power = 0.0;
    Position position;

    bool operator==(const Rrh&) const = default;
};

struct Network {
    std::vector<Rrh> rrhs;
    int num_subcarriers = 2;
    int horizon = 3;
    double bbu_capacity = 100.0;
    double bbu_power_per_unit = 1.0;
    double noise_power = 1e-13;
    double weight_rrh = 0.01;
    double weight_bbu = 0.1;
    double vm_base = 5.0;
    double theta = 1.0;
    double epsilon = 0.0;

    std::size_t num_rrhs() const { return rrhs.size(); }
    std::size_t subcarriers() const { return static_cast<std::size_t>(num_subcarriers); }

    bool operator==(const Network&) const = default;
};

/// Throws std::invalid_argument when a network invariant does not hold.
void check_network(const Network& network);

/// Throws std::invalid_argument when a request does not fit the network dimensions
/// or breaks a request invariant.
void check_request(const Request& request, const Network& network);

/// One slot's decision: allocation a_rs, activation y_j and powers p_rjs.
/// Requests are addressed by their index in the request list.
class SlotAssignment {
public:
    SlotAssignment() = default;
    SlotAssignment(std::size_t num_requests, std::size_t num_rrhs, std::size_t num_subcarriers);

    std::size_t num_requests() const { return requests_; }
    std::size_t num_rrhs() const { return rrhs_; }
    std::size_t num_subcarriers() const { return subcarriers_; }

    bool allocated(std::size_t request, std::size_t subcarrier) const
    {
        return alloc_[request * subcarriers_ + subcarrier] != 0;
    }
    void set_allocated(std::size_t request, std::size_t subcarrier, bool value)
    {
        alloc_[request * subcarriers_ + subcarrier] = value ? 1 : 0;
    }
    /// First allocated subcarrier of a request, if any.
    std::optional<std::size_t> subcarrier_of(std::size_t request) const;

    bool active(std::size_t rrh) const { return active_[rrh] != 0; }
    void set_active(std::size_t rrh, bool value) { active_[rrh] = value ? 1 : 0; }
    std::size_t active_count() const;

    double power(std::size_t request, std::size_t rrh, std::size_t subcarrier) const
    {
        return power_[(request * rrhs_ + rrh) * subcarriers_ + subcarrier];
    }
    void set_power(std::size_t request, std::size_t rrh, std::size_t subcarrier, double value)
    {
        power_[(request * rrhs_ + rrh) * subcarriers_ + subcarrier] = value;
    }
    /// Sum of p_rjs over requests and subcarriers for one RRH.
    double rrh_power(std::size_t rrh) const;

    bool operator==(const SlotAssignment&) const = default;

private:
    std::size_t requests_ = 0;
    std::size_t rrhs_ = 0;
    std::size_t subcarriers_ = 0;
    std::vector<std::uint8_t> alloc_;
    std::vector<std::uint8_t> active_;
    std::vector<double> power_;
};

struct Schedule {
    std::vector<SlotAssignment> slots;  // slots[t - 1] holds slot t
    std::set<std::size_t> satisfied;    // request indices

    bool operator==(const Schedule&) const = default;
};

/// All-idle schedule spanning the network horizon.
Schedule empty_schedule(std::size_t num_requests, const Network& network);

/// m_r = m_VM + theta * log2(1 + gamma). Throws std::domain_error for negative gamma.
double resources_for_request(double min_sinr, double vm_base, double theta);

/// Linear SINR of a request on a subcarrier. Interference is every other request's
/// power on the same subcarrier, weighted by the victim's own gain toward each RRH.
double compute_sinr(const SlotAssignment& slot,
                    std::size_t request,
                    std::size_t subcarrier,
                    std::span<const Request> requests,
                    double noise_power);

double db_to_linear(double db);
double linear_to_db(double linear);
double dbm_to_watts(double dbm);

enum class ViolationKind {
    RrhPowerCap,             // sum_rs p_rjs > y_j P_j
    NegativePower,
    PowerWithoutAllocation,  // p_rjs > 0 while a_rs = 0
    SchedulingCount,         // request not scheduled exactly once over the horizon
    MultipleSubcarriers,     // more than one subcarrier in one slot
    Sinr,
    BbuCapacity,
    AllocationOutsideWindow,
    PowerOutsideWindow,
    SatisfiedMismatch,       // satisfied set disagrees with the allocations
};

std::string_view to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    int slot = 0;            // 1-based; 0 when not slot-specific
    std::size_t index = 0;   // request index, or RRH index for RrhPowerCap
    double magnitude = 0.0;  // amount by which the constraint is broken

    bool operator==(const Violation&) const = default;
};

/// Relative slack granted to SINR constraints and absolute/relative slack on
/// power and capacity sums.
inline constexpr double kSinrRelTol = 1e-6;
inline constexpr double kPowerTol = 1e-9;

/// Per-slot constraints: power caps, SINR, BBU capacity, window membership and the
/// SlotAssignment structural invariants. Throws std::invalid_argument on dimension
/// mismatch.
std::vector<Violation> validate_slot(const SlotAssignment& slot,
                                     int slot_index,
                                     std::span<const Request> requests,
                                     const Network& network);

/// Every per-slot constraint plus exactly-once scheduling and the satisfied set.
std::vector<Violation> validate_schedule(const Schedule& schedule,
                                         std::span<const Request> requests,
                                         const Network& network);

} // namespace cran
