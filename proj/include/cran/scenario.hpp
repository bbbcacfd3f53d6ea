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
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace cran {

using Rng = std::mt19937_64;

/// Distance path loss PL_dB(d) = intercept + slope * log10(d / 1 km).
/// The default is the usual 128.1 + 37.6 log10(d[km]) macro-cell model.
struct PathLossModel {
    double intercept_db = 128.1;
    double slope_db = 37.6;

    /// Linear mean gain at distance d (metres), clamped below at 1 m.
    double gain(double distance_m) const;
    /// Path-loss exponent implied by the slope.
    double exponent() const { return slope_db / 10.0; }

    bool operator==(const PathLossModel&) const = default;
};

enum class DeadlinePolicy {
    EndOfHorizon,  // arrival uniform in 1..T, deadline T
    Fixed,         // window_len fixed, arrival uniform so that the window fits
    UniformRange,  // window_len uniform in [window_min, window_max]
};

std::string_view to_string(DeadlinePolicy policy);
std::optional<DeadlinePolicy> parse_deadline_policy(std::string_view text);

enum class ArrivalMode {
    PerRun,   // max_users potential users over the whole horizon
    PerSlot,  // max_users potential users arriving in every slot
};

std::string_view to_string(ArrivalMode mode);
std::optional<ArrivalMode> parse_arrival_mode(std::string_view text);

struct ScenarioConfig {
    double radius = 500.0;
    int max_users = 7;
    double arrival_prob = 0.5;
    double min_sinr_db = 0.0;
    /// When set, each request draws gamma uniformly in [min_sinr_db, min_sinr_db_max] dB.
    std::optional<double> min_sinr_db_max;
    DeadlinePolicy deadline_policy = DeadlinePolicy::EndOfHorizon;
    ArrivalMode arrival_mode = ArrivalMode::PerRun;
    int window_len = 0;
    int window_min = 0;
    int window_max = 0;
    std::uint64_t seed = 1;
    PathLossModel path_loss;

    bool operator==(const ScenarioConfig&) const = default;
};

/// Throws std::invalid_argument when the configuration is unusable.
void check_scenario(const ScenarioConfig& config);

/// Area-uniform positions over a disk centred at the origin.
std::vector<Position> place_users(std::size_t count, double radius, Rng& rng);

/// g_rjs = PL(d_rj) * X_rjs with X ~ Exp(1) i.i.d. per subcarrier.
std::vector<GainMatrix> gen_channel_gains(std::span<const Position> users,
                                          std::span<const Position> rrh_positions,
                                          int num_subcarriers,
                                          const PathLossModel& path_loss,
                                          Rng& rng);

/// Number of potential users an instance draws: max_users, times T in per-slot mode.
std::size_t potential_users(const ScenarioConfig& config, const Network& network);

/// Each potential user submits independently with arrival_prob.
/// Every potential user consumes the same random draws whether it submits or not,
/// so the SINR target and the arrival probability never shift other users' draws.
std::vector<Request> gen_requests(const ScenarioConfig& config, const Network& network, Rng& rng);

struct Instance {
    std::vector<Request> requests;
    std::vector<Position> user_positions;  // parallel to requests
};

/// Seeds an RNG from config.seed and draws one instance.
Instance generate_instance(const ScenarioConfig& config, const Network& network);

/// Five RRHs: id 3 at the centre, ids 1, 2, 4, 5 at 0.6 * radius on the diagonals,
/// fiber costs {2, 1, 1, 2, 1} W, 130 W on, 75 W asleep, 48 dBm cap.
std::vector<Rrh> default_rrhs(double radius);

Network default_network(double radius = 500.0);

} // namespace cran
