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

#include "cran/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cran {

double PathLossModel::gain(double distance_m) const
{
    const double d_km = std::max(distance_m, 1.0) / 1000.0;
    const double loss_db = intercept_db + slope_db * std::log10(d_km);
    return std::pow(10.0, -loss_db / 10.0);
}

std::string_view to_string(DeadlinePolicy policy)
{
    switch (policy) {
    case DeadlinePolicy::EndOfHorizon: return "end_of_horizon";
    case DeadlinePolicy::Fixed: return "fixed";
    case DeadlinePolicy::UniformRange: return "uniform";
    }
    return "end_of_horizon";
}

std::optional<DeadlinePolicy> parse_deadline_policy(std::string_view text)
{
    if (text == "end_of_horizon") {
        return DeadlinePolicy::EndOfHorizon;
    }
    if (text == "fixed") {
        return DeadlinePolicy::Fixed;
    }
    if (text == "uniform") {
        return DeadlinePolicy::UniformRange;
    }
    return std::nullopt;
}

std::string_view to_string(ArrivalMode mode)
{
    return mode == ArrivalMode::PerSlot ? "per_slot" : "per_run";
}

std::optional<ArrivalMode> parse_arrival_mode(std::string_view text)
{
    if (text == "per_run") {
        return ArrivalMode::PerRun;
    }
    if (text == "per_slot") {
        return ArrivalMode::PerSlot;
    }
    return std::nullopt;
}

void check_scenario(const ScenarioConfig& config)
{
    if (!(config.radius > 0.0)) {
        throw std::invalid_argument("radius must be > 0");
    }
    if (config.max_users < 0) {
        throw std::invalid_argument("max_users must be >= 0");
    }
    if (!(config.arrival_prob >= 0.0 && config.arrival_prob <= 1.0)) {
        throw std::invalid_argument("arrival_prob must lie in [0, 1]");
    }
    if (config.min_sinr_db_max && *config.min_sinr_db_max < config.min_sinr_db) {
        throw std::invalid_argument("min_sinr_db_max must be >= min_sinr_db");
    }
    if (config.window_len < 0 || config.window_min < 0 || config.window_max < config.window_min) {
        throw std::invalid_argument("deadline window bounds are inconsistent");
    }
}

std::vector<Position> place_users(std::size_t count, double radius, Rng& rng)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Position> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double r = radius * std::sqrt(unit(rng));
        const double angle = 2.0 * std::numbers::pi * unit(rng);
        out.push_back({r * std::cos(angle), r * std::sin(angle)});
    }
    return out;
}

std::vector<GainMatrix> gen_channel_gains(std::span<const Position> users,
                                          std::span<const Position> rrh_positions,
                                          int num_subcarriers,
                                          const PathLossModel& path_loss,
                                          Rng& rng)
{
    std::exponential_distribution<double> fading(1.0);
    const auto num_sc = static_cast<std::size_t>(num_subcarriers);
    std::vector<GainMatrix> out;
    out.reserve(users.size());
    for (const Position& user : users) {
        GainMatrix gains(rrh_positions.size(), num_sc);
        for (std::size_t j = 0; j < rrh_positions.size(); ++j) {
            const double d = std::hypot(user.x - rrh_positions[j].x, user.y - rrh_positions[j].y);
            const double mean = path_loss.gain(d);
            for (std::size_t s = 0; s < num_sc; ++s) {
                gains(j, s) = mean * fading(rng);
            }
        }
        out.push_back(std::move(gains));
    }
    return out;
}

namespace {

struct Window {
    int arrival;
    int length;
};

// Integer uniform in [lo, hi] built on a canonical draw so every call consumes
// exactly one engine output.
int uniform_int(Rng& rng, int lo, int hi)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double u = unit(rng);
    const int span = hi - lo + 1;
    return lo + std::min(span - 1, static_cast<int>(u * span));
}

// `slot` pins the arrival in per-slot mode; 0 draws it from the policy.
Window draw_window(const ScenarioConfig& config, int horizon, int slot, Rng& rng)
{
    const int a = uniform_int(rng, 1, horizon);
    const int b = uniform_int(rng, config.window_min, std::max(config.window_min, config.window_max));
    if (slot > 0) {
        const int room = horizon - slot;
        switch (config.deadline_policy) {
        case DeadlinePolicy::EndOfHorizon: return {slot, room};
        case DeadlinePolicy::Fixed: return {slot, std::min(config.window_len, room)};
        case DeadlinePolicy::UniformRange: return {slot, std::min(b, room)};
        }
    }
    switch (config.deadline_policy) {
    case DeadlinePolicy::EndOfHorizon:
        return {a, horizon - a};
    case DeadlinePolicy::Fixed: {
        const int len = std::min(config.window_len, horizon - 1);
        const int latest = horizon - len;
        return {1 + (a - 1) % latest, len};
    }
    case DeadlinePolicy::UniformRange: {
        const int len = std::min(b, horizon - 1);
        const int latest = horizon - len;
        return {1 + (a - 1) % latest, len};
    }
    }
    return {a, horizon - a};
}

} // namespace

std::size_t potential_users(const ScenarioConfig& config, const Network& network)
{
    const auto per_block = static_cast<std::size_t>(std::max(config.max_users, 0));
    return config.arrival_mode == ArrivalMode::PerSlot ? per_block * static_cast<std::size_t>(network.horizon)
                                                       : per_block;
}

std::vector<Request> gen_requests(const ScenarioConfig& config, const Network& network, Rng& rng)
{
    check_scenario(config);
    const std::size_t count = potential_users(config, network);
    std::vector<Position> rrh_positions;
    for (const Rrh& rrh : network.rrhs) {
        rrh_positions.push_back(rrh.position);
    }
    const auto positions = place_users(count, config.radius, rng);
    auto gains = gen_channel_gains(positions, rrh_positions, network.num_subcarriers, config.path_loss, rng);

    std::bernoulli_distribution submits(config.arrival_prob);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Request> out;
    for (std::size_t u = 0; u < count; ++u) {
        const bool active = submits(rng);
        const int slot = config.arrival_mode == ArrivalMode::PerSlot
                             ? static_cast<int>(u / static_cast<std::size_t>(config.max_users)) + 1
                             : 0;
        const Window window = draw_window(config, network.horizon, slot, rng);
        const double gamma_u = unit(rng);
        if (!active) {
            continue;
        }
        double gamma_db = config.min_sinr_db;
        if (config.min_sinr_db_max) {
            gamma_db += gamma_u * (*config.min_sinr_db_max - config.min_sinr_db);
        }
        Request req;
        req.id = static_cast<int>(out.size());
        req.user_id = static_cast<int>(u);
        req.arrival_slot = window.arrival;
        req.window_len = window.length;
        req.min_sinr = db_to_linear(gamma_db);
        req.resources = resources_for_request(req.min_sinr, network.vm_base, network.theta);
        req.gains = std::move(gains[u]);
        out.push_back(std::move(req));
    }
    return out;
}

Instance generate_instance(const ScenarioConfig& config, const Network& network)
{
    Rng rng(config.seed);
    Instance instance;
    instance.requests = gen_requests(config, network, rng);
    // Positions are regenerated from a fresh engine so callers can inspect them
    // without gen_requests having to expose its intermediate draws.
    Rng replay(config.seed);
    const auto positions = place_users(potential_users(config, network), config.radius, replay);
    for (const Request& r : instance.requests) {
        instance.user_positions.push_back(positions[static_cast<std::size_t>(r.user_id)]);
    }
    return instance;
}

std::vector<Rrh> default_rrhs(double radius)
{
    const double a = 0.6 * radius / std::numbers::sqrt2;
    const double max_power = dbm_to_watts(48.0);
    const Position positions[5] = {{-a, a}, {a, a}, {0.0, 0.0}, {-a, -a}, {a, -a}};
    const double fiber[5] = {2.0, 1.0, 1.0, 2.0, 1.0};
    std::vector<Rrh> rrhs;
    for (int i = 0; i < 5; ++i) {
        rrhs.push_back({i + 1, max_power, 130.0, 75.0, fiber[i], positions[i]});
    }
    return rrhs;
}

Network default_network(double radius)
{
    Network network;
    network.rrhs = default_rrhs(radius);
    return network;
}

} // namespace cran
