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

#include "cran/greedy_online.hpp"
#include "cran/model.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace cran {

/// Every RRH on while anything is pending, all asleep otherwise. Channels are
/// assigned by the greedy Phase I scan with the orthogonality test disabled;
/// when the power problem fails, the most expensive link is shed until it solves.
SlotDecision all_on_schedule(const std::vector<std::size_t>& outstanding,
                             std::span<const Request> requests,
                             const Network& network,
                             int slot);

/// Slot-by-slot run of all_on_schedule over the horizon.
Schedule run_heuristic(std::span<const Request> requests, const Network& network);

} // namespace cran
