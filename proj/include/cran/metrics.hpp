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

#include "cran/cost.hpp"
#include "cran/model.hpp"

#include <span>
#include <vector>

namespace cran {

struct RunMetrics {
    double weighted_cost = 0.0;        // W, summed over the horizon
    double satisfied_ratio = 1.0;      // |satisfied| / |requests|, 1 with no requests
    std::vector<double> rrh_activation;  // per RRH: fraction of slots switched on
    CostBreakdown breakdown;
};

RunMetrics compute_metrics(const Schedule& schedule, std::span<const Request> requests, const Network& network);

} // namespace cran
