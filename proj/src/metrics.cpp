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

#include "cran/metrics.hpp"

namespace cran {

RunMetrics compute_metrics(const Schedule& schedule, std::span<const Request> requests, const Network& network)
{
    RunMetrics m;
    m.breakdown = horizon_breakdown(schedule, requests, network);
    m.weighted_cost = m.breakdown.weighted_total;
    if (!requests.empty()) {
        m.satisfied_ratio =
            static_cast<double>(schedule.satisfied.size()) / static_cast<double>(requests.size());
    }
    m.rrh_activation.assign(network.num_rrhs(), 0.0);
    if (!schedule.slots.empty()) {
        for (const SlotAssignment& slot : schedule.slots) {
            for (std::size_t j = 0; j < network.num_rrhs(); ++j) {
                m.rrh_activation[j] += slot.active(j) ? 1.0 : 0.0;
            }
        }
        for (double& a : m.rrh_activation) {
            a /= static_cast<double>(schedule.slots.size());
        }
    }
    return m;
}

} // namespace cran
