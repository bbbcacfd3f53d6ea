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

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cran {

class RunFileError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A self-contained run: the network, the requests and a schedule over them.
/// Requests, RRHs and subcarriers are referenced by 0-based index.
struct RunFile {
    Network network;
    std::vector<Request> requests;
    Schedule schedule;

    bool operator==(const RunFile&) const = default;
};

/// JSON text. Only allocations, active RRHs and nonzero powers are written.
std::string dump_run_file(const RunFile& run);

/// Throws RunFileError on malformed JSON, missing fields or out-of-range indices.
RunFile parse_run_file(std::string_view text);

void write_run_file(const std::string& path, const RunFile& run);
RunFile read_run_file(const std::string& path);

} // namespace cran
