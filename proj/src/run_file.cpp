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

#include "cran/run_file.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace cran {

using nlohmann::json;

std::string dump_run_file(const RunFile& run)
{
    const Network& n = run.network;
    json net = {
        {"num_subcarriers", n.num_subcarriers},
        {"horizon", n.horizon},
        {"bbu_capacity", n.bbu_capacity},
        {"bbu_power_per_unit", n.bbu_power_per_unit},
        {"noise_power", n.noise_power},
        {"weight_rrh", n.weight_rrh},
        {"weight_bbu", n.weight_bbu},
        {"vm_base", n.vm_base},
        {"theta", n.theta},
        {"epsilon", n.epsilon},
    };
    net["rrhs"] = json::array();
    for (const Rrh& r : n.rrhs) {
        net["rrhs"].push_back({{"id", r.id},
                               {"max_power", r.max_power},
                               {"activation_power", r.activation_power},
                               {"sleep_power", r.sleep_power},
                               {"fiber_power", r.fiber_power},
                               {"x", r.position.x},
                               {"y", r.position.y}});
    }

    json reqs = json::array();
    for (const Request& r : run.requests) {
        json gains = json::array();
        for (std::size_t j = 0; j < r.gains.num_rrhs(); ++j) {
            json row = json::array();
            for (std::size_t s = 0; s < r.gains.num_subcarriers(); ++s) {
                row.push_back(r.gains(j, s));
            }
            gains.push_back(std::move(row));
        }
        reqs.push_back({{"id", r.id},
                        {"user_id", r.user_id},
                        {"arrival_slot", r.arrival_slot},
                        {"window_len", r.window_len},
                        {"min_sinr", r.min_sinr},
                        {"resources", r.resources},
                        {"gains", std::move(gains)}});
    }

    json slots = json::array();
    for (std::size_t t = 0; t < run.schedule.slots.size(); ++t) {
        const SlotAssignment& slot = run.schedule.slots[t];
        json active = json::array();
        for (std::size_t j = 0; j < slot.num_rrhs(); ++j) {
            if (slot.active(j)) {
                active.push_back(j);
            }
        }
        json alloc = json::array();
        json powers = json::array();
        for (std::size_t r = 0; r < slot.num_requests(); ++r) {
            for (std::size_t s = 0; s < slot.num_subcarriers(); ++s) {
                if (slot.allocated(r, s)) {
                    alloc.push_back({{"request", r}, {"subcarrier", s}});
                }
                for (std::size_t j = 0; j < slot.num_rrhs(); ++j) {
                    const double p = slot.power(r, j, s);
                    if (p != 0.0) {
                        powers.push_back({{"request", r}, {"rrh", j}, {"subcarrier", s}, {"watts", p}});
                    }
                }
            }
        }
        slots.push_back({{"slot", t + 1}, {"active", active}, {"allocations", alloc}, {"powers", powers}});
    }
    json doc = {{"network", net},
                {"requests", reqs},
                {"schedule", {{"slots", slots}, {"satisfied", run.schedule.satisfied}}}};
    return doc.dump(2) + "\n";
}

namespace {

std::size_t index_in(const json& v, std::size_t bound, const char* what)
{
    const auto i = v.get<std::size_t>();
    if (i >= bound) {
        throw RunFileError(std::string(what) + " index " + std::to_string(i) + " out of range");
    }
    return i;
}

RunFile from_json(const json& doc)
{
    RunFile run;
    const json& net = doc.at("network");
    Network& n = run.network;
    n.num_subcarriers = net.at("num_subcarriers").get<int>();
    n.horizon = net.at("horizon").get<int>();
    n.bbu_capacity = net.at("bbu_capacity").get<double>();
    n.bbu_power_per_unit = net.at("bbu_power_per_unit").get<double>();
    n.noise_power = net.at("noise_power").get<double>();
    n.weight_rrh = net.at("weight_rrh").get<double>();
    n.weight_bbu = net.at("weight_bbu").get<double>();
    n.vm_base = net.at("vm_base").get<double>();
    n.theta = net.at("theta").get<double>();
    n.epsilon = net.at("epsilon").get<double>();
    for (const json& r : net.at("rrhs")) {
        n.rrhs.push_back({r.at("id").get<int>(), r.at("max_power").get<double>(),
                          r.at("activation_power").get<double>(), r.at("sleep_power").get<double>(),
                          r.at("fiber_power").get<double>(), {r.at("x").get<double>(), r.at("y").get<double>()}});
    }
    check_network(n);

    for (const json& r : doc.at("requests")) {
        Request req;
        req.id = r.at("id").get<int>();
        req.user_id = r.at("user_id").get<int>();
        req.arrival_slot = r.at("arrival_slot").get<int>();
        req.window_len = r.at("window_len").get<int>();
        req.min_sinr = r.at("min_sinr").get<double>();
        req.resources = r.at("resources").get<double>();
        const json& gains = r.at("gains");
        if (gains.size() != n.num_rrhs()) {
            throw RunFileError("request " + std::to_string(req.id) + ": gains must have one row per RRH");
        }
        req.gains = GainMatrix(n.num_rrhs(), n.subcarriers());
        for (std::size_t j = 0; j < n.num_rrhs(); ++j) {
            if (gains[j].size() != n.subcarriers()) {
                throw RunFileError("request " + std::to_string(req.id) + ": gains row " + std::to_string(j) +
                                   " must have one entry per subcarrier");
            }
            for (std::size_t s = 0; s < n.subcarriers(); ++s) {
                req.gains(j, s) = gains[j][s].get<double>();
            }
        }
        check_request(req, n);
        run.requests.push_back(std::move(req));
    }

    run.schedule = empty_schedule(run.requests.size(), n);
    const json& sched = doc.at("schedule");
    for (const json& slot_json : sched.at("slots")) {
        const int t = slot_json.at("slot").get<int>();
        if (t < 1 || t > n.horizon) {
            throw RunFileError("slot " + std::to_string(t) + " outside the horizon");
        }
        SlotAssignment& slot = run.schedule.slots[static_cast<std::size_t>(t - 1)];
        for (const json& j : slot_json.at("active")) {
            slot.set_active(index_in(j, n.num_rrhs(), "RRH"), true);
        }
        for (const json& a : slot_json.at("allocations")) {
            slot.set_allocated(index_in(a.at("request"), run.requests.size(), "request"),
                               index_in(a.at("subcarrier"), n.subcarriers(), "subcarrier"), true);
        }
        for (const json& p : slot_json.at("powers")) {
            slot.set_power(index_in(p.at("request"), run.requests.size(), "request"),
                           index_in(p.at("rrh"), n.num_rrhs(), "RRH"),
                           index_in(p.at("subcarrier"), n.subcarriers(), "subcarrier"), p.at("watts").get<double>());
        }
    }
    for (const json& r : sched.at("satisfied")) {
        run.schedule.satisfied.insert(index_in(r, run.requests.size(), "request"));
    }
    return run;
}

} // namespace

RunFile parse_run_file(std::string_view text)
{
    try {
        return from_json(json::parse(text));
    } catch (const json::exception& e) {
        throw RunFileError(std::string("malformed run file: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw RunFileError(std::string("invalid run file: ") + e.what());
    }
}

void write_run_file(const std::string& path, const RunFile& run)
{
    std::ofstream out(path);
    if (!out) {
        throw RunFileError("cannot write '" + path + "'");
    }
    out << dump_run_file(run);
}

RunFile read_run_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw RunFileError("cannot open '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_run_file(buf.str());
}

} // namespace cran
