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

#include "cran/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace cran {

namespace {

const std::vector<std::string_view> kNetworkKeys = {
    "num_subcarriers", "horizon",     "bbu_capacity",   "bbu_power_per_unit", "noise_power",
    "weight_rrh",      "weight_bbu",  "vm_base",        "theta",              "epsilon",
    "rrh_ids",         "max_power",   "max_power_dbm",  "activation_power",   "sleep_power",
    "fiber_power",     "rrh_x",       "rrh_y",          "usable_rrhs",
};
const std::vector<std::string_view> kScenarioKeys = {
    "radius",     "max_users",  "arrival_prob", "min_sinr_db",           "min_sinr_db_max",
    "deadline_policy", "window_len", "window_min", "window_max", "seed",
    "arrival_mode", "path_loss_intercept_db", "path_loss_slope_db",
};
const std::vector<std::string_view> kSweepKeys = {
    "algorithms", "gamma_db_values", "epsilon_values", "r_max_values", "runs", "base_seed", "threads",
};

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

struct Entry {
    std::string value;
    int line = 0;
};

class Reader {
public:
    Reader(std::string source, std::string section, std::map<std::string, Entry> entries)
        : source_(std::move(source)), section_(std::move(section)), entries_(std::move(entries))
    {
    }

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    template <class T>
    void scalar(const std::string& key, T& out) const
    {
        auto it = entries_.find(key);
        if (it != entries_.end()) {
            out = parse<T>(key, it->second.value, it->second.line);
        }
    }

    template <class T>
    std::optional<std::vector<T>> list(const std::string& key) const
    {
        auto it = entries_.find(key);
        if (it == entries_.end()) {
            return std::nullopt;
        }
        std::vector<T> out;
        const std::string& text = it->second.value;
        if (trim(text).empty()) {
            return out;
        }
        std::size_t start = 0;
        for (;;) {
            const auto comma = text.find(',', start);
            const std::string item = trim(std::string_view(text).substr(start, comma - start));
            out.push_back(parse<T>(key, item, it->second.line));
            if (comma == std::string::npos) {
                break;
            }
            start = comma + 1;
        }
        return out;
    }

    std::string string(const std::string& key) const { return entries_.at(key).value; }

    [[noreturn]] void fail(const std::string& key, const std::string& what) const
    {
        auto it = entries_.find(key);
        const int line = it != entries_.end() ? it->second.line : 0;
        throw ConfigError(source_ + ":" + std::to_string(line) + ": [" + section_ + "] " + key + ": " + what);
    }

private:
    template <class T>
    T parse(const std::string& key, const std::string& text, int line) const
    {
        T value{};
        const char* begin = text.data();
        const char* end = text.data() + text.size();
        const auto [ptr, ec] = std::from_chars(begin, end, value);
        if (text.empty() || ec != std::errc() || ptr != end) {
            const char* kind = std::is_integral_v<T> ? "an integer" : "a number";
            throw ConfigError(source_ + ":" + std::to_string(line) + ": [" + section_ + "] " + key + ": expected " +
                              kind + ", got '" + text + "'");
        }
        return value;
    }

    std::string source_;
    std::string section_;
    std::map<std::string, Entry> entries_;
};

std::string join_keys(const std::vector<std::string_view>& keys)
{
    std::string out;
    for (auto k : keys) {
        if (!out.empty()) {
            out += ", ";
        }
        out += k;
    }
    return out;
}

template <class T>
std::vector<T> per_rrh(const Reader& rd, const std::string& key, std::size_t count, std::optional<T> fallback,
                       const std::vector<T>& defaults)
{
    auto given = rd.list<T>(key);
    if (!given) {
        if (defaults.size() == count) {
            return defaults;
        }
        if (fallback) {
            return std::vector<T>(count, *fallback);
        }
        throw ConfigError("[network] " + key + " is required when the RRH count differs from the default");
    }
    if (given->size() == 1) {
        return std::vector<T>(count, given->front());
    }
    if (given->size() != count) {
        rd.fail(key, "expected 1 or " + std::to_string(count) + " values, got " + std::to_string(given->size()));
    }
    return *given;
}

void apply_network(const Reader& rd, Config& cfg)
{
    Network& n = cfg.network;
    rd.scalar("num_subcarriers", n.num_subcarriers);
    rd.scalar("horizon", n.horizon);
    rd.scalar("bbu_capacity", n.bbu_capacity);
    rd.scalar("bbu_power_per_unit", n.bbu_power_per_unit);
    rd.scalar("noise_power", n.noise_power);
    rd.scalar("weight_rrh", n.weight_rrh);
    rd.scalar("weight_bbu", n.weight_bbu);
    rd.scalar("vm_base", n.vm_base);
    rd.scalar("theta", n.theta);
    rd.scalar("epsilon", n.epsilon);
    if (auto usable = rd.list<int>("usable_rrhs")) {
        cfg.usable_rrhs = *usable;
    }

    const std::vector<Rrh> reference = default_rrhs(cfg.scenario.radius);
    std::vector<int> ids;
    if (auto given = rd.list<int>("rrh_ids")) {
        ids = *given;
        if (ids.empty()) {
            rd.fail("rrh_ids", "at least one RRH is required");
        }
        std::vector<int> sorted = ids;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            rd.fail("rrh_ids", "ids must be distinct");
        }
    } else {
        for (const Rrh& r : reference) {
            ids.push_back(r.id);
        }
    }
    const std::size_t count = ids.size();
    auto column = [&](auto member) {
        std::vector<double> out;
        for (const Rrh& r : reference) {
            out.push_back(member(r));
        }
        return out;
    };
    if (rd.has("max_power") && rd.has("max_power_dbm")) {
        rd.fail("max_power_dbm", "give either max_power or max_power_dbm, not both");
    }
    std::vector<double> max_power;
    if (rd.has("max_power_dbm")) {
        max_power = per_rrh<double>(rd, "max_power_dbm", count, std::nullopt, {});
        for (double& p : max_power) {
            p = dbm_to_watts(p);
        }
    } else {
        max_power = per_rrh<double>(rd, "max_power", count, dbm_to_watts(48.0), {});
    }
    const auto on = per_rrh<double>(rd, "activation_power", count, 130.0, {});
    const auto sleep = per_rrh<double>(rd, "sleep_power", count, 75.0, {});
    const auto fiber =
        per_rrh<double>(rd, "fiber_power", count, std::nullopt, column([](const Rrh& r) { return r.fiber_power; }));
    const auto xs =
        per_rrh<double>(rd, "rrh_x", count, std::nullopt, column([](const Rrh& r) { return r.position.x; }));
    const auto ys =
        per_rrh<double>(rd, "rrh_y", count, std::nullopt, column([](const Rrh& r) { return r.position.y; }));
    n.rrhs.clear();
    for (std::size_t j = 0; j < count; ++j) {
        n.rrhs.push_back({ids[j], max_power[j], on[j], sleep[j], fiber[j], {xs[j], ys[j]}});
    }
}

void apply_scenario(const Reader& rd, ScenarioConfig& s)
{
    rd.scalar("radius", s.radius);
    rd.scalar("max_users", s.max_users);
    rd.scalar("arrival_prob", s.arrival_prob);
    rd.scalar("min_sinr_db", s.min_sinr_db);
    if (rd.has("min_sinr_db_max")) {
        double v = 0.0;
        rd.scalar("min_sinr_db_max", v);
        s.min_sinr_db_max = v;
    }
    if (rd.has("deadline_policy")) {
        const auto p = parse_deadline_policy(trim(rd.string("deadline_policy")));
        if (!p) {
            rd.fail("deadline_policy", "expected one of end_of_horizon, fixed, uniform");
        }
        s.deadline_policy = *p;
    }
    if (rd.has("arrival_mode")) {
        const auto m = parse_arrival_mode(trim(rd.string("arrival_mode")));
        if (!m) {
            rd.fail("arrival_mode", "expected per_run or per_slot");
        }
        s.arrival_mode = *m;
    }
    rd.scalar("window_len", s.window_len);
    rd.scalar("window_min", s.window_min);
    rd.scalar("window_max", s.window_max);
    rd.scalar("seed", s.seed);
    rd.scalar("path_loss_intercept_db", s.path_loss.intercept_db);
    rd.scalar("path_loss_slope_db", s.path_loss.slope_db);
}

void apply_sweep(const Reader& rd, SweepSpec& sw)
{
    if (rd.has("algorithms")) {
        sw.algorithms.clear();
        const std::string text = rd.string("algorithms");
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto a = parse_algorithm(trim(item));
            if (!a) {
                rd.fail("algorithms", "unknown algorithm '" + trim(item) +
                                          "' (expected optimal, greedy-p1, greedy-p2, heuristic)");
            }
            sw.algorithms.push_back(*a);
        }
    }
    if (auto v = rd.list<double>("gamma_db_values")) {
        sw.gamma_db_values = *v;
    }
    if (auto v = rd.list<double>("epsilon_values")) {
        sw.epsilon_values = *v;
    }
    if (auto v = rd.list<int>("r_max_values")) {
        sw.r_max_values = *v;
    }
    rd.scalar("runs", sw.runs);
    rd.scalar("base_seed", sw.base_seed);
    rd.scalar("threads", sw.threads);
}

std::string num(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <class T, class F>
std::string join(const std::vector<T>& values, F f)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i != 0) {
            out += ",";
        }
        out += f(values[i]);
    }
    return out;
}

} // namespace

Config default_config()
{
    Config cfg;
    cfg.network = default_network(cfg.scenario.radius);
    return cfg;
}

Config parse_config(std::string_view text, std::string_view source)
{
    const std::string src(source);
    std::map<std::string, std::map<std::string, Entry>> sections;
    std::string current;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const std::string where = src + ":" + std::to_string(line_no) + ": ";
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError(where + "malformed section header '" + line + "'");
            }
            current = trim(std::string_view(line).substr(1, line.size() - 2));
            if (current != "network" && current != "scenario" && current != "sweep") {
                throw ConfigError(where + "unknown section [" + current + "]; valid sections: network, scenario, sweep");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(where + "expected 'key = value', got '" + line + "'");
        }
        if (current.empty()) {
            throw ConfigError(where + "key outside of any section");
        }
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        const auto& valid = current == "network" ? kNetworkKeys : current == "scenario" ? kScenarioKeys : kSweepKeys;
        if (std::find(valid.begin(), valid.end(), key) == valid.end()) {
            throw ConfigError(where + "unknown key '" + key + "' in [" + current + "]; valid keys: " +
                              join_keys(valid));
        }
        sections[current][key] = {value, line_no};
    }

    Config cfg = default_config();
    // The scenario radius places the reference RRHs, so it is read first.
    apply_scenario(Reader(src, "scenario", sections["scenario"]), cfg.scenario);
    apply_network(Reader(src, "network", sections["network"]), cfg);
    apply_sweep(Reader(src, "sweep", sections["sweep"]), cfg.sweep);

    try {
        check_network(cfg.network);
        check_scenario(cfg.scenario);
        check_sweep(cfg.sweep);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(src + ": " + e.what());
    }
    effective_network(cfg);
    return cfg;
}

Config load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path);
}

std::string dump_config(const Config& cfg)
{
    const Network& n = cfg.network;
    const ScenarioConfig& s = cfg.scenario;
    const SweepSpec& w = cfg.sweep;
    auto col = [&](auto member) {
        std::vector<double> out;
        for (const Rrh& r : n.rrhs) {
            out.push_back(member(r));
        }
        return join(out, num);
    };
    auto ints = [](const auto& v) { return join(v, [](auto x) { return std::to_string(x); }); };

    std::ostringstream out;
    out << "[network]\n";
    out << "num_subcarriers = " << n.num_subcarriers << "\n";
    out << "horizon = " << n.horizon << "\n";
    out << "bbu_capacity = " << num(n.bbu_capacity) << "\n";
    out << "bbu_power_per_unit = " << num(n.bbu_power_per_unit) << "\n";
    out << "noise_power = " << num(n.noise_power) << "\n";
    out << "weight_rrh = " << num(n.weight_rrh) << "\n";
    out << "weight_bbu = " << num(n.weight_bbu) << "\n";
    out << "vm_base = " << num(n.vm_base) << "\n";
    out << "theta = " << num(n.theta) << "\n";
    out << "epsilon = " << num(n.epsilon) << "\n";
    std::vector<int> ids;
    for (const Rrh& r : n.rrhs) {
        ids.push_back(r.id);
    }
    out << "rrh_ids = " << ints(ids) << "\n";
    out << "max_power = " << col([](const Rrh& r) { return r.max_power; }) << "\n";
    out << "activation_power = " << col([](const Rrh& r) { return r.activation_power; }) << "\n";
    out << "sleep_power = " << col([](const Rrh& r) { return r.sleep_power; }) << "\n";
    out << "fiber_power = " << col([](const Rrh& r) { return r.fiber_power; }) << "\n";
    out << "rrh_x = " << col([](const Rrh& r) { return r.position.x; }) << "\n";
    out << "rrh_y = " << col([](const Rrh& r) { return r.position.y; }) << "\n";
    out << "usable_rrhs = " << ints(cfg.usable_rrhs) << "\n";

    out << "\n[scenario]\n";
    out << "radius = " << num(s.radius) << "\n";
    out << "max_users = " << s.max_users << "\n";
    out << "arrival_prob = " << num(s.arrival_prob) << "\n";
    out << "min_sinr_db = " << num(s.min_sinr_db) << "\n";
    if (s.min_sinr_db_max) {
        out << "min_sinr_db_max = " << num(*s.min_sinr_db_max) << "\n";
    }
    out << "deadline_policy = " << to_string(s.deadline_policy) << "\n";
    out << "arrival_mode = " << to_string(s.arrival_mode) << "\n";
    out << "window_len = " << s.window_len << "\n";
    out << "window_min = " << s.window_min << "\n";
    out << "window_max = " << s.window_max << "\n";
    out << "seed = " << s.seed << "\n";
    out << "path_loss_intercept_db = " << num(s.path_loss.intercept_db) << "\n";
    out << "path_loss_slope_db = " << num(s.path_loss.slope_db) << "\n";

    out << "\n[sweep]\n";
    out << "algorithms = " << join(w.algorithms, [](Algorithm a) { return std::string(to_string(a)); }) << "\n";
    out << "gamma_db_values = " << join(w.gamma_db_values, num) << "\n";
    out << "epsilon_values = " << join(w.epsilon_values, num) << "\n";
    out << "r_max_values = " << ints(w.r_max_values) << "\n";
    out << "runs = " << w.runs << "\n";
    out << "base_seed = " << w.base_seed << "\n";
    out << "threads = " << w.threads << "\n";
    return out.str();
}

Network effective_network(const Config& cfg)
{
    Network n = cfg.network;
    if (cfg.usable_rrhs.empty()) {
        return n;
    }
    n.rrhs.clear();
    for (int id : cfg.usable_rrhs) {
        auto it = std::find_if(cfg.network.rrhs.begin(), cfg.network.rrhs.end(),
                               [id](const Rrh& r) { return r.id == id; });
        if (it == cfg.network.rrhs.end()) {
            throw ConfigError("usable_rrhs: no RRH with id " + std::to_string(id));
        }
        if (std::any_of(n.rrhs.begin(), n.rrhs.end(), [id](const Rrh& r) { return r.id == id; })) {
            throw ConfigError("usable_rrhs: RRH id " + std::to_string(id) + " listed twice");
        }
        n.rrhs.push_back(*it);
    }
    // Keep the configured RRH order whatever order the ids were listed in.
    std::stable_sort(n.rrhs.begin(), n.rrhs.end(), [&](const Rrh& a, const Rrh& b) {
        auto pos = [&](int id) {
            return std::find_if(cfg.network.rrhs.begin(), cfg.network.rrhs.end(),
                                [id](const Rrh& r) { return r.id == id; });
        };
        return pos(a.id) < pos(b.id);
    });
    return n;
}

} // namespace cran
