// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "irsmec/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "json.hpp"

#include "irsmec/errors.hpp"
#include "irsmec/format.hpp"

namespace irsmec {

namespace {

enum class Quantity { power, frequency, length, angle, gain, data, time, count, ratio, text };

bool takes_suffix(Quantity q) {
    return q != Quantity::count && q != Quantity::ratio && q != Quantity::text;
}

std::vector<std::string_view> suffixes_for(Quantity q) {
    switch (q) {
        case Quantity::power: return {"w", "mw", "dbm"};
        case Quantity::frequency: return {"hz", "khz", "mhz", "ghz"};
        case Quantity::length: return {"m", "mm", "km"};
        case Quantity::angle: return {"rad", "deg"};
        case Quantity::gain: return {"db", "linear"};
        case Quantity::data: return {"bytes"};
        case Quantity::time: return {"s", "ms"};
        default: return {};
    }
}

double to_si(std::string_view suffix, double v) {
    if (suffix == "mw") return v * 1e-3;
    if (suffix == "dbm") return std::pow(10.0, (v - 30.0) / 10.0);
    if (suffix == "khz") return v * 1e3;
    if (suffix == "mhz") return v * 1e6;
    if (suffix == "ghz") return v * 1e9;
    if (suffix == "mm") return v * 1e-3;
    if (suffix == "km") return v * 1e3;
    if (suffix == "deg") return v * kPi / 180.0;
    if (suffix == "ms") return v * 1e-3;
    return v;
}

struct Value {
    std::vector<double> numbers;
    std::string text;
    bool is_text = false;
    bool is_list = false;
};

struct Entry {
    std::string section;
    std::string key;
    Value value;
    std::size_t line = 0;
};

// Value after unit normalization, handed to a key's setter.
struct Applied {
    std::vector<double> si;
    std::string text;
    std::string suffix;
};

using Setter = void (*)(Scenario&, const Applied&);

enum class Arity { scalar, point, list };

struct KeySpec {
    std::string_view section;
    std::string_view base;
    Quantity quantity;
    Arity arity;
    Setter set;
};

const std::vector<KeySpec>& key_table() {
    using Q = Quantity;
    using A = Arity;
    static const std::vector<KeySpec> table = {
        {"radio", "interference_power", Q::power, A::scalar,
         [](Scenario& s, const Applied& a) { s.environment.interference_power_w = a.si[0]; }},
        {"radio", "path_loss_exponent", Q::ratio, A::scalar,
         [](Scenario& s, const Applied& a) { s.environment.path_loss_exponent = a.si[0]; }},
        {"radio", "carrier_frequency", Q::frequency, A::scalar,
         [](Scenario& s, const Applied& a) { s.environment.carrier_frequency_hz = a.si[0]; }},

        {"direct", "tx_power", Q::power, A::scalar, [](Scenario& s, const Applied& a) { s.direct.tx_power_w = a.si[0]; }},
        {"direct", "bandwidth", Q::frequency, A::scalar,
         [](Scenario& s, const Applied& a) { s.direct.bandwidth_hz = a.si[0]; }},
        {"direct", "distance", Q::length, A::scalar, [](Scenario& s, const Applied& a) { s.direct.distance_m = a.si[0]; }},
        {"direct", "fading_coeff", Q::ratio, A::scalar,
         [](Scenario& s, const Applied& a) { s.direct.fading_coeff = a.si[0]; }},

        {"irs", "tx_power", Q::power, A::scalar, [](Scenario& s, const Applied& a) { s.irs.tx_power_w = a.si[0]; }},
        {"irs", "bandwidth", Q::frequency, A::scalar, [](Scenario& s, const Applied& a) { s.irs.bandwidth_hz = a.si[0]; }},
        {"irs", "tx_gain", Q::gain, A::scalar,
         [](Scenario& s, const Applied& a) {
             s.tx_gain = {a.si[0], a.suffix == "db" ? GainUnit::db : GainUnit::linear};
         }},
        {"irs", "rx_gain", Q::gain, A::scalar,
         [](Scenario& s, const Applied& a) {
             s.rx_gain = {a.si[0], a.suffix == "db" ? GainUnit::db : GainUnit::linear};
         }},
        {"irs", "gain_interpretation", Q::text, A::scalar,
         [](Scenario& s, const Applied& a) { s.gain_interpretation = parse_gain_interpretation(a.text); }},
        {"irs", "elements_m", Q::count, A::scalar,
         [](Scenario& s, const Applied& a) { s.irs.panel.elements_m = static_cast<std::int64_t>(a.si[0]); }},
        {"irs", "elements_n", Q::count, A::scalar,
         [](Scenario& s, const Applied& a) { s.irs.panel.elements_n = static_cast<std::int64_t>(a.si[0]); }},
        {"irs", "element_len_x", Q::length, A::scalar,
         [](Scenario& s, const Applied& a) { s.irs.panel.element_len_x_m = a.si[0]; }},
        {"irs", "element_len_y", Q::length, A::scalar,
         [](Scenario& s, const Applied& a) { s.irs.panel.element_len_y_m = a.si[0]; }},
        {"irs", "theta_t", Q::angle, A::scalar, [](Scenario& s, const Applied& a) { s.irs.theta_t_rad = a.si[0]; }},
        {"irs", "theta_r", Q::angle, A::scalar, [](Scenario& s, const Applied& a) { s.irs.theta_r_rad = a.si[0]; }},
        {"irs", "amplitude", Q::ratio, A::scalar, [](Scenario& s, const Applied& a) { s.irs.panel.amplitude = a.si[0]; }},
        {"irs", "d1", Q::length, A::scalar, [](Scenario& s, const Applied& a) { s.irs.d1_m = a.si[0]; }},
        {"irs", "d2", Q::length, A::scalar, [](Scenario& s, const Applied& a) { s.irs.d2_m = a.si[0]; }},

        {"geometry", "cell_side", Q::length, A::scalar, [](Scenario& s, const Applied& a) { s.cell_side_m = a.si[0]; }},
        {"geometry", "bs_position", Q::length, A::point,
         [](Scenario& s, const Applied& a) { s.bs_position = {a.si[0], a.si[1], a.si[2]}; }},
        {"geometry", "irs_position", Q::length, A::point,
         [](Scenario& s, const Applied& a) { s.irs_position = {a.si[0], a.si[1], a.si[2]}; }},

        {"task", "data_start", Q::data, A::scalar, [](Scenario& s, const Applied& a) { s.data_grid.start = a.si[0]; }},
        {"task", "data_stop", Q::data, A::scalar, [](Scenario& s, const Applied& a) { s.data_grid.stop = a.si[0]; }},
        {"task", "data_step", Q::data, A::scalar, [](Scenario& s, const Applied& a) { s.data_grid.step = a.si[0]; }},
        {"task", "cycles_per_bit", Q::ratio, A::scalar, [](Scenario& s, const Applied& a) { s.cycles_per_bit = a.si[0]; }},
        {"task", "deadline", Q::time, A::scalar, [](Scenario& s, const Applied& a) { s.deadline_s = a.si[0]; }},

        {"compute", "ue_cpu", Q::frequency, A::list,
         [](Scenario& s, const Applied& a) {
             const double occupied = s.ue_cpus.empty() ? 0.0 : s.ue_cpus.front().occupied_hz;
             s.ue_cpus.clear();
             for (double hz : a.si) {
                 s.ue_cpus.push_back({hz, occupied});
             }
         }},
        {"compute", "ue_occupied", Q::frequency, A::scalar,
         [](Scenario& s, const Applied& a) {
             for (auto& cpu : s.ue_cpus) {
                 cpu.occupied_hz = a.si[0];
             }
         }},
        {"compute", "mec_per_user", Q::frequency, A::scalar, [](Scenario& s, const Applied& a) { s.mec.total_hz = a.si[0]; }},
        {"compute", "mec_occupied", Q::frequency, A::scalar,
         [](Scenario& s, const Applied& a) { s.mec.occupied_hz = a.si[0]; }},
        {"compute", "mec_pool", Q::frequency, A::scalar, [](Scenario& s, const Applied& a) { s.mec_pool_hz = a.si[0]; }},
        {"compute", "concurrent_users", Q::count, A::scalar,
         [](Scenario& s, const Applied& a) { s.concurrent_users = static_cast<std::int64_t>(a.si[0]); }},

        {"sweep", "bandwidth_start", Q::frequency, A::scalar,
         [](Scenario& s, const Applied& a) { s.bandwidth_grid.start = a.si[0]; }},
        {"sweep", "bandwidth_stop", Q::frequency, A::scalar,
         [](Scenario& s, const Applied& a) { s.bandwidth_grid.stop = a.si[0]; }},
        {"sweep", "bandwidth_step", Q::frequency, A::scalar,
         [](Scenario& s, const Applied& a) { s.bandwidth_grid.step = a.si[0]; }},
        {"sweep", "separation_start", Q::length, A::scalar,
         [](Scenario& s, const Applied& a) { s.separation_grid.start = a.si[0]; }},
        {"sweep", "separation_stop", Q::length, A::scalar,
         [](Scenario& s, const Applied& a) { s.separation_grid.stop = a.si[0]; }},
        {"sweep", "separation_step", Q::length, A::scalar,
         [](Scenario& s, const Applied& a) { s.separation_grid.step = a.si[0]; }},
    };
    return table;
}

bool known_section(std::string_view name) {
    const auto& t = key_table();
    return std::any_of(t.begin(), t.end(), [&](const KeySpec& k) { return k.section == name; });
}

std::string canonical(std::string_view section, std::string_view base) {
    return std::string(section) + "." + std::string(base);
}

using LineMap = std::map<std::string, std::size_t>;

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view text, double& out) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    if (text.empty()) {
        return false;
    }
    const auto r = std::from_chars(text.data(), text.data() + text.size(), out);
    return r.ec == std::errc{} && r.ptr == text.data() + text.size();
}

Value parse_value(std::string_view raw, const std::string& key, std::size_t line) {
    Value v;
    raw = trim(raw);
    if (raw.empty()) {
        throw ConfigError(key, line, "missing value");
    }
    if (raw.front() == '[') {
        if (raw.back() != ']') {
            throw ConfigError(key, line, "unterminated list");
        }
        v.is_list = true;
        std::string_view inner = trim(raw.substr(1, raw.size() - 2));
        while (!inner.empty()) {
            const auto comma = inner.find(',');
            const std::string_view item = trim(inner.substr(0, comma));
            double d = 0.0;
            if (!parse_double(item, d)) {
                throw ConfigError(key, line, "list item '" + std::string(item) + "' is not a number");
            }
            v.numbers.push_back(d);
            if (comma == std::string_view::npos) {
                break;
            }
            inner = trim(inner.substr(comma + 1));
        }
        if (v.numbers.empty()) {
            throw ConfigError(key, line, "empty list");
        }
        return v;
    }
    if (raw.front() == '"') {
        if (raw.size() < 2 || raw.back() != '"') {
            throw ConfigError(key, line, "unterminated string");
        }
        v.is_text = true;
        v.text = std::string(raw.substr(1, raw.size() - 2));
        return v;
    }
    double d = 0.0;
    if (parse_double(raw, d)) {
        v.numbers.push_back(d);
        return v;
    }
    v.is_text = true;
    v.text = std::string(raw);
    return v;
}

std::string strip_comment(std::string_view line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') {
            quoted = !quoted;
        } else if (line[i] == '#' && !quoted) {
            return std::string(line.substr(0, i));
        }
    }
    return std::string(line);
}

// Splits "a.b" into section and key when a dot is present.
void split_dotted(std::string& section, std::string& key) {
    const auto dot = key.rfind('.');
    if (dot != std::string::npos) {
        section = key.substr(0, dot);
        key = key.substr(dot + 1);
    }
}

std::vector<Entry> parse_toml(std::string_view text) {
    std::vector<Entry> entries;
    std::string section;
    std::map<std::string, std::size_t> seen;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string cleaned = strip_comment(raw);
        const std::string_view line = trim(cleaned);
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError("", line_no, "malformed section header '" + std::string(line) + "'");
            }
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (!known_section(section)) {
                throw ConfigError(section, line_no, "unknown section");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("", line_no, "expected 'key = value', got '" + std::string(line) + "'");
        }
        Entry e;
        e.section = section;
        e.key = std::string(trim(line.substr(0, eq)));
        e.line = line_no;
        split_dotted(e.section, e.key);
        const std::string full = e.section.empty() ? e.key : e.section + "." + e.key;
        if (e.key.empty()) {
            throw ConfigError("", line_no, "empty key");
        }
        if (auto it = seen.find(full); it != seen.end()) {
            throw ConfigError(full, line_no, "duplicate key (first set on line " + std::to_string(it->second) + ")");
        }
        seen.emplace(full, line_no);
        e.value = parse_value(line.substr(eq + 1), full, line_no);
        entries.push_back(std::move(e));
    }
    return entries;
}

Value json_value(const nlohmann::json& j, const std::string& key) {
    Value v;
    if (j.is_number()) {
        v.numbers.push_back(j.get<double>());
    } else if (j.is_string()) {
        v.is_text = true;
        v.text = j.get<std::string>();
    } else if (j.is_array()) {
        v.is_list = true;
        for (const auto& item : j) {
            if (!item.is_number()) {
                throw ConfigError(key, 0, "list items must be numbers");
            }
            v.numbers.push_back(item.get<double>());
        }
        if (v.numbers.empty()) {
            throw ConfigError(key, 0, "empty list");
        }
    } else {
        throw ConfigError(key, 0, "unsupported JSON value type");
    }
    return v;
}

std::vector<Entry> parse_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("", 0, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("", 0, "JSON config must be an object");
    }
    std::vector<Entry> entries;
    for (const auto& [name, node] : doc.items()) {
        if (node.is_object()) {
            if (!known_section(name)) {
                throw ConfigError(name, 0, "unknown section");
            }
            for (const auto& [key, value] : node.items()) {
                Entry e{name, key, json_value(value, name + "." + key), 0};
                entries.push_back(std::move(e));
            }
        } else {
            Entry e{"", name, {}, 0};
            split_dotted(e.section, e.key);
            e.value = json_value(node, name);
            entries.push_back(std::move(e));
        }
    }
    return entries;
}

std::vector<Entry> parse_overrides(std::span<const std::string> overrides) {
    std::vector<Entry> entries;
    for (const auto& item : overrides) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(item, 0, "override must look like section.key=value");
        }
        Entry e;
        e.key = std::string(trim(std::string_view(item).substr(0, eq)));
        split_dotted(e.section, e.key);
        if (e.section.empty()) {
            throw ConfigError(e.key, 0, "override key needs a section, e.g. irs." + e.key);
        }
        const std::string full = e.section + "." + e.key;
        e.value = parse_value(std::string_view(item).substr(eq + 1), full, 0);
        entries.push_back(std::move(e));
    }
    return entries;
}

// Resolves `key` within `section` to its spec and unit suffix.
const KeySpec& lookup(const Entry& e, std::string& suffix) {
    const std::string full = e.section.empty() ? e.key : e.section + "." + e.key;
    if (e.section.empty()) {
        throw ConfigError(full, e.line, "key outside any section");
    }
    if (!known_section(e.section)) {
        throw ConfigError(full, e.line, "unknown section '" + e.section + "'");
    }
    const KeySpec* best = nullptr;
    for (const auto& spec : key_table()) {
        if (spec.section != e.section) {
            continue;
        }
        if (!takes_suffix(spec.quantity) && e.key == spec.base) {
            suffix.clear();
            return spec;
        }
        const std::string prefix = std::string(spec.base) + "_";
        if (e.key.size() > prefix.size() && e.key.compare(0, prefix.size(), prefix) == 0) {
            if (best == nullptr || spec.base.size() > best->base.size()) {
                best = &spec;
            }
        }
    }
    if (best == nullptr) {
        throw ConfigError(full, e.line, "unknown key");
    }
    suffix = e.key.substr(best->base.size() + 1);
    if (!takes_suffix(best->quantity)) {
        throw ConfigError(full, e.line, "'" + std::string(best->base) + "' takes no unit suffix");
    }
    const auto allowed = suffixes_for(best->quantity);
    if (std::find(allowed.begin(), allowed.end(), suffix) == allowed.end()) {
        std::string list;
        for (auto a : allowed) {
            list += (list.empty() ? "_" : ", _") + std::string(a);
        }
        throw ConfigError(full, e.line, "unit suffix '_" + suffix + "' does not fit this key; expected one of " + list);
    }
    return *best;
}

void apply_entries(Scenario& s, const std::vector<Entry>& entries, LineMap& lines) {
    for (const auto& e : entries) {
        std::string suffix;
        const KeySpec& spec = lookup(e, suffix);
        const std::string full = e.section + "." + e.key;
        Applied a;
        a.suffix = suffix;
        if (spec.quantity == Quantity::text) {
            if (!e.value.is_text) {
                throw ConfigError(full, e.line, "expected a text value");
            }
            a.text = e.value.text;
        } else {
            if (e.value.is_text) {
                throw ConfigError(full, e.line, "expected a number, got '" + e.value.text + "'");
            }
            const std::size_t n = e.value.numbers.size();
            if (spec.arity == Arity::scalar && (n != 1 || e.value.is_list)) {
                throw ConfigError(full, e.line, "expected a single number");
            }
            if (spec.arity == Arity::point && n != 3) {
                throw ConfigError(full, e.line, "expected [x, y, z]");
            }
            for (double v : e.value.numbers) {
                if (!std::isfinite(v)) {
                    throw ConfigError(full, e.line, "value must be finite");
                }
                if (spec.quantity == Quantity::count && (v != std::trunc(v) || std::abs(v) > 1e15)) {
                    throw ConfigError(full, e.line, "expected a whole number");
                }
                // Gains keep their configured number; interpretation happens later.
                a.si.push_back(spec.quantity == Quantity::gain ? v : to_si(suffix, v));
            }
        }
        try {
            spec.set(s, a);
        } catch (const ConfigError&) {
            throw;
        } catch (const Error& err) {
            throw ConfigError(full, e.line, err.what());
        }
        lines[canonical(spec.section, spec.base)] = e.line;
    }
}

void finalize(Scenario& s) {
    s.environment.wavelength_m =
        s.environment.carrier_frequency_hz > 0.0 ? kSpeedOfLight / s.environment.carrier_frequency_hz : 0.0;
    s.irs.tx_gain = resolve_gain(s.tx_gain, s.gain_interpretation);
    s.irs.rx_gain = resolve_gain(s.rx_gain, s.gain_interpretation);
}

class Checker {
public:
    explicit Checker(const LineMap& lines) : lines_(lines) {}

    void operator()(bool ok, const char* key, const std::string& what) const {
        if (ok) {
            return;
        }
        const auto it = lines_.find(key);
        throw ConfigError(key, it == lines_.end() ? 0 : it->second, what);
    }

private:
    const LineMap& lines_;
};

bool positive(double v) { return v > 0.0 && std::isfinite(v); }

void check_grid(const Checker& check, const Grid& g, const char* start_key, const char* stop_key,
                const char* step_key) {
    check(std::isfinite(g.start), start_key, "must be finite");
    check(std::isfinite(g.stop) && g.start <= g.stop, stop_key, "must be >= start");
    check(positive(g.step), step_key, "must be > 0");
    check(g.size() <= kMaxGridPoints, step_key, "grid exceeds " + std::to_string(kMaxGridPoints) + " points");
}

void validate_with_lines(const Scenario& s, const LineMap& lines) {
    const Checker check(lines);
    const auto& env = s.environment;
    check(positive(env.interference_power_w), "radio.interference_power", "must be > 0");
    check(positive(env.path_loss_exponent), "radio.path_loss_exponent", "must be > 0");
    check(positive(env.carrier_frequency_hz), "radio.carrier_frequency", "must be > 0");

    check(positive(s.direct.tx_power_w), "direct.tx_power", "must be > 0");
    check(positive(s.direct.bandwidth_hz), "direct.bandwidth", "must be > 0");
    check(positive(s.direct.distance_m), "direct.distance", "must be > 0");
    check(s.direct.fading_coeff >= 0.0, "direct.fading_coeff", "must be >= 0");

    const auto& irs = s.irs;
    check(positive(irs.tx_power_w), "irs.tx_power", "must be > 0");
    check(positive(irs.bandwidth_hz), "irs.bandwidth", "must be > 0");
    check(positive(irs.tx_gain), "irs.tx_gain", "linear gain must be > 0");
    check(positive(irs.rx_gain), "irs.rx_gain", "linear gain must be > 0");
    check(irs.panel.elements_m >= 1, "irs.elements_m", "must be >= 1");
    check(irs.panel.elements_n >= 1, "irs.elements_n", "must be >= 1");
    check(positive(irs.panel.element_len_x_m), "irs.element_len_x", "must be > 0");
    check(positive(irs.panel.element_len_y_m), "irs.element_len_y", "must be > 0");
    check(irs.panel.amplitude > 0.0 && irs.panel.amplitude <= 1.0, "irs.amplitude", "must be in (0, 1]");
    check(irs.theta_t_rad >= 0.0 && irs.theta_t_rad < kPi / 2.0, "irs.theta_t", "must be in [0, 90) degrees");
    check(irs.theta_r_rad >= 0.0 && irs.theta_r_rad < kPi / 2.0, "irs.theta_r", "must be in [0, 90) degrees");
    check(positive(irs.d1_m), "irs.d1", "must be > 0");
    check(positive(irs.d2_m), "irs.d2", "must be > 0");

    check(positive(s.cell_side_m), "geometry.cell_side", "must be > 0");

    check(s.data_grid.start >= 0.0, "task.data_start", "must be >= 0");
    check_grid(check, s.data_grid, "task.data_start", "task.data_stop", "task.data_step");
    check(positive(s.cycles_per_bit), "task.cycles_per_bit", "must be > 0");
    check(positive(s.deadline_s), "task.deadline", "must be > 0");

    check(!s.ue_cpus.empty(), "compute.ue_cpu", "needs at least one UE processor");
    for (const auto& cpu : s.ue_cpus) {
        check(cpu.occupied_hz >= 0.0, "compute.ue_occupied", "must be >= 0");
        check(std::isfinite(cpu.total_hz) && cpu.total_hz > cpu.occupied_hz, "compute.ue_cpu",
              "every UE frequency must exceed ue_occupied");
    }
    check(s.mec.occupied_hz >= 0.0, "compute.mec_occupied", "must be >= 0");
    check(std::isfinite(s.mec.total_hz) && s.mec.total_hz > s.mec.occupied_hz, "compute.mec_per_user",
          "must exceed mec_occupied");
    check(positive(s.mec_pool_hz), "compute.mec_pool", "must be > 0");
    check(s.concurrent_users >= 1, "compute.concurrent_users", "must be >= 1");
    if (s.concurrent_users > 10) {
        check(static_cast<double>(s.concurrent_users) * s.mec.total_hz <= s.mec_pool_hz, "compute.concurrent_users",
              "concurrent_users x mec_per_user exceeds mec_pool");
    }

    check_grid(check, s.bandwidth_grid, "sweep.bandwidth_start", "sweep.bandwidth_stop", "sweep.bandwidth_step");
    check(s.bandwidth_grid.start > 0.0, "sweep.bandwidth_start", "must be > 0");
    check_grid(check, s.separation_grid, "sweep.separation_start", "sweep.separation_stop", "sweep.separation_step");
    check(s.separation_grid.start > 0.0, "sweep.separation_start", "must be > 0");
}

std::string list_text(const std::vector<double>& values) {
    std::string out = "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        out += (i ? ", " : "") + format_number(values[i]);
    }
    return out + "]";
}

}  // namespace

std::size_t Grid::size() const {
    if (!(step > 0.0) || !(stop >= start) || !std::isfinite(start) || !std::isfinite(stop)) {
        return 0;
    }
    const double count = std::floor((stop - start) / step + 1e-9) + 1.0;
    if (count > 1e15) {
        return static_cast<std::size_t>(1e15);
    }
    return static_cast<std::size_t>(count);
}

std::vector<double> Grid::values() const {
    const std::size_t n = size();
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(start + static_cast<double>(i) * step);
    }
    return out;
}

std::vector<ComputeTask> Scenario::tasks() const {
    std::vector<ComputeTask> out;
    for (double d : data_grid.values()) {
        out.push_back(task(d));
    }
    return out;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double ratio) { return 10.0 * std::log10(ratio); }

double resolve_gain(const GainSetting& gain, GainInterpretation interpretation) {
    if (gain.unit == GainUnit::db && interpretation == GainInterpretation::db) {
        return db_to_linear(gain.value);
    }
    return gain.value;
}

double default_interference_power_w() {
    static const double n = calibrate_interference({5.0, 1e6, 200.0, 1.0}, 5.5, 2.001e6);
    return n;
}

Scenario default_scenario() {
    Scenario s;
    s.environment = RadioEnvironment::from_carrier(default_interference_power_w(), 5.5, 120e9);
    s.direct = {5.0, 1e6, 200.0, 1.0};

    s.irs.tx_power_w = 2.0;
    s.irs.bandwidth_hz = 1e6;
    s.irs.theta_t_rad = 45.0 * kPi / 180.0;
    s.irs.theta_r_rad = 45.0 * kPi / 180.0;
    s.irs.d1_m = 100.0;
    s.irs.d2_m = 100.0;
    s.irs.panel = {100, 100, 0.0038, 0.0038, 0.9};
    s.tx_gain = {20.0, GainUnit::db};
    s.rx_gain = {20.0, GainUnit::db};
    s.gain_interpretation = GainInterpretation::db;

    s.cell_side_m = 200.0;
    s.bs_position = {0.0, 0.0, 8.0};
    s.irs_position = {100.0, 100.0, 8.0};

    s.ue_cpus = {{2e9, 0.0}, {3e9, 0.0}, {4e9, 0.0}};
    s.mec = {8e9, 0.0};
    s.mec_pool_hz = 80e9;
    s.concurrent_users = 1;

    s.data_grid = {5000.0, 20000.0, 250.0};
    s.cycles_per_bit = 1000.0;
    s.deadline_s = 0.030;

    s.bandwidth_grid = {1e6, 10e6, 0.25e6};
    s.separation_grid = {10.0, 200.0, 5.0};

    finalize(s);
    return s;
}

Scenario load_scenario(std::string_view text, ConfigFormat format, std::span<const std::string> overrides) {
    Scenario s = default_scenario();
    LineMap lines;
    const auto entries = format == ConfigFormat::json ? parse_json(text) : parse_toml(text);
    apply_entries(s, entries, lines);
    apply_entries(s, parse_overrides(overrides), lines);
    finalize(s);
    validate_with_lines(s, lines);
    return s;
}

Scenario apply_overrides(Scenario base, std::span<const std::string> overrides) {
    LineMap lines;
    apply_entries(base, parse_overrides(overrides), lines);
    finalize(base);
    validate_with_lines(base, lines);
    return base;
}

Scenario with_gain_interpretation(Scenario scenario, GainInterpretation interpretation) {
    scenario.gain_interpretation = interpretation;
    finalize(scenario);
    return scenario;
}

void validate(const Scenario& scenario) { validate_with_lines(scenario, {}); }

std::string render(const Scenario& s) {
    std::ostringstream out;
    const auto kv = [&](std::string_view key, double v) { out << key << " = " << format_number(v) << '\n'; };
    const auto gain = [&](std::string_view base, const GainSetting& g) {
        out << base << (g.unit == GainUnit::db ? "_db" : "_linear") << " = " << format_number(g.value) << '\n';
    };
    const auto point = [&](std::string_view key, const Point3& p) {
        out << key << " = " << list_text({p.x, p.y, p.z}) << '\n';
    };

    out << "[radio]\n";
    kv("interference_power_w", s.environment.interference_power_w);
    kv("path_loss_exponent", s.environment.path_loss_exponent);
    kv("carrier_frequency_hz", s.environment.carrier_frequency_hz);

    out << "\n[direct]\n";
    kv("tx_power_w", s.direct.tx_power_w);
    kv("bandwidth_hz", s.direct.bandwidth_hz);
    kv("distance_m", s.direct.distance_m);
    kv("fading_coeff", s.direct.fading_coeff);

    out << "\n[irs]\n";
    kv("tx_power_w", s.irs.tx_power_w);
    kv("bandwidth_hz", s.irs.bandwidth_hz);
    gain("tx_gain", s.tx_gain);
    gain("rx_gain", s.rx_gain);
    out << "gain_interpretation = \"" << to_string(s.gain_interpretation) << "\"\n";
    kv("elements_m", static_cast<double>(s.irs.panel.elements_m));
    kv("elements_n", static_cast<double>(s.irs.panel.elements_n));
    kv("element_len_x_m", s.irs.panel.element_len_x_m);
    kv("element_len_y_m", s.irs.panel.element_len_y_m);
    kv("theta_t_rad", s.irs.theta_t_rad);
    kv("theta_r_rad", s.irs.theta_r_rad);
    kv("amplitude", s.irs.panel.amplitude);
    kv("d1_m", s.irs.d1_m);
    kv("d2_m", s.irs.d2_m);

    out << "\n[geometry]\n";
    kv("cell_side_m", s.cell_side_m);
    point("bs_position_m", s.bs_position);
    point("irs_position_m", s.irs_position);

    out << "\n[task]\n";
    kv("data_start_bytes", s.data_grid.start);
    kv("data_stop_bytes", s.data_grid.stop);
    kv("data_step_bytes", s.data_grid.step);
    kv("cycles_per_bit", s.cycles_per_bit);
    kv("deadline_s", s.deadline_s);

    out << "\n[compute]\n";
    std::vector<double> ue;
    for (const auto& cpu : s.ue_cpus) {
        ue.push_back(cpu.total_hz);
    }
    out << "ue_cpu_hz = " << list_text(ue) << '\n';
    kv("ue_occupied_hz", s.ue_cpus.empty() ? 0.0 : s.ue_cpus.front().occupied_hz);
    kv("mec_per_user_hz", s.mec.total_hz);
    kv("mec_occupied_hz", s.mec.occupied_hz);
    kv("mec_pool_hz", s.mec_pool_hz);
    kv("concurrent_users", static_cast<double>(s.concurrent_users));

    out << "\n[sweep]\n";
    kv("bandwidth_start_hz", s.bandwidth_grid.start);
    kv("bandwidth_stop_hz", s.bandwidth_grid.stop);
    kv("bandwidth_step_hz", s.bandwidth_grid.step);
    kv("separation_start_m", s.separation_grid.start);
    kv("separation_stop_m", s.separation_grid.stop);
    kv("separation_step_m", s.separation_grid.step);
    return out.str();
}

std::string fingerprint(const Scenario& scenario) { return fnv1a_hex(render(scenario)); }

std::string_view to_string(GainInterpretation interpretation) {
    return interpretation == GainInterpretation::db ? "db" : "linear";
}

GainInterpretation parse_gain_interpretation(std::string_view text) {
    if (text == "db") return GainInterpretation::db;
    if (text == "linear") return GainInterpretation::linear;
    throw DomainError("gain interpretation must be 'db' or 'linear', got '" + std::string(text) + "'");
}

std::string_view to_string(SweepVariable variable) {
    switch (variable) {
        case SweepVariable::bandwidth_hz: return "bandwidth_hz";
        case SweepVariable::data_bytes: return "data_bytes";
        case SweepVariable::distance_m: return "distance_m";
        case SweepVariable::separation_m: return "separation_m";
    }
    return "?";
}

SweepVariable parse_sweep_variable(std::string_view text) {
    for (auto v : {SweepVariable::bandwidth_hz, SweepVariable::data_bytes, SweepVariable::distance_m,
                   SweepVariable::separation_m}) {
        if (to_string(v) == text) {
            return v;
        }
    }
    throw DomainError("unknown sweep variable '" + std::string(text) +
                      "'; expected bandwidth_hz, data_bytes, distance_m or separation_m");
}

void set_sweep_variable(Scenario& s, SweepVariable variable, double value) {
    switch (variable) {
        case SweepVariable::bandwidth_hz:
            s.direct.bandwidth_hz = value;
            s.irs.bandwidth_hz = value;
            break;
        case SweepVariable::data_bytes:
            s.data_grid.start = value;
            s.data_grid.stop = value;
            break;
        case SweepVariable::distance_m:
            s.direct.distance_m = value;
            break;
        case SweepVariable::separation_m:
            s.direct.distance_m = value;
            s.irs.d1_m = value / 2.0;
            s.irs.d2_m = value / 2.0;
            break;
    }
}

std::vector<SweepPoint> expand_sweep(const SweepSpec& spec, const Scenario& base) {
    const Grid grid{spec.start, spec.stop, spec.step};
    const std::string key = "sweep." + std::string(to_string(spec.variable));
    if (!std::isfinite(spec.start) || !std::isfinite(spec.stop) || spec.start > spec.stop) {
        throw ConfigError(key, 0, "sweep needs finite start <= stop");
    }
    if (!positive(spec.step)) {
        throw ConfigError(key, 0, "sweep step must be > 0");
    }
    if (grid.size() > kMaxGridPoints) {
        throw ConfigError(key, 0, "sweep grid exceeds " + std::to_string(kMaxGridPoints) + " points");
    }
    const Scenario fixed = apply_overrides(base, spec.overrides);
    std::vector<SweepPoint> points;
    for (double v : grid.values()) {
        SweepPoint p{v, fixed};
        set_sweep_variable(p.scenario, spec.variable, v);
        try {
            validate(p.scenario);
        } catch (const ConfigError& e) {
            throw ConfigError(key, 0, "point " + format_number(v) + ": " + e.what());
        }
        points.push_back(std::move(p));
    }
    return points;
}

}  // namespace irsmec
