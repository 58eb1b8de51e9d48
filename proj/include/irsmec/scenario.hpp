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

#pragma once

// Scenario configuration: reference defaults, a TOML-style key/value grammar
// (JSON accepted too) with unit suffixes in key names, normalization to SI,
// validation, and sweep-grid expansion.
//
// Grammar, one assignment per line:
//
//   # comment
//   [section]
//   key_<unit> = 1.5e6            number
//   key_<unit> = [2e9, 3e9]       list of numbers
//   key = "text"                  string (quotes optional)
//
// A `section.key = value` form is accepted outside any section and in
// `--set` overrides. Unknown keys and suffixes that do not fit the key's
// quantity are errors. The full key list lives in README.md.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "irsmec/core_model.hpp"

namespace irsmec {

/// How a gain configured with a `_db` suffix is turned into a linear ratio.
/// `db` applies 10^(x/10); `linear` takes the number as the ratio itself.
enum class GainInterpretation { db, linear };

enum class GainUnit { db, linear };

struct GainSetting {
    double value = 0.0;
    GainUnit unit = GainUnit::db;

    friend bool operator==(const GainSetting&, const GainSetting&) = default;
};

/// Inclusive arithmetic grid start, start + step, ..., <= stop.
struct Grid {
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;

    std::size_t size() const;
    std::vector<double> values() const;

    friend bool operator==(const Grid&, const Grid&) = default;
};

inline constexpr std::size_t kMaxGridPoints = 1'000'000;

struct Scenario {
    RadioEnvironment environment;
    DirectLink direct;
    IrsLink irs;  // gains resolved from tx_gain/rx_gain below
    GainSetting tx_gain;
    GainSetting rx_gain;
    GainInterpretation gain_interpretation = GainInterpretation::db;

    double cell_side_m = 0.0;
    Point3 bs_position;
    Point3 irs_position;

    std::vector<Processor> ue_cpus;
    Processor mec;  // per-user share of the MEC server
    double mec_pool_hz = 0.0;
    std::int64_t concurrent_users = 1;

    Grid data_grid;  // bytes
    double cycles_per_bit = 0.0;
    double deadline_s = 0.0;

    Grid bandwidth_grid;   // Hz
    Grid separation_grid;  // m

    ComputeTask task(double data_bytes) const { return {data_bytes, cycles_per_bit, deadline_s}; }
    std::vector<ComputeTask> tasks() const;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

double db_to_linear(double db);
double linear_to_db(double ratio);
double resolve_gain(const GainSetting& gain, GainInterpretation interpretation);

/// Interference power that reproduces 2.001 Mb/s over the default direct
/// link (5 W, 1 MHz, 200 m, alpha 5.5, h = 1).
double default_interference_power_w();

/// Reference defaults with the calibrated interference power.
Scenario default_scenario();

enum class ConfigFormat { toml, json };

/// Parses `text` over the defaults, then applies `overrides` ("section.key=value").
/// Throws ConfigError naming the key and line on any problem.
Scenario load_scenario(std::string_view text, ConfigFormat format = ConfigFormat::toml,
                       std::span<const std::string> overrides = {});

Scenario apply_overrides(Scenario base, std::span<const std::string> overrides);

/// Re-derives the IRS link gains under a different interpretation.
Scenario with_gain_interpretation(Scenario scenario, GainInterpretation interpretation);

/// Throws ConfigError on the first violated invariant.
void validate(const Scenario& scenario);

/// Canonical TOML text; load_scenario(render(s)) == s.
std::string render(const Scenario& scenario);

/// Digest of render(scenario).
std::string fingerprint(const Scenario& scenario);

std::string_view to_string(GainInterpretation interpretation);
GainInterpretation parse_gain_interpretation(std::string_view text);

enum class SweepVariable { bandwidth_hz, data_bytes, distance_m, separation_m };

std::string_view to_string(SweepVariable variable);
SweepVariable parse_sweep_variable(std::string_view text);

struct SweepSpec {
    SweepVariable variable = SweepVariable::bandwidth_hz;
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;
    std::vector<std::string> overrides;  // "section.key=value", applied to every point
};

struct SweepPoint {
    double value = 0.0;
    Scenario scenario;
};

/// Points in ascending order of the swept variable. A separation sweep moves
/// the direct-link distance and splits the IRS path as d1 = d2 = separation/2.
std::vector<SweepPoint> expand_sweep(const SweepSpec& spec, const Scenario& base);

/// Applies one sweep value to a scenario without validating it.
void set_sweep_variable(Scenario& scenario, SweepVariable variable, double value);

}  // namespace irsmec
