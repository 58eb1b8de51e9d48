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

#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "irsmec/errors.hpp"
#include "support/oracle.hpp"

using namespace irsmec;

namespace {

// Runs `text` and returns the ConfigError, failing if none is thrown.
ConfigError config_error(const std::string& text, ConfigFormat fmt = ConfigFormat::toml) {
    try {
        load_scenario(text, fmt);
    } catch (const ConfigError& e) {
        return e;
    }
    ADD_FAILURE() << "no ConfigError for:\n" << text;
    return ConfigError("", 0, "");
}

}  // namespace

TEST(Scenario, DefaultInterferenceIsCalibrated) {
    EXPECT_NEAR(default_interference_power_w(), oracle::frozen::kInterference, 1e-12 * oracle::frozen::kInterference);
}

TEST(Scenario, DefaultsLoadFromEmptyText) {
    const Scenario s = load_scenario("");
    EXPECT_EQ(s, default_scenario());
    EXPECT_EQ(s.gain_interpretation, GainInterpretation::db);
    EXPECT_DOUBLE_EQ(s.irs.tx_gain, 100.0);
    EXPECT_EQ(s.bandwidth_grid.size(), 37u);
    EXPECT_EQ(s.separation_grid.size(), 39u);
    EXPECT_EQ(s.data_grid.size(), 61u);
}

TEST(Scenario, UnitSuffixesConvert) {
    const Scenario s = load_scenario(
        "[direct]\n"
        "tx_power_mw = 250\n"
        "bandwidth_khz = 1500\n"
        "distance_km = 0.15\n"
        "[irs]\n"
        "element_len_x_mm = 5\n"
        "theta_t_rad = 0.5\n"
        "[task]\n"
        "deadline_ms = 40\n");
    EXPECT_DOUBLE_EQ(s.direct.tx_power_w, 0.25);
    EXPECT_DOUBLE_EQ(s.direct.bandwidth_hz, 1.5e6);
    EXPECT_DOUBLE_EQ(s.direct.distance_m, 150.0);
    EXPECT_DOUBLE_EQ(s.irs.panel.element_len_x_m, 0.005);
    EXPECT_DOUBLE_EQ(s.irs.theta_t_rad, 0.5);
    EXPECT_DOUBLE_EQ(s.deadline_s, 0.04);
}

TEST(Scenario, GainInterpretation) {
    const Scenario lin = load_scenario("[irs]\ngain_interpretation = \"linear\"\n");
    EXPECT_DOUBLE_EQ(lin.irs.tx_gain, 20.0);
    EXPECT_DOUBLE_EQ(with_gain_interpretation(lin, GainInterpretation::db).irs.rx_gain, 100.0);
    const Scenario explicit_linear = load_scenario("[irs]\ntx_gain_linear = 50\n");
    EXPECT_DOUBLE_EQ(explicit_linear.irs.tx_gain, 50.0);
    EXPECT_DOUBLE_EQ(explicit_linear.irs.rx_gain, 100.0);
}

TEST(Scenario, JsonAlternative) {
    const Scenario s = load_scenario(R"({"direct": {"bandwidth_mhz": 2}, "compute": {"ue_cpu_ghz": [1, 2]}})",
                                     ConfigFormat::json);
    EXPECT_DOUBLE_EQ(s.direct.bandwidth_hz, 2e6);
    ASSERT_EQ(s.ue_cpus.size(), 2u);
    EXPECT_DOUBLE_EQ(s.ue_cpus[1].total_hz, 2e9);
}

TEST(Scenario, Overrides) {
    const std::vector<std::string> ov = {"direct.bandwidth_mhz=3", "task.deadline_ms=25"};
    const Scenario s = load_scenario("", ConfigFormat::toml, ov);
    EXPECT_DOUBLE_EQ(s.direct.bandwidth_hz, 3e6);
    EXPECT_DOUBLE_EQ(s.deadline_s, 0.025);
    const std::vector<std::string> bad = {"bandwidth_mhz=3"};
    EXPECT_THROW(apply_overrides(default_scenario(), bad), ConfigError);
}

TEST(Scenario, ErrorsNameKeyAndLine) {
    auto e = config_error("[direct]\n\nbandwith_mhz = 3\n");
    EXPECT_EQ(e.line(), 3);
    EXPECT_NE(std::string(e.what()).find("bandwith_mhz"), std::string::npos);

    e = config_error("[direct]\nbandwidth_ms = 3\n");
    EXPECT_EQ(e.line(), 2);
    EXPECT_NE(std::string(e.what()).find("suffix"), std::string::npos);

    e = config_error("[irs]\nelements_m_count = 3\n");
    EXPECT_EQ(e.line(), 2);

    e = config_error("[irs]\namplitude = 1.5\n");
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.key(), "irs.amplitude");

    e = config_error("[direct]\ndistance_m = 0\n");
    EXPECT_EQ(e.key(), "direct.distance");

    e = config_error("[direct]\ndistance_m = 1\ndistance_m = 2\n");
    EXPECT_EQ(e.line(), 3);

    config_error("[nosuch]\nx = 1\n");
    config_error("[task]\ndata_start_bytes = 30000\n");
    config_error("[direct]\nbandwidth_mhz = abc\n");
    config_error("{\"direct\": 3}", ConfigFormat::json);
}

TEST(Scenario, PoolCapacityRule) {
    EXPECT_NO_THROW(load_scenario("[compute]\nconcurrent_users = 10\n"));
    auto e = config_error("[compute]\nconcurrent_users = 11\n");
    EXPECT_NE(std::string(e.what()).find("pool"), std::string::npos);
}

TEST(Scenario, RenderRoundTrip) {
    const Scenario s = load_scenario("[irs]\ntheta_r_deg = 30\ngain_interpretation = \"linear\"\n");
    EXPECT_EQ(load_scenario(render(s)), s);
    EXPECT_EQ(fingerprint(s), fingerprint(load_scenario(render(s))));
    EXPECT_NE(fingerprint(s), fingerprint(default_scenario()));
}

TEST(Sweep, SeparationSplitsIrsPath) {
    const auto points = expand_sweep({SweepVariable::separation_m, 10, 30, 10, {}}, default_scenario());
    ASSERT_EQ(points.size(), 3u);
    EXPECT_DOUBLE_EQ(points[2].scenario.direct.distance_m, 30.0);
    EXPECT_DOUBLE_EQ(points[2].scenario.irs.d1_m, 15.0);
    EXPECT_DOUBLE_EQ(points[2].scenario.irs.d2_m, 15.0);
}

TEST(Sweep, GridEndpointsInclusive) {
    const Grid g{1e6, 10e6, 0.25e6};
    const auto v = g.values();
    ASSERT_EQ(v.size(), 37u);
    EXPECT_DOUBLE_EQ(v.front(), 1e6);
    EXPECT_DOUBLE_EQ(v.back(), 10e6);
}

TEST(Sweep, RejectsBadSpec) {
    EXPECT_THROW(expand_sweep({SweepVariable::bandwidth_hz, 10, 1, 1, {}}, default_scenario()), Error);
    EXPECT_THROW(expand_sweep({SweepVariable::bandwidth_hz, 1, 10, 0, {}}, default_scenario()), Error);
    EXPECT_THROW(parse_sweep_variable("speed"), Error);
}
