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

#include "irsmec/core_model.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "irsmec/errors.hpp"
#include "irsmec/scenario.hpp"
#include "support/oracle.hpp"

using namespace irsmec;
namespace frozen = irsmec::oracle::frozen;

namespace {

RadioEnvironment table_env(double n = frozen::kInterference) { return RadioEnvironment::from_carrier(n, 5.5, 120e9); }

IrsLink table_irs(double gain) {
    IrsLink l;
    l.tx_power_w = 2.0;
    l.bandwidth_hz = 1e6;
    l.tx_gain = gain;
    l.rx_gain = gain;
    l.theta_t_rad = kPi / 4.0;
    l.theta_r_rad = kPi / 4.0;
    l.d1_m = 100.0;
    l.d2_m = 100.0;
    l.panel = {100, 100, 0.0038, 0.0038, 0.9};
    return l;
}

}  // namespace

TEST(DirectLink, ReceivedPowerAt200m) {
    const DirectLink link{5.0, 1e6, 200.0, 1.0};
    EXPECT_NEAR(received_power_direct(link, table_env()), frozen::kDirectPower200m, 1e-12 * frozen::kDirectPower200m);
}

TEST(DirectLink, FadingScalesLinearly) {
    DirectLink link{5.0, 1e6, 200.0, 0.25};
    EXPECT_DOUBLE_EQ(received_power_direct(link, table_env()), 0.25 * frozen::kDirectPower200m);
}

TEST(DirectLink, RejectsBadInputs) {
    const auto env = table_env();
    EXPECT_THROW(received_power_direct({5.0, 1e6, 0.0, 1.0}, env), DomainError);
    EXPECT_THROW(received_power_direct({-1.0, 1e6, 200.0, 1.0}, env), DomainError);
    EXPECT_THROW(received_power_direct({5.0, 1e6, 200.0, -0.5}, env), DomainError);
    EXPECT_THROW(received_power_direct({5.0, 1e6, std::numeric_limits<double>::quiet_NaN(), 1.0}, env), DomainError);
    EXPECT_THROW(snr(1e-12, table_env(0.0)), DomainError);
}

TEST(Throughput, AnchorRatesAt200m) {
    const auto env = table_env();
    EXPECT_NEAR(uplink_rate_direct({5.0, 1e6, 200.0, 1.0}, env), 2.001e6, 1e-6);
    EXPECT_NEAR(uplink_rate_direct({5.0, 5e6, 200.0, 1.0}, env), 10.005e6, 1e-5);
    EXPECT_NEAR(uplink_rate_direct({5.0, 10e6, 200.0, 1.0}, env), 20.01e6, 1e-5);
}

TEST(Throughput, SmallSnrUsesStableForm) {
    const double s = 1e-12;
    EXPECT_NEAR(throughput(1.0, s), s / std::log(2.0), 1e-24);
    EXPECT_EQ(throughput(1e6, 0.0), 0.0);
    EXPECT_THROW(throughput(0.0, 1.0), DomainError);
    EXPECT_THROW(throughput(1e6, -1.0), DomainError);
}

TEST(Irs, ScatteringGain) {
    const IrsPanel panel{100, 100, 0.0038, 0.0038, 0.9};
    EXPECT_NEAR(scattering_gain(panel, kSpeedOfLight / 120e9), frozen::kScatteringGainDefault, 1e-12);
    EXPECT_NEAR(scattering_gain(panel, 0.0025), frozen::kScatteringGain0025, 1e-12);
}

TEST(Irs, ReceivedPowerBothGainReadings) {
    const auto env = table_env();
    EXPECT_NEAR(received_power_irs(table_irs(100.0), env), frozen::kIrsPowerDbGains, 1e-12 * frozen::kIrsPowerDbGains);
    EXPECT_NEAR(received_power_irs(table_irs(20.0), env), frozen::kIrsPowerLinearGains,
                1e-12 * frozen::kIrsPowerLinearGains);
}

TEST(Irs, RatesAt1MHz) {
    const auto env = table_env();
    EXPECT_NEAR(uplink_rate_irs(table_irs(100.0), env), frozen::kIrsRate1MHzDb, 1e-3);
    EXPECT_NEAR(uplink_rate_irs(table_irs(20.0), env), frozen::kIrsRate1MHzLinear, 1e-3);
}

TEST(Irs, SegmentDistanceFromPositions) {
    EXPECT_DOUBLE_EQ(segment_distance({0, 0, 8}, {100, 100, 8}), std::sqrt(20000.0));
    EXPECT_THROW(segment_distance({1, 1, 1}, {1, 1, 1}), DomainError);
}

TEST(Irs, RejectsBadPanel) {
    auto l = table_irs(100.0);
    l.panel.amplitude = 1.5;
    EXPECT_THROW(received_power_irs(l, table_env()), DomainError);
    l = table_irs(100.0);
    l.panel.elements_m = 0;
    EXPECT_THROW(received_power_irs(l, table_env()), DomainError);
    l = table_irs(100.0);
    l.theta_t_rad = kPi;
    EXPECT_THROW(received_power_irs(l, table_env()), DomainError);
}

TEST(Latency, LocalTableValues) {
    EXPECT_DOUBLE_EQ(local_latency({7500, 1000, 0.03}, {2e9, 0}), 0.03);
    EXPECT_DOUBLE_EQ(local_latency({20000, 1000, 0.03}, {4e9, 0}), 0.04);
    EXPECT_DOUBLE_EQ(local_latency({0, 1000, 0.03}, {4e9, 0}), 0.0);
}

TEST(Latency, SaturatedProcessor) {
    EXPECT_THROW(local_latency({1000, 1000, 0.03}, {2e9, 2e9}), SaturatedProcessorError);
    EXPECT_THROW(offload_latency({1000, 1000, 0.03}, 1e6, {8e9, 9e9}), SaturatedProcessorError);
}

TEST(Latency, OffloadAnchors) {
    const Processor mec{8e9, 0};
    EXPECT_NEAR(offload_latency({6000, 1000, 0.03}, 2.001e6, mec).total_s(), 6000 * 8 / 2.001e6 + 0.006, 1e-15);
    EXPECT_LE(offload_latency({6000, 1000, 0.03}, 2.001e6, mec).total_s(), 0.03);
    EXPECT_GT(offload_latency({6003, 1000, 0.03}, 2.001e6, mec).total_s(), 0.03);
    EXPECT_LE(offload_latency({17000, 1000, 0.03}, 10.53e6, mec).total_s(), 0.03);
    EXPECT_THROW(offload_latency({1000, 1000, 0.03}, 0.0, mec), DomainError);
}

TEST(Latency, ProcessingPartIsExact) {
    const auto lat = offload_latency({20000, 1000, 0.03}, 1e7, {8e9, 0});
    EXPECT_DOUBLE_EQ(lat.processing_s, 0.02);
    EXPECT_DOUBLE_EQ(lat.transmission_s, 0.016);
}

TEST(Inverse, MinBandwidth) {
    const double s = received_power_direct({5.0, 1e6, 200.0, 1.0}, table_env()) / frozen::kInterference;
    const Processor mec{8e9, 0};
    EXPECT_NEAR(min_bandwidth_for_deadline({20000, 1000, 0.03}, s, mec), frozen::kMinBandwidthDirect20000, 1e-3);
    EXPECT_EQ(min_bandwidth_for_deadline({0, 1000, 0.03}, s, mec), 0.0);
    EXPECT_THROW(min_bandwidth_for_deadline({240000, 1000, 0.03}, s, mec), InfeasibleError);
    EXPECT_THROW(min_bandwidth_for_deadline({20000, 1000, 0.03}, 0.0, mec), InfeasibleError);
}

TEST(Inverse, MinBandwidthIrsLinear) {
    const double s = received_power_irs(table_irs(20.0), table_env()) / frozen::kInterference;
    EXPECT_NEAR(min_bandwidth_for_deadline({20000, 1000, 0.03}, s, {8e9, 0}), frozen::kMinBandwidthIrsLinear20000,
                1e-3);
}

TEST(Inverse, MaxLocalData) {
    EXPECT_EQ(max_local_data_for_deadline({2e9, 0}, 1000, 0.03), 7500);
    EXPECT_EQ(max_local_data_for_deadline({3e9, 0}, 1000, 0.03), 11250);
    EXPECT_EQ(max_local_data_for_deadline({4e9, 0}, 1000, 0.03), 15000);
}

TEST(Inverse, MaxOffloadData) {
    EXPECT_EQ(max_offload_data_for_deadline(2.001e6, {8e9, 0}, 1000, 0.03),
              static_cast<std::int64_t>(std::floor(frozen::kMaxOffloadDirect1MHz)));
    EXPECT_EQ(max_offload_data_for_deadline(frozen::kIrsRate1MHzLinear, {8e9, 0}, 1000, 0.03), 16801);
}

TEST(Inverse, CalibrateInterference) {
    const double n = calibrate_interference({5.0, 1e6, 200.0, 1.0}, 5.5, 2.001e6);
    EXPECT_NEAR(n, frozen::kInterference, 1e-12 * frozen::kInterference);
    EXPECT_THROW(calibrate_interference({5.0, 1e6, 200.0, 1.0}, 5.5, 0.0), InfeasibleError);
    EXPECT_THROW(calibrate_interference({5.0, 1e6, 200.0, 1.0}, 5.5, 1e12), InfeasibleError);
}
