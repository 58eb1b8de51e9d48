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

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "irsmec/errors.hpp"

namespace irsmec {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void require(bool ok, const char* field, const char* rule, double value) {
    if (!ok) {
        throw DomainError(std::string(field) + " must be " + rule + ", got " + num(value));
    }
}

bool finite(double v) { return std::isfinite(v); }

// Relative slack for the wavelength/carrier consistency check.
constexpr double kWavelengthTolerance = 1e-12;

}  // namespace

RadioEnvironment RadioEnvironment::from_carrier(double interference_power_w, double path_loss_exponent,
                                                double carrier_frequency_hz) {
    RadioEnvironment env;
    env.interference_power_w = interference_power_w;
    env.path_loss_exponent = path_loss_exponent;
    env.carrier_frequency_hz = carrier_frequency_hz;
    env.wavelength_m = carrier_frequency_hz > 0.0 ? kSpeedOfLight / carrier_frequency_hz : 0.0;
    return env;
}

void validate(const RadioEnvironment& env) {
    require(env.interference_power_w > 0.0 && finite(env.interference_power_w), "interference_power_w", "> 0",
            env.interference_power_w);
    require(env.path_loss_exponent > 0.0 && finite(env.path_loss_exponent), "path_loss_exponent", "> 0",
            env.path_loss_exponent);
    require(env.carrier_frequency_hz > 0.0 && finite(env.carrier_frequency_hz), "carrier_frequency_hz", "> 0",
            env.carrier_frequency_hz);
    const double expected = kSpeedOfLight / env.carrier_frequency_hz;
    require(std::abs(env.wavelength_m - expected) <= kWavelengthTolerance * expected, "wavelength_m",
            "c / carrier_frequency_hz", env.wavelength_m);
}

void validate(const DirectLink& link) {
    require(link.tx_power_w > 0.0 && finite(link.tx_power_w), "tx_power_w", "> 0", link.tx_power_w);
    require(link.bandwidth_hz > 0.0 && finite(link.bandwidth_hz), "bandwidth_hz", "> 0", link.bandwidth_hz);
    require(link.distance_m > 0.0 && finite(link.distance_m), "distance_m", "> 0", link.distance_m);
    require(link.fading_coeff >= 0.0 && finite(link.fading_coeff), "fading_coeff", ">= 0", link.fading_coeff);
}

void validate(const IrsPanel& panel) {
    require(panel.elements_m >= 1, "elements_m", ">= 1", static_cast<double>(panel.elements_m));
    require(panel.elements_n >= 1, "elements_n", ">= 1", static_cast<double>(panel.elements_n));
    require(panel.element_len_x_m > 0.0 && finite(panel.element_len_x_m), "element_len_x_m", "> 0",
            panel.element_len_x_m);
    require(panel.element_len_y_m > 0.0 && finite(panel.element_len_y_m), "element_len_y_m", "> 0",
            panel.element_len_y_m);
    require(panel.amplitude > 0.0 && panel.amplitude <= 1.0, "amplitude", "in (0, 1]", panel.amplitude);
}

void validate(const IrsLink& link) {
    require(link.tx_power_w > 0.0 && finite(link.tx_power_w), "tx_power_w", "> 0", link.tx_power_w);
    require(link.bandwidth_hz > 0.0 && finite(link.bandwidth_hz), "bandwidth_hz", "> 0", link.bandwidth_hz);
    require(link.tx_gain > 0.0 && finite(link.tx_gain), "tx_gain", "> 0", link.tx_gain);
    require(link.rx_gain > 0.0 && finite(link.rx_gain), "rx_gain", "> 0", link.rx_gain);
    constexpr double half_pi = kPi / 2.0;
    require(link.theta_t_rad >= 0.0 && link.theta_t_rad < half_pi, "theta_t_rad", "in [0, pi/2)", link.theta_t_rad);
    require(link.theta_r_rad >= 0.0 && link.theta_r_rad < half_pi, "theta_r_rad", "in [0, pi/2)", link.theta_r_rad);
    require(link.d1_m > 0.0 && finite(link.d1_m), "d1_m", "> 0", link.d1_m);
    require(link.d2_m > 0.0 && finite(link.d2_m), "d2_m", "> 0", link.d2_m);
    validate(link.panel);
}

void validate(const ComputeTask& task) {
    require(task.data_bytes >= 0.0 && finite(task.data_bytes), "data_bytes", ">= 0", task.data_bytes);
    require(task.cycles_per_bit > 0.0 && finite(task.cycles_per_bit), "cycles_per_bit", "> 0", task.cycles_per_bit);
    require(task.deadline_s > 0.0 && finite(task.deadline_s), "deadline_s", "> 0", task.deadline_s);
}

void validate(const Processor& cpu) {
    require(cpu.occupied_hz >= 0.0 && finite(cpu.occupied_hz), "occupied_hz", ">= 0", cpu.occupied_hz);
    require(cpu.total_hz > cpu.occupied_hz && finite(cpu.total_hz), "total_hz", "> occupied_hz", cpu.total_hz);
}

double received_power_direct(const DirectLink& link, const RadioEnvironment& env) {
    validate(link);
    validate(env);
    return link.tx_power_w * link.fading_coeff / std::pow(link.distance_m, env.path_loss_exponent);
}

double snr(double received_power_w, const RadioEnvironment& env) {
    require(env.interference_power_w > 0.0, "interference_power_w", "> 0", env.interference_power_w);
    return received_power_w / env.interference_power_w;
}

double throughput(double bandwidth_hz, double snr) {
    require(bandwidth_hz > 0.0, "bandwidth_hz", "> 0", bandwidth_hz);
    require(snr >= 0.0, "snr", ">= 0", snr);
    // log1p keeps precision once 1 + snr rounds away the signal.
    const double spectral_efficiency =
        snr < 1e-3 ? std::log1p(snr) / std::numbers::ln2 : std::log2(1.0 + snr);
    return bandwidth_hz * spectral_efficiency;
}

double segment_distance(const Point3& a, const Point3& b) {
    const double d = std::hypot(a.x - b.x, a.y - b.y, a.z - b.z);
    require(d > 0.0, "segment distance", "> 0", d);
    return d;
}

double scattering_gain(const IrsPanel& panel, double wavelength_m) {
    require(wavelength_m > 0.0, "wavelength_m", "> 0", wavelength_m);
    return 4.0 * kPi * panel.element_len_x_m * panel.element_len_y_m / (wavelength_m * wavelength_m);
}

double received_power_irs(const IrsLink& link, const RadioEnvironment& env) {
    validate(link);
    validate(env);
    const double lambda = env.wavelength_m;
    const IrsPanel& p = link.panel;
    const double g = scattering_gain(p, lambda);
    const double m = static_cast<double>(p.elements_m);
    const double n = static_cast<double>(p.elements_n);
    const double numerator = link.tx_power_w * link.tx_gain * link.rx_gain * g * (m * m) * (n * n) *
                             p.element_len_x_m * p.element_len_y_m * (lambda * lambda) *
                             std::cos(link.theta_t_rad) * std::cos(link.theta_r_rad) *
                             (p.amplitude * p.amplitude);
    const double path = link.d1_m * link.d2_m;
    const double denominator = 64.0 * kPi * kPi * kPi * (path * path);
    return numerator / denominator;
}

double uplink_rate_direct(const DirectLink& link, const RadioEnvironment& env) {
    return throughput(link.bandwidth_hz, snr(received_power_direct(link, env), env));
}

double uplink_rate_irs(const IrsLink& link, const RadioEnvironment& env) {
    return throughput(link.bandwidth_hz, snr(received_power_irs(link, env), env));
}

double local_latency(const ComputeTask& task, const Processor& cpu) {
    require(task.data_bytes >= 0.0, "data_bytes", ">= 0", task.data_bytes);
    const double free = cpu.free_hz();
    if (!(free > 0.0)) {
        throw SaturatedProcessorError("processor saturated: occupied_hz " + num(cpu.occupied_hz) +
                                      " >= total_hz " + num(cpu.total_hz));
    }
    const double bits = task.data_bytes * kBitsPerByte;
    return bits * task.cycles_per_bit / free;
}

OffloadLatency offload_latency(const ComputeTask& task, double uplink_rate_bps, const Processor& mec) {
    require(uplink_rate_bps > 0.0, "uplink_rate_bps", "> 0", uplink_rate_bps);
    OffloadLatency out;
    out.processing_s = local_latency(task, mec);
    out.transmission_s = task.data_bytes * kBitsPerByte / uplink_rate_bps;
    return out;
}

double min_bandwidth_for_deadline(const ComputeTask& task, double snr, const Processor& mec) {
    const double processing = local_latency(task, mec);
    if (task.data_bytes == 0.0) {
        return 0.0;
    }
    const double slack = task.deadline_s - processing;
    if (!(slack > 0.0)) {
        throw InfeasibleError("MEC processing term " + num(processing) + " s leaves no time for transmission within deadline " +
                              num(task.deadline_s) + " s");
    }
    if (!(snr > 0.0)) {
        throw InfeasibleError("snr " + num(snr) + " carries no data at any bandwidth");
    }
    const double bits = task.data_bytes * kBitsPerByte;
    return bits / (slack * throughput(1.0, snr));
}

namespace {

// Largest integer d >= 0 with fits(d), starting from a floating estimate.
template <typename Fits>
std::int64_t refine_floor(double estimate, Fits fits) {
    if (!(estimate > 0.0)) {
        return 0;
    }
    auto d = static_cast<std::int64_t>(std::floor(estimate));
    while (d > 0 && !fits(d)) {
        --d;
    }
    while (fits(d + 1)) {
        ++d;
    }
    return d;
}

}  // namespace

std::int64_t max_local_data_for_deadline(const Processor& cpu, double cycles_per_bit, double deadline_s) {
    const double free = cpu.free_hz();
    if (!(free > 0.0) || !(deadline_s > 0.0) || !(cycles_per_bit > 0.0)) {
        return 0;
    }
    const auto fits = [&](std::int64_t bytes) {
        return local_latency({static_cast<double>(bytes), cycles_per_bit, deadline_s}, cpu) <= deadline_s;
    };
    return refine_floor(deadline_s * free / (kBitsPerByte * cycles_per_bit), fits);
}

std::int64_t max_offload_data_for_deadline(double uplink_rate_bps, const Processor& mec, double cycles_per_bit,
                                           double deadline_s) {
    require(uplink_rate_bps > 0.0, "uplink_rate_bps", "> 0", uplink_rate_bps);
    const double free = mec.free_hz();
    if (!(free > 0.0) || !(deadline_s > 0.0) || !(cycles_per_bit > 0.0)) {
        return 0;
    }
    const auto fits = [&](std::int64_t bytes) {
        const ComputeTask task{static_cast<double>(bytes), cycles_per_bit, deadline_s};
        return offload_latency(task, uplink_rate_bps, mec).total_s() <= deadline_s;
    };
    const double seconds_per_byte = kBitsPerByte / uplink_rate_bps + kBitsPerByte * cycles_per_bit / free;
    return refine_floor(deadline_s / seconds_per_byte, fits);
}

double calibrate_interference(const DirectLink& link, double path_loss_exponent, double observed_rate_bps) {
    if (!(observed_rate_bps > 0.0) || !finite(observed_rate_bps)) {
        throw InfeasibleError("observed rate must be finite and > 0, got " + num(observed_rate_bps));
    }
    validate(link);
    require(path_loss_exponent > 0.0 && finite(path_loss_exponent), "path_loss_exponent", "> 0", path_loss_exponent);
    const double received = link.tx_power_w * link.fading_coeff / std::pow(link.distance_m, path_loss_exponent);
    if (!(received > 0.0)) {
        throw InfeasibleError("received power is zero; no interference level reproduces a positive rate");
    }
    const double target_snr = std::expm1(observed_rate_bps / link.bandwidth_hz * std::numbers::ln2);
    if (!finite(target_snr)) {
        throw InfeasibleError("observed rate " + num(observed_rate_bps) + " b/s needs an unbounded snr at " +
                              num(link.bandwidth_hz) + " Hz");
    }
    const double n = received / target_snr;
    if (!(n > 0.0) || !finite(n)) {
        throw InfeasibleError("calibrated interference power is not representable");
    }
    return n;
}

}  // namespace irsmec
