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

// Closed-form uplink link budgets (direct and IRS-reflected) and the
// task-completion latency model for local and MEC processing, together with
// the inversions used to calibrate and to size resources.
//
// All functions are pure. Quantities are SI base units unless the field name
// says otherwise; task data is carried in bytes and converted to bits here.

#include <cstdint>

namespace irsmec {

inline constexpr double kSpeedOfLight = 2.998e8;  // m/s
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kBitsPerByte = 8.0;

struct RadioEnvironment {
    double interference_power_w = 0.0;
    double path_loss_exponent = 0.0;
    double carrier_frequency_hz = 0.0;
    double wavelength_m = 0.0;

    /// Builds an environment whose wavelength is derived from the carrier.
    static RadioEnvironment from_carrier(double interference_power_w, double path_loss_exponent,
                                         double carrier_frequency_hz);

    friend bool operator==(const RadioEnvironment&, const RadioEnvironment&) = default;
};

struct DirectLink {
    double tx_power_w = 0.0;
    double bandwidth_hz = 0.0;
    double distance_m = 0.0;
    double fading_coeff = 1.0;

    friend bool operator==(const DirectLink&, const DirectLink&) = default;
};

struct IrsPanel {
    std::int64_t elements_m = 1;
    std::int64_t elements_n = 1;
    double element_len_x_m = 0.0;
    double element_len_y_m = 0.0;
    double amplitude = 1.0;

    friend bool operator==(const IrsPanel&, const IrsPanel&) = default;
};

struct IrsLink {
    double tx_power_w = 0.0;
    double bandwidth_hz = 0.0;
    double tx_gain = 1.0;  // linear power ratio
    double rx_gain = 1.0;  // linear power ratio
    double theta_t_rad = 0.0;
    double theta_r_rad = 0.0;
    double d1_m = 0.0;  // UE -> IRS
    double d2_m = 0.0;  // IRS -> BS
    IrsPanel panel;

    friend bool operator==(const IrsLink&, const IrsLink&) = default;
};

struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend bool operator==(const Point3&, const Point3&) = default;
};

struct ComputeTask {
    double data_bytes = 0.0;
    double cycles_per_bit = 0.0;
    double deadline_s = 0.0;

    friend bool operator==(const ComputeTask&, const ComputeTask&) = default;
};

struct Processor {
    double total_hz = 0.0;
    double occupied_hz = 0.0;

    double free_hz() const { return total_hz - occupied_hz; }

    friend bool operator==(const Processor&, const Processor&) = default;
};

/// Transmission and processing addends of an offloaded task's completion time.
struct OffloadLatency {
    double transmission_s = 0.0;
    double processing_s = 0.0;

    double total_s() const { return transmission_s + processing_s; }
};

// Invariant checks. Each throws DomainError naming the offending field.
void validate(const RadioEnvironment& env);
void validate(const DirectLink& link);
void validate(const IrsPanel& panel);
void validate(const IrsLink& link);
void validate(const ComputeTask& task);
void validate(const Processor& cpu);

/// P_t h / D^alpha.
double received_power_direct(const DirectLink& link, const RadioEnvironment& env);

double snr(double received_power_w, const RadioEnvironment& env);

/// Shannon rate B log2(1 + snr) in bit/s.
double throughput(double bandwidth_hz, double snr);

double segment_distance(const Point3& a, const Point3& b);

/// Per-element aperture gain 4 pi d_x d_y / lambda^2.
double scattering_gain(const IrsPanel& panel, double wavelength_m);

/// Aggregate IRS-reflected received power:
///
///   P_t G_t G_r G M^2 N^2 d_x d_y lambda^2 cos(theta_t) cos(theta_r) A^2
///   --------------------------------------------------------------------
///                       64 pi^3 (d1 d2)^2
///
/// with G from scattering_gain() and lambda taken from `env`.
double received_power_irs(const IrsLink& link, const RadioEnvironment& env);

/// Uplink rate of the direct link at its configured bandwidth.
double uplink_rate_direct(const DirectLink& link, const RadioEnvironment& env);

/// Uplink rate of the IRS-assisted link at its configured bandwidth.
double uplink_rate_irs(const IrsLink& link, const RadioEnvironment& env);

/// Seconds to process `task` on the UE: bits x cycles/bit / free frequency.
double local_latency(const ComputeTask& task, const Processor& cpu);

/// Completion time of a task offloaded over an uplink of `uplink_rate_bps`.
OffloadLatency offload_latency(const ComputeTask& task, double uplink_rate_bps, const Processor& mec);

/// Smallest bandwidth at which the offloaded task meets `task.deadline_s`.
/// Throws InfeasibleError when MEC processing alone uses up the deadline.
double min_bandwidth_for_deadline(const ComputeTask& task, double snr, const Processor& mec);

/// Largest whole number of bytes the UE can process within `deadline_s`.
std::int64_t max_local_data_for_deadline(const Processor& cpu, double cycles_per_bit, double deadline_s);

/// Largest whole number of bytes that can be offloaded and processed within
/// `deadline_s` over an uplink of `uplink_rate_bps`.
std::int64_t max_offload_data_for_deadline(double uplink_rate_bps, const Processor& mec,
                                           double cycles_per_bit, double deadline_s);

/// Interference power N at which the direct link's throughput equals
/// `observed_rate_bps`. The link's fading coefficient is used as given.
double calibrate_interference(const DirectLink& link, double path_loss_exponent,
                              double observed_rate_bps);

}  // namespace irsmec
