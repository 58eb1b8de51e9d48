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

// Figure datasets (task completion time, uplink throughput surfaces) and the
// headline comparison of IRS-assisted against direct uplink, written as CSV.

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "irsmec/scenario.hpp"

namespace irsmec {

inline constexpr std::array<int, 8> kFigureIds = {2, 3, 4, 5, 6, 7, 8, 9};

/// Values quoted alongside the figures, used as comparison anchors.
namespace anchor {
inline constexpr double kSeparationM = 200.0;
inline constexpr std::array<double, 3> kBandwidthsHz = {1e6, 5e6, 10e6};
inline constexpr std::array<double, 3> kDirectRatesBps = {2.001e6, 10.01e6, 20.01e6};
inline constexpr std::array<double, 3> kIrsRatesBps = {10.53e6, 52.63e6, 105.3e6};
}  // namespace anchor

struct FigureDataset {
    int figure_id = 0;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::string fingerprint;
    std::vector<std::string> meta;  // "key=value", written as comment lines

    std::string file_name() const { return "fig" + std::to_string(figure_id) + ".csv"; }

    /// Comment lines (`# key=value`), the header row, then one line per row.
    std::string to_csv() const;
};

bool is_figure_id(int id);

/// Exact header of figN.csv. Throws DomainError for ids outside 2..9.
std::vector<std::string> figure_columns(int figure_id);

/// Data size (bytes) held fixed in the latency-vs-bandwidth figures 3, 4, 5.
double bandwidth_figure_data_bytes(int figure_id);

FigureDataset run_figure(int figure_id, const Scenario& scenario);

struct HeadlineMetric {
    std::string metric;
    double model_value = 0.0;
    double reference_value = 0.0;
};

struct HeadlineReport {
    GainInterpretation gain_interpretation = GainInterpretation::db;
    std::string fingerprint;
    std::vector<HeadlineMetric> metrics;

    /// Throws DomainError if `name` is absent.
    const HeadlineMetric& at(std::string_view name) const;
    std::string to_csv() const;
};

/// Model values for every quoted result, evaluated at the anchor separation.
HeadlineReport headline_report(const Scenario& scenario);

/// Smallest bandwidth on the scenario's bandwidth grid at which offloading
/// `data_bytes` meets the deadline; NaN if no grid point does.
double grid_min_bandwidth(const Scenario& scenario, double data_bytes, bool irs);

struct GainFit {
    GainInterpretation best = GainInterpretation::db;
    double max_rel_error_db = 0.0;
    double max_rel_error_linear = 0.0;
};

/// Which gain interpretation brings the IRS throughput at the anchor
/// separation closest to the quoted IRS rates (smallest worst-case error).
GainFit fit_gain_interpretation(const Scenario& scenario);

}  // namespace irsmec
