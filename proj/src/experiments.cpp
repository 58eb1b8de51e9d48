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

#include "irsmec/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "irsmec/errors.hpp"
#include "irsmec/format.hpp"

namespace irsmec {

namespace {

std::string join_csv(const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        line += (i ? "," : "") + cells[i];
    }
    return line;
}

double offload_total(const Scenario& s, double data_bytes, double rate_bps) {
    return offload_latency(s.task(data_bytes), rate_bps, s.mec).total_s();
}

Scenario at_anchor(const Scenario& scenario) {
    Scenario s = scenario;
    set_sweep_variable(s, SweepVariable::separation_m, anchor::kSeparationM);
    return s;
}

std::string mbps_label(double hz) { return format_number(hz / 1e6) + "mhz"; }

}  // namespace

std::string FigureDataset::to_csv() const {
    std::ostringstream out;
    out << "# scenario_fingerprint=" << fingerprint << '\n';
    for (const auto& m : meta) {
        out << "# " << m << '\n';
    }
    out << join_csv(columns) << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << format_number(row[i]);
        }
        out << '\n';
    }
    return out.str();
}

bool is_figure_id(int id) { return std::find(kFigureIds.begin(), kFigureIds.end(), id) != kFigureIds.end(); }

std::vector<std::string> figure_columns(int figure_id) {
    switch (figure_id) {
        case 2: return {"data_bytes", "cpu_hz", "latency_s", "deadline_s"};
        case 3:
        case 4:
        case 5: return {"bandwidth_hz", "latency_noirs_s", "latency_irs_s", "deadline_s"};
        case 6:
        case 8: return {"bandwidth_hz", "separation_m", "throughput_bps"};
        case 7:
        case 9: return {"bandwidth_hz", "data_bytes", "latency_s", "deadline_s"};
        default: break;
    }
    throw DomainError("figure id must be in 2..9, got " + std::to_string(figure_id));
}

double bandwidth_figure_data_bytes(int figure_id) {
    switch (figure_id) {
        case 3: return 6000.0;
        case 4: return 17000.0;
        case 5: return 20000.0;
        default: break;
    }
    throw DomainError("figure " + std::to_string(figure_id) + " is not a latency-vs-bandwidth figure");
}

FigureDataset run_figure(int figure_id, const Scenario& scenario) {
    FigureDataset ds;
    ds.figure_id = figure_id;
    ds.columns = figure_columns(figure_id);
    ds.fingerprint = fingerprint(scenario);
    ds.meta.push_back("figure=" + std::to_string(figure_id));

    const double deadline = scenario.deadline_s;
    const auto bandwidths = scenario.bandwidth_grid.values();

    switch (figure_id) {
        case 2:
            ds.meta.push_back("series=cpu_hz");
            for (double d : scenario.data_grid.values()) {
                for (const auto& cpu : scenario.ue_cpus) {
                    ds.rows.push_back({d, cpu.total_hz, local_latency(scenario.task(d), cpu), deadline});
                }
            }
            break;
        case 3:
        case 4:
        case 5: {
            const double d = bandwidth_figure_data_bytes(figure_id);
            ds.meta.push_back("data_bytes=" + format_number(d));
            ds.meta.push_back("gain_interpretation=" + std::string(to_string(scenario.gain_interpretation)));
            for (double b : bandwidths) {
                Scenario s = scenario;
                set_sweep_variable(s, SweepVariable::bandwidth_hz, b);
                const double direct = offload_total(s, d, uplink_rate_direct(s.direct, s.environment));
                const double irs = offload_total(s, d, uplink_rate_irs(s.irs, s.environment));
                ds.rows.push_back({b, direct, irs, deadline});
            }
            break;
        }
        case 6:
        case 8: {
            const bool irs = figure_id == 8;
            ds.meta.push_back(irs ? "separation_split=d1=d2=separation/2" : "separation=direct_distance");
            if (irs) {
                ds.meta.push_back("gain_interpretation=" + std::string(to_string(scenario.gain_interpretation)));
            }
            const auto separations = scenario.separation_grid.values();
            for (double b : bandwidths) {
                for (double sep : separations) {
                    Scenario s = scenario;
                    set_sweep_variable(s, SweepVariable::bandwidth_hz, b);
                    set_sweep_variable(s, SweepVariable::separation_m, sep);
                    const double rate =
                        irs ? uplink_rate_irs(s.irs, s.environment) : uplink_rate_direct(s.direct, s.environment);
                    ds.rows.push_back({b, sep, rate});
                }
            }
            break;
        }
        case 7:
        case 9: {
            const bool irs = figure_id == 9;
            if (irs) {
                ds.meta.push_back("gain_interpretation=" + std::string(to_string(scenario.gain_interpretation)));
            }
            const auto sizes = scenario.data_grid.values();
            for (double b : bandwidths) {
                Scenario s = scenario;
                set_sweep_variable(s, SweepVariable::bandwidth_hz, b);
                const double rate =
                    irs ? uplink_rate_irs(s.irs, s.environment) : uplink_rate_direct(s.direct, s.environment);
                for (double d : sizes) {
                    ds.rows.push_back({b, d, offload_total(s, d, rate), deadline});
                }
            }
            break;
        }
        default:
            break;
    }
    return ds;
}

const HeadlineMetric& HeadlineReport::at(std::string_view name) const {
    for (const auto& m : metrics) {
        if (m.metric == name) {
            return m;
        }
    }
    throw DomainError("no headline metric named '" + std::string(name) + "'");
}

std::string HeadlineReport::to_csv() const {
    std::ostringstream out;
    out << "# scenario_fingerprint=" << fingerprint << '\n';
    out << "# gain_interpretation=" << to_string(gain_interpretation) << '\n';
    out << "metric,model_value,paper_value\n";
    for (const auto& m : metrics) {
        out << m.metric << ',' << format_number(m.model_value) << ',' << format_number(m.reference_value) << '\n';
    }
    return out.str();
}

double grid_min_bandwidth(const Scenario& scenario, double data_bytes, bool irs) {
    for (double b : scenario.bandwidth_grid.values()) {
        Scenario s = scenario;
        set_sweep_variable(s, SweepVariable::bandwidth_hz, b);
        const double rate = irs ? uplink_rate_irs(s.irs, s.environment) : uplink_rate_direct(s.direct, s.environment);
        if (rate > 0.0 && offload_total(s, data_bytes, rate) <= s.deadline_s) {
            return b;
        }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

HeadlineReport headline_report(const Scenario& scenario) {
    const Scenario s = at_anchor(scenario);
    HeadlineReport report;
    report.gain_interpretation = s.gain_interpretation;
    report.fingerprint = fingerprint(scenario);
    auto& m = report.metrics;

    const double snr_direct = snr(received_power_direct(s.direct, s.environment), s.environment);
    const double snr_irs = snr(received_power_irs(s.irs, s.environment), s.environment);

    for (std::size_t i = 0; i < anchor::kBandwidthsHz.size(); ++i) {
        const double b = anchor::kBandwidthsHz[i];
        m.push_back({"throughput_noirs_" + mbps_label(b) + "_bps", throughput(b, snr_direct),
                     anchor::kDirectRatesBps[i]});
    }
    for (std::size_t i = 0; i < anchor::kBandwidthsHz.size(); ++i) {
        const double b = anchor::kBandwidthsHz[i];
        m.push_back({"throughput_irs_" + mbps_label(b) + "_bps", throughput(b, snr_irs), anchor::kIrsRatesBps[i]});
    }
    m.push_back({"throughput_ratio_irs_vs_noirs", throughput(1.0, snr_irs) / throughput(1.0, snr_direct), 5.0});

    const double big_task = 20000.0;
    const double min_b_direct = min_bandwidth_for_deadline(s.task(big_task), snr_direct, s.mec);
    const double min_b_irs = min_bandwidth_for_deadline(s.task(big_task), snr_irs, s.mec);
    m.push_back({"min_bandwidth_noirs_20000B_hz", min_b_direct, 8e6});
    m.push_back({"min_bandwidth_irs_20000B_hz", min_b_irs, 2e6});
    m.push_back({"min_bandwidth_ratio_continuous", min_b_direct / min_b_irs, 4.0});

    const double grid_direct = grid_min_bandwidth(s, big_task, false);
    const double grid_irs = grid_min_bandwidth(s, big_task, true);
    m.push_back({"grid_bandwidth_noirs_20000B_hz", grid_direct, 8e6});
    m.push_back({"grid_bandwidth_irs_20000B_hz", grid_irs, 2e6});
    m.push_back({"bandwidth_requirement_ratio", grid_direct / grid_irs, 4.0});

    // Quoted as "reducing 40%": the IRS transmit power expressed as a
    // fraction of the direct-link power (2 W / 5 W).
    m.push_back({"power_reduction", s.irs.tx_power_w / s.direct.tx_power_w, 0.40});

    const auto quoted_local = [](double hz) {
        if (hz == 2e9) return 7500.0;
        if (hz == 3e9) return 12000.0;
        if (hz == 4e9) return 16000.0;
        return std::numeric_limits<double>::quiet_NaN();
    };
    for (const auto& cpu : s.ue_cpus) {
        m.push_back({"max_local_bytes_" + format_number(cpu.total_hz / 1e9) + "ghz",
                     static_cast<double>(max_local_data_for_deadline(cpu, s.cycles_per_bit, s.deadline_s)),
                     quoted_local(cpu.total_hz)});
    }
    m.push_back({"max_offload_bytes_noirs_1mhz",
                 static_cast<double>(max_offload_data_for_deadline(throughput(1e6, snr_direct), s.mec, s.cycles_per_bit,
                                                                   s.deadline_s)),
                 6000.0});
    m.push_back({"max_offload_bytes_irs_1mhz",
                 static_cast<double>(
                     max_offload_data_for_deadline(throughput(1e6, snr_irs), s.mec, s.cycles_per_bit, s.deadline_s)),
                 17000.0});
    return report;
}

GainFit fit_gain_interpretation(const Scenario& scenario) {
    const auto worst_error = [&](GainInterpretation gi) {
        const Scenario s = at_anchor(with_gain_interpretation(scenario, gi));
        const double snr_irs = snr(received_power_irs(s.irs, s.environment), s.environment);
        double worst = 0.0;
        for (std::size_t i = 0; i < anchor::kBandwidthsHz.size(); ++i) {
            const double model = throughput(anchor::kBandwidthsHz[i], snr_irs);
            const double quoted = anchor::kIrsRatesBps[i];
            worst = std::max(worst, std::abs(model - quoted) / quoted);
        }
        return worst;
    };
    GainFit fit;
    fit.max_rel_error_db = worst_error(GainInterpretation::db);
    fit.max_rel_error_linear = worst_error(GainInterpretation::linear);
    fit.best = fit.max_rel_error_linear < fit.max_rel_error_db ? GainInterpretation::linear : GainInterpretation::db;
    return fit;
}

}  // namespace irsmec
