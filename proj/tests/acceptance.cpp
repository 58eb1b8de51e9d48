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

// Acceptance gate: one PASS/FAIL line per primary criterion. Exit status is
// nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "irsmec/core_model.hpp"
#include "irsmec/experiments.hpp"
#include "irsmec/format.hpp"
#include "irsmec/scenario.hpp"
#include "support/properties.hpp"

namespace fs = std::filesystem;
using namespace irsmec;

namespace {

// Tolerances and time budgets.
constexpr double kAnchorRelTol = 1e-3;
constexpr double kLocalRelTol = 0.07;
constexpr double kMinBandwidthRelTol = 0.02;
constexpr double kThroughputRatioRelTol = 0.10;
constexpr double kBandwidthRatioRelTol = 0.15;
constexpr double kIrsTripleRelTol = 0.10;
constexpr double kFastBudgetS = 1.0;
constexpr double kPropertyBudgetS = 30.0;
constexpr std::int64_t kEpsilonBytes = 3;

struct Outcome {
    bool passed = true;
    std::string detail;

    void check(bool ok, const std::string& what) {
        if (!ok) passed = false;
        if (!detail.empty()) detail += "; ";
        detail += what + (ok ? "" : " [FAIL]");
    }
};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::string num(double v) { return format_number(v); }

// Runs the CLI in-process; returns stdout, or throws with stderr on failure.
std::string cli(std::vector<std::string> args) {
    args.insert(args.begin(), "irs-mec");
    std::ostringstream out;
    std::ostringstream err;
    if (const int code = cli::run(args, out, err); code != 0) {
        throw std::runtime_error("irs-mec exited " + std::to_string(code) + ": " + err.str());
    }
    return out.str();
}

// Value of `key = value` in a CLI record.
std::string field(const std::string& record, const std::string& key) {
    std::istringstream in(record);
    std::string line;
    const std::string prefix = key + " = ";
    while (std::getline(in, line)) {
        if (line.rfind(prefix, 0) == 0) return line.substr(prefix.size());
    }
    throw std::runtime_error("no field " + key + " in output");
}

Outcome throughput_anchors() {
    Outcome o;
    const std::string n = field(cli({"calibrate"}), "interference_power_w");
    for (std::size_t i = 0; i < anchor::kBandwidthsHz.size(); ++i) {
        const double b = anchor::kBandwidthsHz[i];
        const double want = anchor::kDirectRatesBps[i];
        const double got = std::stod(field(
            cli({"--set", "radio.interference_power_w=" + n, "link", "--separation", "200", "--bandwidth", num(b)}),
            "throughput_bps"));
        o.check(rel(got, want) <= kAnchorRelTol, num(b / 1e6) + " MHz: " + num(got) + " vs " + num(want));
    }
    return o;
}

Outcome local_thresholds() {
    Outcome o;
    const Scenario s = default_scenario();
    const std::int64_t exact[] = {7500, 11250, 15000};
    const double quoted[] = {7500, 12000, 16000};
    for (int i = 0; i < 3; ++i) {
        const auto got = max_local_data_for_deadline(s.ue_cpus[i], s.cycles_per_bit, s.deadline_s);
        const bool ok = got == exact[i] && (i == 0 ? got == 7500 : rel(static_cast<double>(got), quoted[i]) <= kLocalRelTol);
        o.check(ok, num(s.ue_cpus[i].total_hz / 1e9) + " GHz: " + std::to_string(got) + " B (quoted " +
                        num(quoted[i]) + ", " + num(100.0 * rel(static_cast<double>(got), quoted[i])) + "% off)");
    }
    return o;
}

Outcome offload_points() {
    Outcome o;
    const Scenario s = default_scenario();
    const double direct_rate = anchor::kDirectRatesBps[0];
    const double t6000 = offload_latency(s.task(6000), direct_rate, s.mec).total_s();
    const double t6003 = offload_latency(s.task(6000 + kEpsilonBytes), direct_rate, s.mec).total_s();
    const double t17000 = offload_latency(s.task(17000), anchor::kIrsRatesBps[0], s.mec).total_s();
    o.check(t6000 <= s.deadline_s, "T(6000 B) = " + num(t6000) + " s");
    o.check(t6003 > s.deadline_s, "T(" + std::to_string(6000 + kEpsilonBytes) + " B) = " + num(t6003) + " s");
    o.check(t17000 <= s.deadline_s, "T(17000 B @10.53 Mb/s) = " + num(t17000) + " s");
    const double snr_direct = snr(received_power_direct(s.direct, s.environment), s.environment);
    const double b = min_bandwidth_for_deadline(s.task(20000), snr_direct, s.mec);
    o.check(rel(b, 8e6) <= kMinBandwidthRelTol, "B_min(20000 B) = " + num(b) + " Hz");
    return o;
}

Outcome headline_ratios() {
    Outcome o;
    const Scenario base = default_scenario();
    const auto fit = fit_gain_interpretation(base);
    const auto rep = headline_report(with_gain_interpretation(base, fit.best));
    o.check(true, std::string("fitted gain interpretation = ") + std::string(to_string(fit.best)) +
                      " (worst IRS-rate error db " + num(100 * fit.max_rel_error_db) + "%, linear " +
                      num(100 * fit.max_rel_error_linear) + "%)");
    const double ratio = rep.at("throughput_ratio_irs_vs_noirs").model_value;
    o.check(rel(ratio, 5.0) <= kThroughputRatioRelTol, "throughput ratio " + num(ratio));
    const double bw = rep.at("bandwidth_requirement_ratio").model_value;
    o.check(rel(bw, 4.0) <= kBandwidthRatioRelTol,
            "bandwidth ratio " + num(bw) + " (continuous " + num(rep.at("min_bandwidth_ratio_continuous").model_value) +
                ")");
    const double pr = rep.at("power_reduction").model_value;
    o.check(pr == 0.40, "power_reduction " + num(pr));
    const char* names[] = {"throughput_irs_1mhz_bps", "throughput_irs_5mhz_bps", "throughput_irs_10mhz_bps"};
    for (int i = 0; i < 3; ++i) {
        const double got = rep.at(names[i]).model_value;
        const double want = anchor::kIrsRatesBps[i];
        o.check(rel(got, want) <= kIrsTripleRelTol, "IRS " + num(got / 1e6) + " vs " + num(want / 1e6) + " Mb/s");
    }
    return o;
}

Outcome property_suite() {
    Outcome o;
    int failed = 0;
    const auto results = testing::run_property_suite();
    for (const auto& r : results) {
        if (!r.passed) {
            ++failed;
            o.check(false, r.name + ": " + r.detail);
        }
    }
    o.check(failed == 0, std::to_string(results.size() - failed) + "/" + std::to_string(results.size()) + " properties");
    return o;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome determinism() {
    Outcome o;
    const fs::path root = fs::temp_directory_path() / "irsmec_acceptance_determinism";
    fs::remove_all(root);
    const fs::path a = root / "a";
    const fs::path b = root / "b";
    fs::create_directories(a);
    fs::create_directories(b);
    cli({"figure", "--id", "all", "--out", a.string()});
    cli({"figure", "--id", "all", "--out", b.string()});
    int identical = 0;
    for (int id : kFigureIds) {
        const std::string name = "fig" + std::to_string(id) + ".csv";
        const std::string x = slurp(a / name);
        if (!x.empty() && x == slurp(b / name)) {
            ++identical;
        } else {
            o.check(false, name + " differs or is missing");
        }
    }
    o.check(identical == static_cast<int>(kFigureIds.size()), std::to_string(identical) + "/8 CSVs byte-identical");
    fs::remove_all(root);
    return o;
}

struct Criterion {
    const char* id;
    const char* title;
    double budget_s;
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"A1", "non-IRS throughput anchors", kFastBudgetS, throughput_anchors},
        {"A2", "local-compute thresholds", kFastBudgetS, local_thresholds},
        {"A3", "offload feasibility points", kFastBudgetS, offload_points},
        {"A4", "headline ratios", kFastBudgetS, headline_ratios},
        {"A5", "property suite", kPropertyBudgetS, property_suite},
        {"A6", "determinism", 0.0, determinism},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.check(false, std::string("exception: ") + e.what());
        }
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.budget_s > 0.0) {
            o.check(elapsed < c.budget_s, "runtime " + num(std::round(elapsed * 1e3) / 1e3) + " s < " + num(c.budget_s) + " s");
        }
        if (!o.passed) ++failures;
        std::cout << (o.passed ? "PASS " : "FAIL ") << c.id << ' ' << c.title << ": " << o.detail << '\n';
    }
    std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << '\n';
    return failures == 0 ? 0 : 1;
}
