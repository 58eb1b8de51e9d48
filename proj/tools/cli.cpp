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

#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "irsmec/core_model.hpp"
#include "irsmec/errors.hpp"
#include "irsmec/experiments.hpp"
#include "irsmec/fading.hpp"
#include "irsmec/format.hpp"
#include "irsmec/scenario.hpp"

namespace irsmec::cli {

namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string one_line(std::string text) {
    for (auto& c : text) {
        if (c == '\n' || c == '\r') {
            c = ' ';
        }
    }
    return text;
}

// Ordered key/value output, printed as `key = value` lines or one JSON object.
class Record {
public:
    void add(const std::string& key, double v) { items_.emplace_back(key, v); }
    void add(const std::string& key, const std::string& v) { items_.emplace_back(key, v); }
    void add(const std::string& key, const char* v) { items_.emplace_back(key, std::string(v)); }
    void add(const std::string& key, bool v) { items_.emplace_back(key, v); }

    void print(std::ostream& out, bool json) const {
        if (json) {
            nlohmann::ordered_json obj = nlohmann::ordered_json::object();
            for (const auto& [k, v] : items_) {
                obj[k] = v;
            }
            out << obj.dump() << '\n';
            return;
        }
        for (const auto& [k, v] : items_) {
            out << k << " = ";
            if (v.is_number()) {
                out << format_number(v.get<double>());
            } else if (v.is_boolean()) {
                out << (v.get<bool>() ? "true" : "false");
            } else {
                out << v.get<std::string>();
            }
            out << '\n';
        }
    }

private:
    std::vector<std::pair<std::string, nlohmann::ordered_json>> items_;
};

struct Globals {
    std::string config;
    std::string config_format;
    std::vector<std::string> sets;
    bool json = false;
};

Scenario load(const Globals& g) {
    std::string path = g.config;
    if (path.empty()) {
        if (const char* env = std::getenv("IRS_MEC_CONFIG"); env != nullptr) {
            path = env;
        }
    }
    std::string text;
    ConfigFormat format = ConfigFormat::toml;
    if (!path.empty()) {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            throw Error("cannot read config file '" + path + "'");
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
        if (fs::path(path).extension() == ".json") {
            format = ConfigFormat::json;
        }
    }
    if (g.config_format == "json") {
        format = ConfigFormat::json;
    } else if (g.config_format == "toml") {
        format = ConfigFormat::toml;
    }
    return load_scenario(text, format, g.sets);
}

double to_dbm(double watts) { return 10.0 * std::log10(watts * 1e3); }

struct LinkFlags {
    bool irs = false;
    std::optional<double> separation;
    std::optional<double> bandwidth;
    std::optional<double> bandwidth_mhz;
    std::optional<double> tx_power;
    std::optional<double> tx_power_dbm;
};

void add_link_flags(CLI::App* cmd, LinkFlags& f) {
    cmd->add_flag("--irs", f.irs, "Use the IRS-assisted link instead of the direct link");
    cmd->add_option("--separation", f.separation,
                    "UE-BS separation in m (direct distance; IRS path split as d1 = d2 = separation/2)");
    auto* bw = cmd->add_option("--bandwidth", f.bandwidth, "Uplink bandwidth in Hz");
    cmd->add_option("--bandwidth-mhz", f.bandwidth_mhz, "Uplink bandwidth in MHz")->excludes(bw);
    auto* p = cmd->add_option("--tx-power", f.tx_power, "Transmit power of the selected link in W");
    cmd->add_option("--tx-power-dbm", f.tx_power_dbm, "Transmit power of the selected link in dBm")->excludes(p);
}

void apply_link_flags(Scenario& s, const LinkFlags& f) {
    if (f.bandwidth) {
        set_sweep_variable(s, SweepVariable::bandwidth_hz, *f.bandwidth);
    }
    if (f.bandwidth_mhz) {
        set_sweep_variable(s, SweepVariable::bandwidth_hz, *f.bandwidth_mhz * 1e6);
    }
    if (f.separation) {
        set_sweep_variable(s, SweepVariable::separation_m, *f.separation);
    }
    std::optional<double> power = f.tx_power;
    if (f.tx_power_dbm) {
        power = std::pow(10.0, (*f.tx_power_dbm - 30.0) / 10.0);
    }
    if (power) {
        (f.irs ? s.irs.tx_power_w : s.direct.tx_power_w) = *power;
    }
    validate(s);
}

double selected_rate(const Scenario& s, bool irs) {
    return irs ? uplink_rate_irs(s.irs, s.environment) : uplink_rate_direct(s.direct, s.environment);
}

double selected_snr(const Scenario& s, bool irs) {
    const double p = irs ? received_power_irs(s.irs, s.environment) : received_power_direct(s.direct, s.environment);
    return snr(p, s.environment);
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot write '" + path.string() + "'");
    }
    out << content;
    if (!out.flush()) {
        throw Error("write failed for '" + path.string() + "'");
    }
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw Error("cannot create output directory '" + dir.string() + "'" + (ec ? ": " + ec.message() : ""));
    }
}

// --- link ------------------------------------------------------------------

struct LinkCmd {
    LinkFlags link;
    std::size_t mc_samples = 0;
    std::uint64_t seed = 1;
};

void run_link(const Globals& g, const LinkCmd& c, std::ostream& out) {
    Scenario s = load(g);
    apply_link_flags(s, c.link);
    const bool irs = c.link.irs;
    Record r;
    r.add("link", irs ? "irs" : "direct");
    if (irs) {
        r.add("bandwidth_hz", s.irs.bandwidth_hz);
        r.add("d1_m", s.irs.d1_m);
        r.add("d2_m", s.irs.d2_m);
        r.add("tx_power_w", s.irs.tx_power_w);
        r.add("gain_interpretation", std::string(to_string(s.gain_interpretation)));
    } else {
        r.add("bandwidth_hz", s.direct.bandwidth_hz);
        r.add("distance_m", s.direct.distance_m);
        r.add("tx_power_w", s.direct.tx_power_w);
    }
    const double power =
        irs ? received_power_irs(s.irs, s.environment) : received_power_direct(s.direct, s.environment);
    const double ratio = snr(power, s.environment);
    r.add("received_power_w", power);
    r.add("received_power_dbm", to_dbm(power));
    r.add("snr", ratio);
    r.add("snr_db", linear_to_db(ratio));
    r.add("throughput_bps", selected_rate(s, irs));
    if (c.mc_samples > 0) {
        if (irs) {
            throw UsageError("--mc-samples applies to the direct link only");
        }
        const auto est = mean_throughput_mc(s.direct, s.environment, {c.seed, 0}, c.mc_samples);
        r.add("mc_samples", static_cast<double>(est.samples));
        r.add("mc_seed", static_cast<double>(c.seed));
        r.add("mc_mean_throughput_bps", est.mean_bps);
        r.add("mc_half_width_bps", est.half_width_bps);
    }
    r.print(out, g.json);
}

// --- offload ---------------------------------------------------------------

struct OffloadCmd {
    LinkFlags link;
    double data_bytes = 20000.0;
};

void run_offload(const Globals& g, const OffloadCmd& c, std::ostream& out) {
    Scenario s = load(g);
    apply_link_flags(s, c.link);
    const bool irs = c.link.irs;
    const ComputeTask task = s.task(c.data_bytes);
    validate(task);
    const double rate = selected_rate(s, irs);
    const auto lat = offload_latency(task, rate, s.mec);
    Record r;
    r.add("link", irs ? "irs" : "direct");
    r.add("data_bytes", c.data_bytes);
    r.add("bandwidth_hz", irs ? s.irs.bandwidth_hz : s.direct.bandwidth_hz);
    r.add("uplink_rate_bps", rate);
    r.add("transmission_s", lat.transmission_s);
    r.add("processing_s", lat.processing_s);
    r.add("total_s", lat.total_s());
    r.add("deadline_s", s.deadline_s);
    r.add("meets_deadline", lat.total_s() <= s.deadline_s);
    try {
        r.add("min_bandwidth_hz", min_bandwidth_for_deadline(task, selected_snr(s, irs), s.mec));
    } catch (const InfeasibleError&) {
        r.add("min_bandwidth_hz", "infeasible");
    }
    for (const auto& cpu : s.ue_cpus) {
        r.add("local_latency_" + format_number(cpu.total_hz / 1e9) + "ghz_s", local_latency(task, cpu));
    }
    r.print(out, g.json);
}

// --- calibrate -------------------------------------------------------------

struct CalibrateCmd {
    double anchor_rate = 2.001e6;
    double anchor_bandwidth = 1e6;
    double anchor_distance = 200.0;
};

void run_calibrate(const Globals& g, const CalibrateCmd& c, std::ostream& out) {
    Scenario s = load(g);
    DirectLink anchor = s.direct;
    anchor.bandwidth_hz = c.anchor_bandwidth;
    anchor.distance_m = c.anchor_distance;
    validate(anchor);
    const double n = calibrate_interference(anchor, s.environment.path_loss_exponent, c.anchor_rate);
    s.environment.interference_power_w = n;
    const GainFit fit = fit_gain_interpretation(s);

    if (g.json) {
        Record r;
        r.add("interference_power_w", n);
        r.add("gain_interpretation", std::string(to_string(fit.best)));
        r.add("fit_max_rel_error_db", fit.max_rel_error_db);
        r.add("fit_max_rel_error_linear", fit.max_rel_error_linear);
        r.print(out, true);
        return;
    }
    out << "# direct-link anchor: " << format_number(c.anchor_rate) << " b/s at " << format_number(c.anchor_bandwidth)
        << " Hz, " << format_number(c.anchor_distance) << " m\n";
    out << "[radio]\n";
    out << "interference_power_w = " << format_number(n) << "\n\n";
    out << "# IRS anchor fit, worst relative error: db=" << format_number(fit.max_rel_error_db)
        << " linear=" << format_number(fit.max_rel_error_linear) << '\n';
    out << "[irs]\n";
    out << "gain_interpretation = \"" << to_string(fit.best) << "\"\n";
}

// --- figure ----------------------------------------------------------------

struct FigureCmd {
    std::string id;
    std::string out_dir = ".";
};

std::vector<int> parse_figure_ids(const std::string& id) {
    if (id == "all") {
        return {kFigureIds.begin(), kFigureIds.end()};
    }
    int value = 0;
    const auto r = std::from_chars(id.data(), id.data() + id.size(), value);
    if (r.ec != std::errc{} || r.ptr != id.data() + id.size() || !is_figure_id(value)) {
        throw UsageError("--id must be 2..9 or 'all', got '" + id + "'");
    }
    return {value};
}

void run_figure_cmd(const Globals& g, const FigureCmd& c, std::ostream& out) {
    const auto ids = parse_figure_ids(c.id);
    const Scenario s = load(g);
    const fs::path dir(c.out_dir);
    ensure_dir(dir);
    Record r;
    for (int id : ids) {
        const FigureDataset ds = run_figure(id, s);
        const fs::path path = dir / ds.file_name();
        write_file(path, ds.to_csv());
        const std::string key = "fig" + std::to_string(id);
        r.add(key + ".path", path.string());
        r.add(key + ".rows", static_cast<double>(ds.rows.size()));
    }
    r.print(out, g.json);
}

// --- sweep -----------------------------------------------------------------

struct SweepCmd {
    std::string variable;
    double start = 0.0;
    double stop = 0.0;
    double step = 0.0;
    bool irs = false;
    double data_bytes = 20000.0;
    std::vector<std::string> fix;
    std::string out_file;
};

void run_sweep(const Globals& g, const SweepCmd& c, std::ostream& out) {
    SweepSpec spec;
    spec.variable = parse_sweep_variable(c.variable);
    spec.start = c.start;
    spec.stop = c.stop;
    spec.step = c.step;
    spec.overrides = c.fix;
    const Scenario base = load(g);
    const auto points = expand_sweep(spec, base);

    std::ostringstream csv;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    const std::string var(to_string(spec.variable));
    csv << "# scenario_fingerprint=" << fingerprint(base) << '\n';
    csv << "# link=" << (c.irs ? "irs" : "direct") << '\n';
    csv << var << ",throughput_bps,transmission_s,processing_s,latency_s,deadline_s\n";
    for (const auto& p : points) {
        const Scenario& s = p.scenario;
        const double data = spec.variable == SweepVariable::data_bytes ? p.value : c.data_bytes;
        const double rate = selected_rate(s, c.irs);
        const auto lat = offload_latency(s.task(data), rate, s.mec);
        csv << format_number(p.value) << ',' << format_number(rate) << ',' << format_number(lat.transmission_s) << ','
            << format_number(lat.processing_s) << ',' << format_number(lat.total_s()) << ','
            << format_number(s.deadline_s) << '\n';
        rows.push_back({{var, p.value},
                        {"throughput_bps", rate},
                        {"transmission_s", lat.transmission_s},
                        {"processing_s", lat.processing_s},
                        {"latency_s", lat.total_s()},
                        {"deadline_s", s.deadline_s}});
    }
    std::string text = g.json ? nlohmann::ordered_json{{"variable", var}, {"rows", rows}}.dump() + "\n" : csv.str();
    if (c.out_file.empty()) {
        out << text;
    } else {
        write_file(c.out_file, text);
        Record r;
        r.add("path", c.out_file);
        r.add("rows", static_cast<double>(points.size()));
        r.print(out, g.json);
    }
}

// --- headline --------------------------------------------------------------

struct HeadlineCmd {
    std::string gains = "fit";
    std::string out_dir;
};

void run_headline(const Globals& g, const HeadlineCmd& c, std::ostream& out) {
    Scenario s = load(g);
    if (c.gains == "fit") {
        s = with_gain_interpretation(s, fit_gain_interpretation(s).best);
    } else {
        s = with_gain_interpretation(s, parse_gain_interpretation(c.gains));
    }
    const HeadlineReport report = headline_report(s);
    Record r;
    r.add("gain_interpretation", std::string(to_string(report.gain_interpretation)));
    for (const auto& m : report.metrics) {
        r.add(m.metric, m.model_value);
        r.add(m.metric + ".reference", m.reference_value);
    }
    if (!c.out_dir.empty()) {
        ensure_dir(c.out_dir);
        const fs::path path = fs::path(c.out_dir) / "headline.csv";
        write_file(path, report.to_csv());
        r.add("path", path.string());
    }
    r.print(out, g.json);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"IRS-assisted MEC uplink and task-latency simulator"};
    app.name(args.empty() ? "irs-mec" : fs::path(args.front()).filename().string());
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--config", g.config, "Scenario config file (default: $IRS_MEC_CONFIG)");
    app.add_option("--config-format", g.config_format, "Config format; default from the file extension")
        ->check(CLI::IsMember({"toml", "json"}));
    app.add_option("--set", g.sets, "Override a config key, e.g. --set irs.tx_power_w=3 (repeatable)");
    app.add_flag("--json", g.json, "Print a single JSON object instead of key = value lines");

    LinkCmd link;
    auto* link_cmd = app.add_subcommand("link", "Received power, SNR and throughput of one uplink");
    add_link_flags(link_cmd, link.link);
    link_cmd->add_option("--mc-samples", link.mc_samples,
                         "Also estimate mean throughput over this many Rayleigh fading draws (direct link)");
    link_cmd->add_option("--seed", link.seed, "Seed for the fading draws")->capture_default_str();

    OffloadCmd offload;
    auto* offload_cmd = app.add_subcommand("offload", "Offloading latency of one task, plus local latency");
    add_link_flags(offload_cmd, offload.link);
    offload_cmd->add_option("--data-bytes", offload.data_bytes, "Task data size in bytes")->capture_default_str();

    CalibrateCmd calibrate;
    auto* calibrate_cmd =
        app.add_subcommand("calibrate", "Solve for the interference power that reproduces an anchor rate");
    calibrate_cmd->add_option("--anchor-rate", calibrate.anchor_rate, "Observed direct-link rate in b/s")
        ->capture_default_str();
    calibrate_cmd->add_option("--anchor-bandwidth", calibrate.anchor_bandwidth, "Anchor bandwidth in Hz")
        ->capture_default_str();
    calibrate_cmd->add_option("--anchor-distance", calibrate.anchor_distance, "Anchor separation in m")
        ->capture_default_str();

    FigureCmd figure;
    auto* figure_cmd = app.add_subcommand("figure", "Write figure datasets as CSV");
    figure_cmd->add_option("--id", figure.id, "Figure id 2..9 or 'all'")->required();
    figure_cmd->add_option("--out", figure.out_dir, "Output directory")->capture_default_str();

    SweepCmd sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "Throughput and offloading latency over a 1-D grid");
    sweep_cmd->add_option("--variable", sweep.variable, "bandwidth_hz, data_bytes, distance_m or separation_m")
        ->required();
    sweep_cmd->add_option("--start", sweep.start, "First grid value")->required();
    sweep_cmd->add_option("--stop", sweep.stop, "Last grid value (inclusive)")->required();
    sweep_cmd->add_option("--step", sweep.step, "Grid step")->required();
    sweep_cmd->add_flag("--irs", sweep.irs, "Use the IRS-assisted link");
    sweep_cmd->add_option("--data-bytes", sweep.data_bytes, "Task size when data_bytes is not swept")
        ->capture_default_str();
    sweep_cmd->add_option("--fix", sweep.fix, "Fixed override section.key=value for every point (repeatable)");
    sweep_cmd->add_option("--out", sweep.out_file, "Write CSV here instead of standard output");

    HeadlineCmd headline;
    auto* headline_cmd = app.add_subcommand("headline", "Model values for the quoted headline results");
    headline_cmd->add_option("--gains", headline.gains, "Gain interpretation: fit, db or linear")
        ->check(CLI::IsMember({"fit", "db", "linear"}))
        ->capture_default_str();
    headline_cmd->add_option("--out", headline.out_dir, "Also write headline.csv into this directory");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) {
        reversed.pop_back();
    }
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: usage: " << one_line(e.what()) << '\n';
        return kUsageError;
    }

    try {
        if (*link_cmd) {
            run_link(g, link, out);
        } else if (*offload_cmd) {
            run_offload(g, offload, out);
        } else if (*calibrate_cmd) {
            run_calibrate(g, calibrate, out);
        } else if (*figure_cmd) {
            run_figure_cmd(g, figure, out);
        } else if (*sweep_cmd) {
            run_sweep(g, sweep, out);
        } else if (*headline_cmd) {
            run_headline(g, headline, out);
        }
    } catch (const UsageError& e) {
        err << "error: usage: " << one_line(e.what()) << '\n';
        return kUsageError;
    } catch (const ConfigError& e) {
        err << "error: config: " << one_line(e.what()) << '\n';
        return kDomainError;
    } catch (const InfeasibleError& e) {
        err << "error: infeasible: " << one_line(e.what()) << '\n';
        return kDomainError;
    } catch (const Error& e) {
        err << "error: domain: " << one_line(e.what()) << '\n';
        return kDomainError;
    } catch (const std::exception& e) {
        err << "error: internal: " << one_line(e.what()) << '\n';
        return kDomainError;
    }
    return kOk;
}

}  // namespace irsmec::cli
