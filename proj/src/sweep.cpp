#include "d2d/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "d2d/parallel.hpp"

namespace d2d {

void DiscoveryBatch::merge(const DiscoveryBatch& o) {
    trials += o.trials;
    ni_failures += o.ni_failures;
    noni_failures += o.noni_failures;
    tx.merge(o.tx);
    tx_final_ni.merge(o.tx_final_ni);
    tx_final_noni.merge(o.tx_final_noni);
    hops.merge(o.hops);
    p_save.merge(o.p_save);
    tx_invariant_violations += o.tx_invariant_violations;
}

namespace {

void run_one_discovery_trial(const SimConfig& cfg, long trial, DiscoveryBatch& agg,
                             const TopologySink* sink) {
    Rng rng = substream(cfg.seed, StreamTag::kDiscovery, static_cast<std::uint64_t>(trial));
    const Topology topo = sample_topology(cfg, rng);
    const ChannelDraw draw = sample_channels(topo, cfg, rng);
    if (sink) (*sink)(trial, topo, draw);

    SimConfig ni_cfg = cfg;
    ni_cfg.ni_enabled = true;
    SimConfig plain_cfg = cfg;
    plain_cfg.ni_enabled = false;
    const DiscoveryResult res_ni = discover_over_channels(topo, draw, ni_cfg);
    const DiscoveryResult res_plain = discover_over_channels(topo, draw, plain_cfg);

    ++agg.trials;
    if (!res_ni.route) ++agg.ni_failures;
    if (!res_plain.route) ++agg.noni_failures;
    agg.tx.add(static_cast<double>(res_plain.tx_count), static_cast<double>(res_ni.tx_count));
    if (res_ni.route) agg.tx_final_ni.add(static_cast<double>(res_ni.tx_count_final_channel));
    if (res_plain.route) {
        agg.tx_final_noni.add(static_cast<double>(res_plain.tx_count_final_channel));
    }
    if (res_ni.tx_count > res_plain.tx_count) ++agg.tx_invariant_violations;

    const DiscoveryResult& sel = cfg.ni_enabled ? res_ni : res_plain;
    if (sel.route) {
        agg.hops.add(static_cast<double>(sel.route->nodes.size()) - 1.0);
        agg.p_save.add(power_savings(*sel.route, topo, cfg));
    }
}

} // namespace

DiscoveryBatch run_discovery_batch(const SimConfig& cfg, long trials, const TopologySink* sink) {
    cfg.validate();
    if (sink) {
        DiscoveryBatch agg;
        for (long t = 0; t < trials; ++t) run_one_discovery_trial(cfg, t, agg, sink);
        return agg;
    }
    constexpr long kChunk = 256;
    const long n_chunks = (trials + kChunk - 1) / kChunk;
    std::vector<DiscoveryBatch> partial(n_chunks);
    parallel_chunks(trials, kChunk, cfg.threads, [&](long c, long begin, long end) {
        for (long t = begin; t < end; ++t) {
            run_one_discovery_trial(cfg, t, partial[c], nullptr);
        }
    });
    DiscoveryBatch agg;
    for (const DiscoveryBatch& b : partial) agg.merge(b);
    return agg;
}

namespace {

const std::vector<std::string> kAxes = {"N_D", "alpha", "N_C", "r_over_R"};

EstimateMode mode_from_suffix(const std::string& name) {
    if (name.ends_with("_statistical")) return EstimateMode::kStatistical;
    if (name.ends_with("_perfect")) return EstimateMode::kPerfectInversion;
    if (name.ends_with("_truncated")) return EstimateMode::kTruncatedInversion;
    throw ConfigError("metrics", "unknown estimate-mode suffix in '" + name + "'");
}

bool is_discovery_metric(const std::string& m) {
    return m == "p_fail_discovery_ni" || m == "p_fail_discovery_noni" || m == "t_save" ||
           m == "t_save_final_channel" || m == "tx_mean_ni" || m == "tx_mean_noni" ||
           m == "p_save_mean" || m == "n_hops_mean";
}

} // namespace

const std::vector<std::string>& known_metrics() {
    static const std::vector<std::string> metrics = {
        "p_fail_discovery_ni",
        "p_fail_discovery_noni",
        "t_save",
        "t_save_final_channel",
        "tx_mean_ni",
        "tx_mean_noni",
        "p_save_mean",
        "n_hops_mean",
        "p_out_d2d_analytical_statistical",
        "p_out_d2d_analytical_perfect",
        "p_out_d2d_analytical_truncated",
        "p_out_d2d_simulated_statistical",
        "p_out_d2d_simulated_perfect",
        "p_out_d2d_simulated_truncated",
        "p_out_macro_statistical",
        "p_out_macro_perfect",
        "p_out_macro_truncated",
    };
    return metrics;
}

void apply_axis_value(SimConfig& cfg, const std::string& axis, double value) {
    if (axis == "N_D") {
        if (value < 0.0 || value != std::floor(value)) {
            throw ConfigError("N_D", "must be a non-negative integer");
        }
        cfg.n_relays = static_cast<int>(value);
    } else if (axis == "alpha") {
        cfg.radio.alpha = value;
    } else if (axis == "N_C") {
        if (value < 1.0 || value != std::floor(value)) {
            throw ConfigError("N_C", "must be a positive integer");
        }
        cfg.n_channels = static_cast<int>(value);
    } else if (axis == "r_over_R") {
        if (!(value > 0.0) || !(value < 1.0)) {
            throw ConfigError("r_over_R", "must lie in (0, 1)");
        }
        cfg.r = value * cfg.R;
    } else {
        throw ConfigError("axis", "unknown parameter '" + axis + "'");
    }
}

void SweepSpec::validate() const {
    base.validate();
    if (std::find(kAxes.begin(), kAxes.end(), axis) == kAxes.end()) {
        throw ConfigError("axis", "must be one of N_D, alpha, N_C, r_over_R");
    }
    if (axis_values.empty()) throw ConfigError("axis_values", "must be non-empty");
    if (series != "none" && std::find(kAxes.begin(), kAxes.end(), series) == kAxes.end()) {
        throw ConfigError("series", "must be an axis name or 'none'");
    }
    if (series_values.empty()) throw ConfigError("series_values", "must be non-empty");
    if (metrics.empty()) throw ConfigError("metrics", "must be non-empty");
    const auto& known = known_metrics();
    for (const std::string& m : metrics) {
        if (std::find(known.begin(), known.end(), m) == known.end()) {
            throw ConfigError("metrics", "unknown metric '" + m + "'");
        }
    }
    if (mc_samples < 1) throw ConfigError("mc_samples", "must be >= 1");
    // Axis/series values must produce valid configs; probe them up front.
    for (double av : axis_values) {
        for (double sv : series_values) {
            SimConfig probe = base;
            apply_axis_value(probe, axis, av);
            if (series != "none") apply_axis_value(probe, series, sv);
            probe.validate();
        }
    }
}

namespace {

double delta_ratio_std_err(double m_plain, double se_plain, double m_ni, double se_ni) {
    if (m_plain <= 0.0) return 0.0;
    const double g_plain = m_ni / (m_plain * m_plain);
    const double g_ni = -1.0 / m_plain;
    return std::sqrt(g_plain * g_plain * se_plain * se_plain + g_ni * g_ni * se_ni * se_ni);
}

SweepRow make_row(double axis_v, double series_v, const std::string& metric, double value,
                  double std_err, long samples) {
    SweepRow row;
    row.axis_value = axis_v;
    row.series_value = series_v;
    row.metric = metric;
    row.value = value;
    row.std_err = std_err;
    row.samples = samples;
    return row;
}

} // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    spec.validate();
    std::vector<SweepRow> rows;

    for (double axis_v : spec.axis_values) {
        for (double series_v : spec.series_values) {
            SimConfig cfg = spec.base;
            apply_axis_value(cfg, spec.axis, axis_v);
            if (spec.series != "none") apply_axis_value(cfg, spec.series, series_v);
            cfg.validate();

            const auto cell_start = std::chrono::steady_clock::now();
            const std::size_t first_row = rows.size();

            const bool wants_discovery =
                std::any_of(spec.metrics.begin(), spec.metrics.end(), is_discovery_metric);
            DiscoveryBatch batch;
            if (wants_discovery) batch = run_discovery_batch(cfg, cfg.trials);

            for (const std::string& metric : spec.metrics) {
                if (metric == "p_fail_discovery_ni") {
                    const double p = static_cast<double>(batch.ni_failures) / batch.trials;
                    rows.push_back(make_row(axis_v, series_v, metric, p,
                                            binomial_std_err(p, batch.trials), batch.trials));
                } else if (metric == "p_fail_discovery_noni") {
                    const double p = static_cast<double>(batch.noni_failures) / batch.trials;
                    rows.push_back(make_row(axis_v, series_v, metric, p,
                                            binomial_std_err(p, batch.trials), batch.trials));
                } else if (metric == "t_save") {
                    rows.push_back(make_row(axis_v, series_v, metric,
                                            t_save(batch.tx.mean_x, batch.tx.mean_y),
                                            ratio_savings_std_err(batch.tx), batch.trials));
                } else if (metric == "t_save_final_channel") {
                    if (batch.tx_final_ni.n > 0 && batch.tx_final_noni.n > 0) {
                        const double v =
                            t_save(batch.tx_final_noni.mean, batch.tx_final_ni.mean);
                        const double se = delta_ratio_std_err(
                            batch.tx_final_noni.mean, batch.tx_final_noni.std_err(),
                            batch.tx_final_ni.mean, batch.tx_final_ni.std_err());
                        rows.push_back(make_row(axis_v, series_v, metric, v, se,
                                                batch.tx_final_ni.n));
                    } else {
                        rows.push_back(make_row(axis_v, series_v, metric, 0.0, 0.0, 0));
                    }
                } else if (metric == "tx_mean_ni") {
                    rows.push_back(make_row(axis_v, series_v, metric, batch.tx.mean_y,
                                            std::sqrt(batch.tx.var_y() / batch.tx.n),
                                            batch.trials));
                } else if (metric == "tx_mean_noni") {
                    rows.push_back(make_row(axis_v, series_v, metric, batch.tx.mean_x,
                                            std::sqrt(batch.tx.var_x() / batch.tx.n),
                                            batch.trials));
                } else if (metric == "p_save_mean") {
                    rows.push_back(make_row(axis_v, series_v, metric, batch.p_save.mean,
                                            batch.p_save.std_err(), batch.p_save.n));
                } else if (metric == "n_hops_mean") {
                    rows.push_back(make_row(axis_v, series_v, metric, batch.hops.mean,
                                            batch.hops.std_err(), batch.hops.n));
                } else if (metric.starts_with("p_out_d2d_analytical_")) {
                    const EstimateMode mode = mode_from_suffix(metric);
                    const OutageEstimate est =
                        analytical_outage_per_channel(cfg, mode, spec.mc_samples);
                    const double p = multi_channel_outage(est.p_out, cfg.n_channels);
                    const double se = cfg.n_channels *
                                      std::pow(est.p_out, cfg.n_channels - 1) * est.std_err;
                    rows.push_back(make_row(axis_v, series_v, metric, p, se, est.samples));
                } else if (metric.starts_with("p_out_d2d_simulated_")) {
                    const OutageEstimate est =
                        simulate_d2d_outage(cfg, mode_from_suffix(metric));
                    rows.push_back(make_row(axis_v, series_v, metric, est.p_out, est.std_err,
                                            est.samples));
                } else if (metric.starts_with("p_out_macro_")) {
                    const OutageEstimate est =
                        simulate_macro_outage(cfg, mode_from_suffix(metric));
                    rows.push_back(make_row(axis_v, series_v, metric, est.p_out, est.std_err,
                                            est.samples));
                }
            }

            const double cell_seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - cell_start)
                    .count();
            if (spec.record_timings) {
                for (std::size_t k = first_row; k < rows.size(); ++k) {
                    rows[k].wall_time_s = cell_seconds;
                }
            }
            if (spec.verbose) {
                std::cerr << "[sweep] " << spec.axis << "=" << axis_v;
                if (spec.series != "none") std::cerr << " " << spec.series << "=" << series_v;
                std::cerr << " done in " << cell_seconds << " s\n";
            }
        }
    }
    return rows;
}

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace

std::string csv_string(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << "axis,series,metric,value,std_err,samples,wall_time_s\n";
    for (const SweepRow& r : rows) {
        os << format_double(r.axis_value) << ',' << format_double(r.series_value) << ','
           << csv_field(r.metric) << ',' << format_double(r.value) << ','
           << format_double(r.std_err) << ',' << r.samples << ','
           << format_double(r.wall_time_s) << '\n';
    }
    return os.str();
}

void emit_csv(const std::vector<SweepRow>& rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("emit_csv: cannot open '" + path + "' for writing");
    out << csv_string(rows);
    if (!out) throw std::runtime_error("emit_csv: write failed for '" + path + "'");
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

} // namespace

std::vector<SweepRow> parse_csv_string(const std::string& text) {
    std::vector<SweepRow> rows;
    std::istringstream is(text);
    std::string line;
    bool header = true;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        const std::vector<std::string> f = split_csv_line(line);
        if (f.size() != 7) throw std::runtime_error("parse_csv: malformed row '" + line + "'");
        SweepRow r;
        r.axis_value = std::strtod(f[0].c_str(), nullptr);
        r.series_value = std::strtod(f[1].c_str(), nullptr);
        r.metric = f[2];
        r.value = std::strtod(f[3].c_str(), nullptr);
        r.std_err = std::strtod(f[4].c_str(), nullptr);
        r.samples = std::strtol(f[5].c_str(), nullptr, 10);
        r.wall_time_s = std::strtod(f[6].c_str(), nullptr);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<SweepRow> parse_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("parse_csv: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv_string(buf.str());
}

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {"fig2", "fig3", "fig5", "fig6",
                                                   "fig7", "fig8", "fig9", "fig10"};
    return names;
}

SweepSpec make_preset(const std::string& name) {
    SweepSpec spec;
    spec.base = SimConfig{}; // Table I defaults
    spec.out_prefix = name;

    const std::vector<double> nd_axis = {0, 2, 5, 10, 20};
    const std::vector<double> alpha_axis = {2.0, 2.5, 3.0, 3.5, 4.0};
    const std::vector<double> alpha_series = {2.0, 3.0, 4.0};
    const std::vector<std::string> d2d_outage_metrics = {
        "p_out_d2d_analytical_statistical", "p_out_d2d_analytical_perfect",
        "p_out_d2d_simulated_statistical", "p_out_d2d_simulated_perfect"};

    if (name == "fig2") {
        spec.axis = "N_D";
        spec.axis_values = nd_axis;
        spec.series = "alpha";
        spec.series_values = alpha_series;
        spec.metrics = {"p_fail_discovery_ni", "p_fail_discovery_noni"};
    } else if (name == "fig3") {
        spec.axis = "N_D";
        spec.axis_values = nd_axis;
        spec.series = "alpha";
        spec.series_values = alpha_series;
        spec.metrics = {"t_save", "t_save_final_channel", "tx_mean_ni", "tx_mean_noni"};
    } else if (name == "fig5") {
        spec.base.cells = 1;
        spec.axis = "alpha";
        spec.axis_values = alpha_axis;
        spec.series = "N_C";
        spec.series_values = {1, 5, 15};
        spec.metrics = d2d_outage_metrics;
    } else if (name == "fig6") {
        spec.base.cells = 1;
        spec.base.n_channels = 15;
        spec.axis = "alpha";
        spec.axis_values = alpha_axis;
        spec.series = "r_over_R";
        spec.series_values = {0.125, 0.25, 0.375, 0.5};
        spec.metrics = d2d_outage_metrics;
    } else if (name == "fig7") {
        spec.base.cells = 1;
        spec.axis = "alpha";
        spec.axis_values = alpha_axis;
        spec.series = "N_C";
        spec.series_values = {1, 5, 15, 30};
        spec.metrics = {"p_out_macro_statistical", "p_out_macro_perfect"};
    } else if (name == "fig8") {
        spec.base.cells = 1;
        spec.base.n_channels = 10;
        spec.axis = "alpha";
        spec.axis_values = alpha_axis;
        spec.series = "none";
        spec.series_values = {0.0};
        spec.metrics = {"p_out_d2d_analytical_statistical", "p_out_d2d_analytical_perfect",
                        "p_out_d2d_analytical_truncated",   "p_out_macro_statistical",
                        "p_out_macro_perfect",              "p_out_macro_truncated"};
    } else if (name == "fig9") {
        spec.axis = "N_D";
        spec.axis_values = nd_axis;
        spec.series = "alpha";
        spec.series_values = alpha_series;
        spec.metrics = {"p_save_mean"};
    } else if (name == "fig10") {
        spec.axis = "N_D";
        spec.axis_values = nd_axis;
        spec.series = "alpha";
        spec.series_values = alpha_series;
        spec.metrics = {"n_hops_mean"};
    } else {
        throw ConfigError("preset", "unknown preset '" + name + "'");
    }
    return spec;
}

} // namespace d2d
