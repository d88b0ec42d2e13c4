#include "d2d/jsonio.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace d2d {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::string& where,
                    std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* a : allowed) {
            if (key == a) { ok = true; break; }
        }
        if (!ok) throw ConfigError(where, "unknown field '" + key + "'");
    }
}

template <typename T>
void read_field(const json& j, const char* key, T& out) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(key, e.what());
    }
}

EstimateMode parse_mode(const std::string& s) {
    if (s == "statistical") return EstimateMode::kStatistical;
    if (s == "perfect") return EstimateMode::kPerfectInversion;
    if (s == "truncated") return EstimateMode::kTruncatedInversion;
    throw ConfigError("mode", "must be statistical, perfect, or truncated");
}

RadioParams radio_from_json(const json& j) {
    reject_unknown(j, "radio",
                   {"alpha", "sigma2_dbm", "beta_b_db", "beta_d_db", "kappa_db", "upsilon"});
    RadioParams p;
    read_field(j, "alpha", p.alpha);
    read_field(j, "upsilon", p.upsilon);
    double v;
    if (j.contains("sigma2_dbm")) { read_field(j, "sigma2_dbm", v); p.sigma2 = dbm_to_watts(v); }
    if (j.contains("beta_b_db")) { read_field(j, "beta_b_db", v); p.beta_b = db_to_linear(v); }
    if (j.contains("beta_d_db")) { read_field(j, "beta_d_db", v); p.beta_d = db_to_linear(v); }
    if (j.contains("kappa_db")) { read_field(j, "kappa_db", v); p.kappa = db_to_linear(v); }
    return p;
}

SimConfig sim_config_from_json(const json& j) {
    reject_unknown(j, "base",
                   {"R", "r", "n_channels", "n_relays", "cells", "radio", "mode", "trials",
                    "seed", "ni_enabled", "bs_cross_cell_interference", "channel_order",
                    "threads"});
    SimConfig cfg;
    read_field(j, "R", cfg.R);
    read_field(j, "r", cfg.r);
    read_field(j, "n_channels", cfg.n_channels);
    read_field(j, "n_relays", cfg.n_relays);
    read_field(j, "cells", cfg.cells);
    if (j.contains("radio")) cfg.radio = radio_from_json(j.at("radio"));
    if (j.contains("mode")) {
        std::string m;
        read_field(j, "mode", m);
        cfg.mode = parse_mode(m);
    }
    read_field(j, "trials", cfg.trials);
    read_field(j, "seed", cfg.seed);
    read_field(j, "ni_enabled", cfg.ni_enabled);
    read_field(j, "bs_cross_cell_interference", cfg.bs_cross_cell_interference);
    if (j.contains("channel_order")) {
        std::string o;
        read_field(j, "channel_order", o);
        if (o == "sorted") {
            cfg.channel_order = ChannelOrder::kSortedByInterference;
        } else if (o == "fixed") {
            cfg.channel_order = ChannelOrder::kFixed;
        } else {
            throw ConfigError("channel_order", "must be 'sorted' or 'fixed'");
        }
    }
    read_field(j, "threads", cfg.threads);
    cfg.validate();
    return cfg;
}

json parse_or_throw(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ConfigError("json", "malformed JSON document");
    return j;
}

} // namespace

SimConfig sim_config_from_json_text(const std::string& text) {
    return sim_config_from_json(parse_or_throw(text));
}

SweepSpec sweep_spec_from_json_text(const std::string& text) {
    const json j = parse_or_throw(text);
    reject_unknown(j, "spec",
                   {"base", "axis", "axis_values", "series", "series_values", "metrics",
                    "mc_samples", "out_prefix", "record_timings"});
    SweepSpec spec;
    if (j.contains("base")) spec.base = sim_config_from_json(j.at("base"));
    read_field(j, "axis", spec.axis);
    read_field(j, "axis_values", spec.axis_values);
    read_field(j, "series", spec.series);
    read_field(j, "series_values", spec.series_values);
    read_field(j, "metrics", spec.metrics);
    read_field(j, "mc_samples", spec.mc_samples);
    read_field(j, "out_prefix", spec.out_prefix);
    read_field(j, "record_timings", spec.record_timings);
    spec.validate();
    return spec;
}

SweepSpec load_sweep_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("spec", "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return sweep_spec_from_json_text(buf.str());
}

void dump_topologies_jsonl(const SimConfig& cfg, long count, std::ostream& os) {
    cfg.validate();
    for (long t = 0; t < count; ++t) {
        Rng rng = substream(cfg.seed, StreamTag::kDiscovery, static_cast<std::uint64_t>(t));
        const Topology topo = sample_topology(cfg, rng);
        const ChannelDraw draw = sample_channels(topo, cfg, rng);

        json j;
        j["trial"] = t;
        j["cells"] = topo.cells;
        j["n_channels"] = topo.n_channels;
        auto pt = [](const Point2D& p) { return json::array({p.x, p.y}); };
        json bs = json::array();
        for (const Point2D& p : topo.bs_positions) bs.push_back(pt(p));
        j["bs"] = std::move(bs);
        j["cluster_center"] = pt(topo.cluster_center);
        json mu = json::array();
        for (const Point2D& p : topo.mu_positions) mu.push_back(pt(p));
        j["mu"] = std::move(mu);
        json nodes = json::array();
        for (const Point2D& p : topo.d2d_positions) nodes.push_back(pt(p));
        j["d2d"] = std::move(nodes);
        j["gains"] = {{"mu_own_bs", draw.mu_own_bs},
                      {"mu_center_bs", draw.mu_center_bs},
                      {"mu_node", draw.mu_node},
                      {"node_bs", draw.node_bs},
                      {"node_node", draw.node_node}};
        os << j.dump() << '\n';
    }
}

} // namespace d2d
