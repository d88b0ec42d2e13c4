#pragma once

#include <functional>
#include <string>
#include <vector>

#include "d2d/outage.hpp"
#include "d2d/stats.hpp"

namespace d2d {

// Paired NI / no-NI discovery statistics over a batch of trials. Both variants
// run on identical topologies and channel draws, so the per-trial transmission
// comparison is exact rather than statistical.
struct DiscoveryBatch {
    long trials = 0;
    long ni_failures = 0;
    long noni_failures = 0;
    PairStats tx;                 // x = no-NI total tx per trial, y = NI total
    RunningStats tx_final_ni;     // successful-channel tx, NI successes only
    RunningStats tx_final_noni;
    RunningStats hops;            // route length stats over successes
    RunningStats p_save;          // power savings over successes
    long tx_invariant_violations = 0; // trials with tx(NI) > tx(no-NI); must stay 0

    void merge(const DiscoveryBatch& o);
};

using TopologySink = std::function<void(long trial, const Topology&, const ChannelDraw&)>;

// Runs `trials` paired discovery trials. Route-derived statistics (hops,
// power savings) come from the cfg.ni_enabled variant. A topology sink forces
// serial execution.
DiscoveryBatch run_discovery_batch(const SimConfig& cfg, long trials,
                                   const TopologySink* sink = nullptr);

struct SweepRow {
    double axis_value = 0.0;
    double series_value = 0.0;
    std::string metric;
    double value = 0.0;
    double std_err = 0.0;
    long samples = 0;
    double wall_time_s = 0.0;

    friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct SweepSpec {
    SimConfig base;
    std::string axis = "N_D";            // one of N_D, alpha, N_C, r_over_R
    std::vector<double> axis_values;
    std::string series = "none";         // axis name or "none"
    std::vector<double> series_values{0.0};
    std::vector<std::string> metrics;
    long mc_samples = 100000;            // analytical-outage sample count
    std::string out_prefix = "sweep";
    bool record_timings = false;         // timings in rows break byte-reproducibility
    bool verbose = false;                // progress lines on stderr

    void validate() const; // throws ConfigError
};

// Overwrites cfg's parameter named by one of the sweep axes.
void apply_axis_value(SimConfig& cfg, const std::string& axis, double value);

// Known metric names, in canonical order.
const std::vector<std::string>& known_metrics();

std::vector<SweepRow> run_sweep(const SweepSpec& spec);

// RFC-4180-style CSV, header `axis,series,metric,value,std_err,samples,wall_time_s`,
// axis-major row order, doubles printed round-trip exact.
void emit_csv(const std::vector<SweepRow>& rows, const std::string& path);
std::string csv_string(const std::vector<SweepRow>& rows);
std::vector<SweepRow> parse_csv(const std::string& path);
std::vector<SweepRow> parse_csv_string(const std::string& text);

// Figure-recipe presets: fig2, fig3, fig5, fig6, fig7, fig8, fig9, fig10.
SweepSpec make_preset(const std::string& name);
const std::vector<std::string>& preset_names();

} // namespace d2d
