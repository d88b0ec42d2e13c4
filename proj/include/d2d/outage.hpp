#pragma once

#include "d2d/discovery.hpp"
#include "d2d/topology.hpp"

namespace d2d {

enum class OutageMethod { kAnalytical, kSimulated };

struct OutageEstimate {
    double p_out = 0.0;
    double std_err = 0.0;
    long samples = 0;
    OutageMethod method = OutageMethod::kAnalytical;
};

// The nine random variables the single-channel outage integral averages over.
struct NineVarSample {
    double h_mb, h_md, h_sd;                    // fading gains
    double d_cb, d_sc, d_sb, d_mb, d_cm, d_md;  // distances, m
};

// Draws the nine variables by sampling positions (cluster center, source,
// destination, macro user) and computing distances: exactly the joint law the
// printed pdf chain approximates, with no exposure to pdf misprints.
NineVarSample sample_nine_vars(const DistanceParams& p, double upsilon, Rng& rng);

// Eq.-10 radius of the source's coverage region: the destination must lie
// within d_max of the source for the link to clear beta_d.
double compute_d_max(const NineVarSample& s, EstimateMode mode, const RadioParams& p);

// Monte Carlo evaluation of the single-channel outage integral:
// 1 - E[A_INT(d_max, r, d_SC) / (pi r^2)], single-cell model.
OutageEstimate analytical_outage_per_channel(const SimConfig& cfg, EstimateMode mode,
                                             long mc_samples);

// Eq. 9: outage on all of N_C iid channels.
double multi_channel_outage(double p_single, int n_channels);

// Direct simulation: fraction of trials in which no channel carries the
// source-destination link. Every (trial, channel) pair is an independent
// realization, matching the independence behind Eq. 9; honors cfg.cells.
OutageEstimate simulate_d2d_outage(const SimConfig& cfg, EstimateMode mode);

// Macro-user outage among all (trial, channel) pairs when the D2D pair
// transmits on one selected working channel per trial. With assume_true_h_sb
// the D2D power control sees the true source-BS gain (diagnostic).
OutageEstimate simulate_macro_outage(const SimConfig& cfg, EstimateMode mode,
                                     bool assume_true_h_sb = false);

// Fractional power saved by the multi-hop route relative to relaying through
// the BS (uplink S->BS plus downlink BS->D at the Eq.-2 budget).
double power_savings(const Route& route, const Topology& topo, const SimConfig& cfg);

// Eq. 8.
double t_save(double t_plain, double t_ni);

} // namespace d2d
