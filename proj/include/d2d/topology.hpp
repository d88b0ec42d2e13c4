#pragma once

#include <vector>

#include "d2d/config.hpp"
#include "d2d/geometry.hpp"

namespace d2d {

// One sampled network realization. D2D node 0 is the source S, node 1 the
// destination D, nodes 2.. are idle relays. The cluster disc lies entirely
// inside the center cell.
struct Topology {
    int cells = 1;
    int n_channels = 1;
    std::vector<Point2D> bs_positions;  // [0] is the center cell's BS
    std::vector<Point2D> mu_positions;  // cell-major: index = cell * n_channels + channel
    Point2D cluster_center;
    std::vector<Point2D> d2d_positions;

    const Point2D& mu(int cell, int channel) const {
        return mu_positions[static_cast<std::size_t>(cell) * n_channels + channel];
    }
};

// Fading gains for every link one trial can touch, drawn independently per
// channel. D2D<->D2D gains are symmetric (h_ij == h_ji).
struct ChannelDraw {
    int cells = 1;
    int n_channels = 1;
    int n_nodes = 2;
    std::vector<double> mu_own_bs;    // (cell, channel): MU -> its own BS
    std::vector<double> mu_center_bs; // (cell, channel): MU -> center BS; cell 0 mirrors mu_own_bs
    std::vector<double> mu_node;      // (cell, channel, node): MU -> D2D node
    std::vector<double> node_bs;      // (channel, node): D2D node -> center BS
    std::vector<double> node_node;    // (channel, i, j) symmetric, diagonal unused

    double h_mu_own_bs(int cell, int ch) const {
        return mu_own_bs[static_cast<std::size_t>(cell) * n_channels + ch];
    }
    double h_mu_center_bs(int cell, int ch) const {
        return mu_center_bs[static_cast<std::size_t>(cell) * n_channels + ch];
    }
    double h_mu_node(int cell, int ch, int node) const {
        return mu_node[(static_cast<std::size_t>(cell) * n_channels + ch) * n_nodes + node];
    }
    double h_node_bs(int ch, int node) const {
        return node_bs[static_cast<std::size_t>(ch) * n_nodes + node];
    }
    double h_node_node(int ch, int i, int j) const {
        return node_node[(static_cast<std::size_t>(ch) * n_nodes + i) * n_nodes + j];
    }
};

Topology sample_topology(const SimConfig& cfg, Rng& rng);
ChannelDraw sample_channels(const Topology& topo, const SimConfig& cfg, Rng& rng);

// Eq.-2 power of the macro user serving (cell, channel), toward its own BS.
double macro_tx_power(const Topology& topo, const ChannelDraw& draw, const SimConfig& cfg,
                      int cell, int channel);

// Sum macro-user interference measured at a D2D node on one channel,
// all cells included.
double interference_at(const Topology& topo, const ChannelDraw& draw, const SimConfig& cfg,
                       int node, int channel);

} // namespace d2d
