#pragma once

#include <optional>
#include <vector>

#include "d2d/topology.hpp"

namespace d2d {

// One forwarding entry in a discovery packet: the node's address, the transmit
// power it used, and the interference power it measured on the channel.
struct HopRecord {
    int node = -1;
    double tx_power = 0.0;
    double interference = 0.0;
};

struct DiscoveryPacket {
    int source = 0;
    int destination = 1;
    std::vector<HopRecord> hops; // first entry is the source
};

struct Route {
    std::vector<int> nodes;                 // S ... D, length >= 2, loop-free
    std::vector<double> per_hop_tx_power;   // size nodes.size() - 1
};

struct DiscoveryResult {
    std::optional<Route> route;
    long tx_count = 0;             // discovery broadcasts over all attempted channels
    long tx_count_final_channel = 0; // broadcasts on the last channel attempted
    int channel = -1;              // channel the route uses, -1 on failure
};

// Eq.-6 inversion: the combined pathloss-fading gain d^-alpha * h a receiver
// can compute from its measured SINR, measured interference, and the transmit
// power carried in the packet.
double derive_link_gain(double gamma_j, double interference_j, double sigma2, double p_tx);

// Eq.-7: minimum power node j must spend so its reply reaches the source with
// SINR beta_d under the source-side interference carried in the packet.
double min_reply_power(double link_gain, double interference_s, double sigma2, double beta_d);

// A hop is usable iff the forward packet was decodable and the receiver's own
// allowed power covers the reply.
bool two_way_feasible(double forward_sinr, double own_tx_power, double reply_min, double beta_d);

// Flood the given channel breadth-first from the source. Every accepting node
// rebroadcasts exactly once; the first packet reaching the destination defines
// the route, which must validate as two-way end to end. With cfg.ni_enabled a
// node accepts a packet only if the two-way check against its upstream passes;
// a failed check leaves it eligible for copies from other upstreams.
DiscoveryResult run_discovery(const Topology& topo, const ChannelDraw& draw, int channel,
                              const SimConfig& cfg);

// Try channels (ascending measured interference at the source by default)
// until a route is found; transmission counts accumulate across attempts.
DiscoveryResult discover_over_channels(const Topology& topo, const ChannelDraw& draw,
                                       const SimConfig& cfg);

} // namespace d2d
