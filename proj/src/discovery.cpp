#include "d2d/discovery.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace d2d {

double derive_link_gain(double gamma_j, double interference_j, double sigma2, double p_tx) {
    return gamma_j * (interference_j + sigma2) / p_tx;
}

double min_reply_power(double link_gain, double interference_s, double sigma2, double beta_d) {
    return (interference_s + sigma2) * beta_d / link_gain;
}

bool two_way_feasible(double forward_sinr, double own_tx_power, double reply_min, double beta_d) {
    return forward_sinr >= beta_d && own_tx_power >= reply_min;
}

namespace {

// Geometry-derived quantities that do not change across channels of one trial.
struct FloodContext {
    int n = 0;
    std::vector<double> pathloss;     // (i, j): d_ij^-alpha
    std::vector<double> p_base;       // d2d_max_power toward the center BS, h_sb_hat = upsilon

    FloodContext(const Topology& topo, const SimConfig& cfg) {
        n = static_cast<int>(topo.d2d_positions.size());
        pathloss.assign(static_cast<std::size_t>(n) * n, 0.0);
        p_base.resize(n);
        for (int i = 0; i < n; ++i) {
            p_base[i] = d2d_max_power(distance(topo.d2d_positions[i], topo.bs_positions[0]),
                                      cfg.radio.upsilon, cfg.radio);
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                pathloss[static_cast<std::size_t>(i) * n + j] =
                    std::pow(distance(topo.d2d_positions[i], topo.d2d_positions[j]),
                             -cfg.radio.alpha);
            }
        }
    }
};

DiscoveryResult flood_channel(const FloodContext& ctx, const Topology& topo,
                              const ChannelDraw& draw, int channel, const SimConfig& cfg) {
    const int n = ctx.n;
    const double sigma2 = cfg.radio.sigma2;
    const double beta_d = cfg.radio.beta_d;
    const double ups = cfg.radio.upsilon;

    std::vector<double> interference(n);
    for (int v = 0; v < n; ++v) {
        interference[v] = interference_at(topo, draw, cfg, v, channel);
    }

    // Power node i spends on the link to j (Eq. 4 with subscripts i, j).
    auto tx_power = [&](int i, int j) {
        return ctx.p_base[i] / gain_estimate(cfg.mode, draw.h_node_node(channel, i, j), ups);
    };

    std::vector<char> accepted(n, 0);
    std::vector<HopRecord> record(n); // the hop entry each accepted node observed upstream
    std::vector<int> parent(n, -1);
    std::deque<int> queue;
    accepted[0] = 1;
    queue.push_back(0);
    long tx_count = 0;
    bool dest_reached = false;

    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        ++tx_count;
        for (int v = 0; v < n; ++v) {
            if (v == u || accepted[v]) continue;
            const double p_uv = tx_power(u, v);
            const double gamma =
                p_uv * ctx.pathloss[static_cast<std::size_t>(u) * n + v] *
                draw.h_node_node(channel, u, v) / (interference[v] + sigma2);
            if (gamma < beta_d) continue; // packet not decodable at v
            if (cfg.ni_enabled) {
                // v recovers the combined gain from the packet fields and checks
                // that its own allowed power covers the reply to u.
                const double link_gain = derive_link_gain(gamma, interference[v], sigma2, p_uv);
                const double reply_min = min_reply_power(link_gain, interference[u], sigma2, beta_d);
                if (!two_way_feasible(gamma, tx_power(v, u), reply_min, beta_d)) {
                    continue; // v stays eligible for copies from other upstreams
                }
            }
            accepted[v] = 1;
            parent[v] = u;
            record[v] = HopRecord{u, p_uv, interference[u]};
            if (v == 1) {
                dest_reached = true; // destination replies; it does not forward
            } else {
                queue.push_back(v);
            }
        }
    }

    DiscoveryResult result;
    result.tx_count = tx_count;
    result.tx_count_final_channel = tx_count;
    result.channel = channel;
    if (!dest_reached) {
        result.channel = -1;
        return result;
    }

    DiscoveryPacket packet;
    packet.source = 0;
    packet.destination = 1;
    std::vector<int> chain;
    for (int v = 1; v != -1; v = parent[v]) chain.push_back(v);
    std::reverse(chain.begin(), chain.end());
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
        packet.hops.push_back(
            HopRecord{chain[k], tx_power(chain[k], chain[k + 1]), interference[chain[k]]});
    }

    Route route;
    route.nodes = chain;
    for (const HopRecord& h : packet.hops) route.per_hop_tx_power.push_back(h.tx_power);

    // End-to-end two-way validation; this is where a no-NI discovery can fail
    // even though a forward path delivered the packet.
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
        const int a = chain[k];
        const int b = chain[k + 1];
        const double p_ab = tx_power(a, b);
        const double gamma =
            p_ab * ctx.pathloss[static_cast<std::size_t>(a) * n + b] *
            draw.h_node_node(channel, a, b) / (interference[b] + sigma2);
        const double link_gain = derive_link_gain(gamma, interference[b], sigma2, p_ab);
        const double reply_min = min_reply_power(link_gain, interference[a], sigma2, beta_d);
        if (!two_way_feasible(gamma, tx_power(b, a), reply_min, beta_d)) {
            result.channel = -1;
            return result;
        }
    }
    result.route = std::move(route);
    return result;
}

} // namespace

DiscoveryResult run_discovery(const Topology& topo, const ChannelDraw& draw, int channel,
                              const SimConfig& cfg) {
    if (topo.d2d_positions.size() < 2) {
        throw std::invalid_argument("run_discovery: topology needs at least 2 D2D nodes");
    }
    FloodContext ctx(topo, cfg);
    return flood_channel(ctx, topo, draw, channel, cfg);
}

DiscoveryResult discover_over_channels(const Topology& topo, const ChannelDraw& draw,
                                       const SimConfig& cfg) {
    if (topo.d2d_positions.size() < 2) {
        throw std::invalid_argument("discover_over_channels: topology needs at least 2 D2D nodes");
    }
    FloodContext ctx(topo, cfg);

    std::vector<int> order(topo.n_channels);
    std::iota(order.begin(), order.end(), 0);
    if (cfg.channel_order == ChannelOrder::kSortedByInterference) {
        std::vector<double> i_s(topo.n_channels);
        for (int ch = 0; ch < topo.n_channels; ++ch) {
            i_s[ch] = interference_at(topo, draw, cfg, 0, ch);
        }
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return i_s[a] < i_s[b]; });
    }

    DiscoveryResult total;
    for (int ch : order) {
        DiscoveryResult res = flood_channel(ctx, topo, draw, ch, cfg);
        total.tx_count += res.tx_count;
        total.tx_count_final_channel = res.tx_count;
        if (res.route) {
            total.route = std::move(res.route);
            total.channel = ch;
            return total;
        }
    }
    total.channel = -1;
    return total;
}

} // namespace d2d
