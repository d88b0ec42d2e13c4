#include "d2d/topology.hpp"

#include <cmath>
#include <numbers>

namespace d2d {

void SimConfig::validate() const {
    if (!(R > 0.0)) throw ConfigError("R", "must be > 0");
    if (!(r > 0.0) || !(r < R)) throw ConfigError("r", "requires 0 < r < R");
    if (n_channels < 1) throw ConfigError("n_channels", "must be >= 1");
    if (n_relays < 0) throw ConfigError("n_relays", "must be >= 0");
    if (cells != 1 && cells != 7) throw ConfigError("cells", "must be 1 or 7");
    if (trials < 1) throw ConfigError("trials", "must be >= 1");
    if (threads < 0) throw ConfigError("threads", "must be >= 0");
    try {
        radio.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError("radio", e.what());
    }
}

Topology sample_topology(const SimConfig& cfg, Rng& rng) {
    cfg.validate();
    Topology topo;
    topo.cells = cfg.cells;
    topo.n_channels = cfg.n_channels;

    topo.bs_positions.push_back(Point2D{0.0, 0.0});
    if (cfg.cells == 7) {
        // Six tangent cells at distance 2R, angles k*60 degrees.
        for (int k = 0; k < 6; ++k) {
            const double ang = k * std::numbers::pi / 3.0;
            topo.bs_positions.push_back(
                Point2D{2.0 * cfg.R * std::cos(ang), 2.0 * cfg.R * std::sin(ang)});
        }
    }

    topo.mu_positions.reserve(static_cast<std::size_t>(cfg.cells) * cfg.n_channels);
    for (int cell = 0; cell < cfg.cells; ++cell) {
        for (int ch = 0; ch < cfg.n_channels; ++ch) {
            topo.mu_positions.push_back(sample_uniform_disc(topo.bs_positions[cell], cfg.R, rng));
        }
    }

    // Cluster center uniform in disc R-r keeps the whole cluster in the center cell.
    topo.cluster_center = sample_uniform_disc(Point2D{0.0, 0.0}, cfg.R - cfg.r, rng);
    const int nodes = cfg.n_d2d_nodes();
    topo.d2d_positions.reserve(nodes);
    for (int i = 0; i < nodes; ++i) {
        topo.d2d_positions.push_back(sample_uniform_disc(topo.cluster_center, cfg.r, rng));
    }
    return topo;
}

ChannelDraw sample_channels(const Topology& topo, const SimConfig& cfg, Rng& rng) {
    ChannelDraw draw;
    draw.cells = topo.cells;
    draw.n_channels = topo.n_channels;
    draw.n_nodes = static_cast<int>(topo.d2d_positions.size());

    const double ups = cfg.radio.upsilon;
    const std::size_t cc = static_cast<std::size_t>(draw.cells) * draw.n_channels;
    draw.mu_own_bs.resize(cc);
    draw.mu_center_bs.resize(cc);
    draw.mu_node.resize(cc * draw.n_nodes);
    draw.node_bs.resize(static_cast<std::size_t>(draw.n_channels) * draw.n_nodes);
    draw.node_node.resize(static_cast<std::size_t>(draw.n_channels) * draw.n_nodes * draw.n_nodes,
                          0.0);

    for (int ch = 0; ch < draw.n_channels; ++ch) {
        for (int cell = 0; cell < draw.cells; ++cell) {
            const std::size_t k = static_cast<std::size_t>(cell) * draw.n_channels + ch;
            draw.mu_own_bs[k] = sample_fading(ups, rng);
            // The center cell's MU-to-center-BS link IS its own-BS link.
            draw.mu_center_bs[k] = (cell == 0) ? draw.mu_own_bs[k] : sample_fading(ups, rng);
            for (int node = 0; node < draw.n_nodes; ++node) {
                draw.mu_node[k * draw.n_nodes + node] = sample_fading(ups, rng);
            }
        }
        for (int node = 0; node < draw.n_nodes; ++node) {
            draw.node_bs[static_cast<std::size_t>(ch) * draw.n_nodes + node] =
                sample_fading(ups, rng);
        }
        for (int i = 0; i < draw.n_nodes; ++i) {
            for (int j = i + 1; j < draw.n_nodes; ++j) {
                const double h = sample_fading(ups, rng);
                const std::size_t base = static_cast<std::size_t>(ch) * draw.n_nodes * draw.n_nodes;
                draw.node_node[base + static_cast<std::size_t>(i) * draw.n_nodes + j] = h;
                draw.node_node[base + static_cast<std::size_t>(j) * draw.n_nodes + i] = h;
            }
        }
    }
    return draw;
}

double macro_tx_power(const Topology& topo, const ChannelDraw& draw, const SimConfig& cfg,
                      int cell, int channel) {
    const double d = distance(topo.mu(cell, channel), topo.bs_positions[cell]);
    return macro_min_power(d, draw.h_mu_own_bs(cell, channel), cfg.radio);
}

double interference_at(const Topology& topo, const ChannelDraw& draw, const SimConfig& cfg,
                       int node, int channel) {
    double sum = 0.0;
    const Point2D& at = topo.d2d_positions[node];
    for (int cell = 0; cell < topo.cells; ++cell) {
        const double p = macro_tx_power(topo, draw, cfg, cell, channel);
        const double d = distance(topo.mu(cell, channel), at);
        sum += p * std::pow(d, -cfg.radio.alpha) * draw.h_mu_node(cell, channel, node);
    }
    return sum;
}

} // namespace d2d
