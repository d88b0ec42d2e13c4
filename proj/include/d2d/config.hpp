#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "d2d/radio.hpp"

namespace d2d {

// Invalid user-supplied configuration; carries the offending field name.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& what)
        : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

enum class ChannelOrder {
    kSortedByInterference, // try channels in ascending interference seen at S
    kFixed,                // try channels in index order
};

// One macro user per channel per cell (N_M = N_C).
struct SimConfig {
    double R = 2000.0;       // cell radius, m
    double r = 500.0;        // cluster radius, m
    int n_channels = 30;     // N_C
    int n_relays = 0;        // N_D (idle relays beyond source and destination)
    int cells = 7;           // 1 or 7
    RadioParams radio;
    EstimateMode mode = EstimateMode::kStatistical;
    long trials = 100000;
    std::uint64_t seed = 1;
    bool ni_enabled = true;  // network information in discovery packets
    bool bs_cross_cell_interference = false; // neighbor-cell MU interference at the center BS
    ChannelOrder channel_order = ChannelOrder::kSortedByInterference;
    int threads = 0;         // 0 = hardware concurrency

    int n_d2d_nodes() const { return n_relays + 2; }

    void validate() const; // throws ConfigError naming the bad field
};

} // namespace d2d
