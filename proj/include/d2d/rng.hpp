#pragma once

#include <cstdint>
#include <cmath>
#include <random>

namespace d2d {

// Deterministic random stream. Substreams are derived from (seed, tag, index)
// so trial-level parallelism reproduces the serial results bit for bit.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform on the open interval (0, 1); never returns 0 or 1.
    double uniform01() {
        return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Exponential with the given mean; strictly positive.
    double exponential(double mean) { return -mean * std::log(uniform01()); }

private:
    std::mt19937_64 gen_;
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}
} // namespace detail

// Stream tags keep the substream spaces of independent consumers disjoint.
enum class StreamTag : std::uint64_t {
    kTopology = 1,
    kChannels = 2,
    kAnalyticalOutage = 3,
    kSimulatedOutage = 4,
    kMacroOutage = 5,
    kDiscovery = 6,
    kTest = 99,
};

inline Rng substream(std::uint64_t seed, StreamTag tag, std::uint64_t index) {
    std::uint64_t s = seed;
    detail::splitmix64(s);
    s ^= static_cast<std::uint64_t>(tag) * 0xd1342543de82ef95ull;
    detail::splitmix64(s);
    s ^= index;
    return Rng(detail::splitmix64(s));
}

} // namespace d2d
