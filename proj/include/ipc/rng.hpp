#pragma once

#include <cstdint>
#include <cmath>

namespace ipc {

// Splitmix64 stream. Cheap to construct, so we can afford one stream per
// (seed, column, layer) cell; that is what makes window/cap extension a pure
// refinement of the realization.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t state) : state_(state) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0,1)
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // uniform in [a,b)
    double uniform(double a, double b) { return a + (b - a) * next_double(); }

    // Knuth's product method; fine for the small means used here.
    int poisson(double mean) {
        double limit = std::exp(-mean);
        double prod = 1.0;
        int k = -1;
        do {
            ++k;
            prod *= next_double();
        } while (prod > limit);
        return k;
    }

private:
    std::uint64_t state_;
};

inline std::uint64_t mix_u64(std::uint64_t x) {
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ULL;
    x ^= x >> 33;
    return x;
}

// Derive an independent stream for a (seed, column, layer) cell.
inline SplitMix64 substream(std::uint64_t seed, std::int64_t column, std::int64_t layer) {
    std::uint64_t h = mix_u64(seed ^ 0x2545f4914f6cdd1dULL);
    h = mix_u64(h ^ static_cast<std::uint64_t>(column) * 0x9e3779b97f4a7c15ULL);
    h = mix_u64(h ^ static_cast<std::uint64_t>(layer) * 0xd1b54a32d192ed03ULL);
    return SplitMix64(h);
}

// Derive a per-replica seed from a campaign base seed.
inline std::uint64_t replica_seed(std::uint64_t base, std::uint64_t replica) {
    return mix_u64(mix_u64(base ^ 0x6a09e667f3bcc909ULL) + replica);
}

} // namespace ipc
