#pragma once

#include <cstdint>

namespace qsx {

// SplitMix64 (Steele, Lea, Flood 2014). Chosen over std::mt19937_64 because
// the full draw path, including double conversion, is pinned here and gives
// bit-identical streams on every platform, which the report reproducibility
// guarantee depends on.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53 mantissa bits.
    double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    bool bernoulli(double p) { return next_double() < p; }

private:
    std::uint64_t state_;
};

// Deterministic seed-stream derivation for (master, stream, index) tuples,
// e.g. per-node and per-segment estimator streams.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                 std::uint64_t index) {
    SplitMix64 g(master);
    std::uint64_t a = g.next_u64() ^ (stream * 0xD1342543DE82EF95ULL);
    SplitMix64 h(a);
    return h.next_u64() ^ (index * 0x9E3779B97F4A7C15ULL) ^ h.next_u64();
}

}  // namespace qsx
