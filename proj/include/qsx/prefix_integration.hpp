#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qsx/amplitude_estimation.hpp"
#include "qsx/quantum_memory.hpp"

namespace qsx {

struct SegmentEstimate {
    int p = 0;                      // window is [window_start, window_start + 2^p)
    std::uint64_t window_start = 0;
    double q_hat = 0.0;
};

struct PrefixEstimate {
    std::uint64_t cut_index = 0;    // X
    double x_hat = 0.0;             // 2X/2^n - 1
    double psi_hat_value = 0.0;     // estimated Psi(x_hat)
    double eps_psi_target = 0.0;
    std::vector<SegmentEstimate> segments;
    QueryLedger ledger;
    std::vector<std::string> warnings;
};

// Set-bit positions of X, highest first. X = 2^n is treated as the single
// full-interval window {n}. Throws on X > 2^n.
std::vector<int> binary_decompose(std::uint64_t x, int n);

// Per-segment amplitude precision eps_psi / (n * max_psi). Appends a warning
// when the validity condition eps_psi <= n * max_psi^2 fails.
double prefix_error_budget(double eps_psi, int n, double max_psi,
                           std::vector<std::string>* warnings = nullptr);

// Walks the set bits of X from high to low, keeping a cumulative shift W, and
// estimates each dyadic window's amplitude to the per-segment budget (scaled
// by a_psi, since the raw estimate targets a_psi * q). Returns the sum of
// squared estimates with the sub-normalization divided back out.
PrefixEstimate estimate_prefix_integral(const QuantumMemory& mem, std::uint64_t x,
                                        double eps_psi, EstimationMode mode,
                                        std::uint64_t seed,
                                        const MlqaeOptions& opts = {});

}  // namespace qsx
