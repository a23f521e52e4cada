#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qsx/function_model.hpp"

namespace qsx {

// Dyadic index window [window_start, window_start + 2^window_log2). The
// good-state projector "all zeros from bit p upward" selects {k : k < 2^p};
// combined with a cyclic shift it realizes an arbitrary aligned window.
struct GoodSet {
    std::uint64_t window_start = 0;
    int window_log2 = 0;

    std::uint64_t size() const { return 1ULL << window_log2; }
};

// Statevector over n data qubits plus one ancilla. The ancilla-0 branch holds
// a_psi * psi(x_j)/sqrt(N); the ancilla-1 branch holds the residual weight
// sqrt(1 - a_psi^2) spread uniformly. Immutable after construction.
class QuantumMemory {
public:
    static QuantumMemory prepare(const GridFunction& grid, double a_psi);

    // Cyclic shift: index k of the result holds the input amplitude at
    // (k + W) mod 2^n, on both branches.
    QuantumMemory shifted(std::uint64_t w) const;

    // Exact squared norm of the good (ancilla-0) branch over the window.
    double prefix_probability(const GoodSet& good) const;

    double total_norm_sq() const;
    double good_branch_norm_sq() const;

    int qubits() const { return n_; }
    std::uint64_t dimension() const { return 1ULL << n_; }
    double a_psi() const { return a_psi_; }
    std::uint64_t shift_offset() const { return shift_offset_; }
    const std::vector<std::complex<double>>& amplitudes_good() const { return good_; }
    const std::vector<std::complex<double>>& amplitudes_bad() const { return bad_; }

    // Grid metadata carried along for estimator budgets.
    double source_norm_sq() const { return source_norm_sq_; }
    double source_grid_max() const { return source_grid_max_; }

    friend QuantumMemory apply_grover(const QuantumMemory& mem, const GoodSet& good,
                                      int reps);

private:
    QuantumMemory() = default;

    int n_ = 0;
    double a_psi_ = 1.0;
    std::vector<std::complex<double>> good_, bad_;
    std::uint64_t shift_offset_ = 0;
    double source_norm_sq_ = 0.0;
    double source_grid_max_ = 0.0;
};

}  // namespace qsx
