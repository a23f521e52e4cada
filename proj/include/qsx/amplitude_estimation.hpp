#pragma once

#include <cstdint>

#include "qsx/quantum_memory.hpp"

namespace qsx {

enum class EstimationMode { Exact, Noisy, GroverML };

EstimationMode parse_mode(const std::string& name);
std::string mode_name(EstimationMode mode);

// Counts state-preparation work: each Grover application costs one prepare
// plus one un-prepare, each shot costs one prepare, so
// prep_queries = 2 * grover_applications + shots always holds.
struct QueryLedger {
    std::uint64_t prep_queries = 0;
    std::uint64_t grover_applications = 0;
    std::uint64_t shots = 0;

    void merge(const QueryLedger& other) {
        prep_queries += other.prep_queries;
        grover_applications += other.grover_applications;
        shots += other.shots;
    }
};

struct AmplitudeEstimate {
    double q_hat = 0.0;
    double epsilon_target = 0.0;
    EstimationMode mode = EstimationMode::Exact;
    QueryLedger ledger;
    std::uint64_t seed = 0;
};

struct MlqaeOptions {
    int shots_per_power = 100;
    double schedule_constant = 1.0;  // c in K = ceil(log2(c/eps))
};

// Applies Q^reps to the prepared state, where Q first flips the sign of the
// good window on the ancilla-0 branch and then reflects about the prepared
// state. The good-window probability of the result is sin^2((2*reps+1)*theta)
// with theta = arcsin of the initial good amplitude.
QuantumMemory apply_grover(const QuantumMemory& mem, const GoodSet& good, int reps);

// Estimates the amplitude q = sqrt(prefix probability) of the good window.
//   exact      returns the true amplitude (1 prep).
//   noisy      true amplitude plus seeded uniform noise in [-eps, +eps],
//              clamped to [0, 1]; ceil(1/eps) synthetic preps.
//   grover-ml  maximum-likelihood estimation over Grover powers
//              {0, 1, 2, 4, ..., 2^K}, K = ceil(log2(c/eps)), with outcome
//              counts drawn from the exact statevector probabilities.
// Deterministic given (mem, good, eps, mode, seed).
AmplitudeEstimate estimate_amplitude(const QuantumMemory& mem, const GoodSet& good,
                                     double eps, EstimationMode mode, std::uint64_t seed,
                                     const MlqaeOptions& opts = {});

}  // namespace qsx
