#include "qsx/prefix_integration.hpp"

#include <algorithm>
#include <cmath>

#include "qsx/common.hpp"
#include "qsx/rng.hpp"

namespace qsx {

std::vector<int> binary_decompose(std::uint64_t x, int n) {
    if (n < 1 || n > 63) throw ConfigError("binary_decompose: n out of range");
    if (x > (1ULL << n))
        throw ConfigError("binary_decompose: X = " + std::to_string(x) +
                          " exceeds 2^" + std::to_string(n));
    std::vector<int> positions;
    if (x == (1ULL << n)) {
        positions.push_back(n);  // full interval, single window
        return positions;
    }
    for (int p = n - 1; p >= 0; --p)
        if (x & (1ULL << p)) positions.push_back(p);
    return positions;
}

double prefix_error_budget(double eps_psi, int n, double max_psi,
                           std::vector<std::string>* warnings) {
    if (!(eps_psi > 0.0) || n < 1 || !(max_psi > 0.0))
        throw ConfigError("prefix_error_budget: all inputs must be positive");
    if (warnings && eps_psi > n * max_psi * max_psi)
        warnings->push_back(
            "eps_psi = " + std::to_string(eps_psi) +
            " violates the validity condition eps_psi <= n * max_psi^2 = " +
            std::to_string(n * max_psi * max_psi));
    return eps_psi / (static_cast<double>(n) * max_psi);
}

PrefixEstimate estimate_prefix_integral(const QuantumMemory& mem, std::uint64_t x,
                                        double eps_psi, EstimationMode mode,
                                        std::uint64_t seed, const MlqaeOptions& opts) {
    const int n = mem.qubits();
    PrefixEstimate out;
    out.cut_index = x;
    out.x_hat = 2.0 * static_cast<double>(x) / static_cast<double>(mem.dimension()) - 1.0;
    out.eps_psi_target = eps_psi;

    const std::vector<int> bits = binary_decompose(x, n);
    double eps_segment =
        prefix_error_budget(eps_psi, n, mem.source_grid_max(), &out.warnings);

    // The raw window amplitude is a_psi * q, so hitting a fixed budget on q
    // itself costs a factor 1/a_psi in raw precision.
    double eps_raw = mem.a_psi() * eps_segment;
    if (eps_raw >= 0.5) {
        out.warnings.push_back("per-segment precision " + std::to_string(eps_raw) +
                               " clamped to 0.4999");
        eps_raw = 0.4999;
    }

    const double inv_a_sq = 1.0 / (mem.a_psi() * mem.a_psi());
    KahanSum total;
    std::uint64_t w = 0;
    int ordinal = 0;
    for (int p : bits) {
        GoodSet window{w, p};
        // window_start + 2^p <= X <= 2^n by construction
        AmplitudeEstimate est = estimate_amplitude(
            mem, window, eps_raw, mode, derive_seed(seed, 2, static_cast<std::uint64_t>(ordinal)),
            opts);
        out.segments.push_back({p, w, est.q_hat});
        out.ledger.merge(est.ledger);
        total.add(est.q_hat * est.q_hat * inv_a_sq);
        w += 1ULL << p;
        ++ordinal;
    }
    out.psi_hat_value = total.value();
    return out;
}

}  // namespace qsx
