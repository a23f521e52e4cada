#include "qsx/quantum_memory.hpp"

#include <cmath>

#include "qsx/common.hpp"

namespace qsx {

QuantumMemory QuantumMemory::prepare(const GridFunction& grid, double a_psi) {
    if (!(a_psi > 0.0) || a_psi > 1.0)
        throw ConfigError("prepare: a_psi must lie in (0, 1], got " + std::to_string(a_psi));
    if (grid.values.empty() || grid.norm_sq <= 0.0)
        throw ConfigError("prepare: empty or zero-norm grid");

    QuantumMemory m;
    m.n_ = grid.n;
    m.a_psi_ = a_psi;
    m.source_norm_sq_ = grid.norm_sq;
    m.source_grid_max_ = grid.grid_max();

    std::size_t dim = grid.values.size();
    double inv_root_norm = a_psi / std::sqrt(grid.norm_sq);
    m.good_.resize(dim);
    for (std::size_t j = 0; j < dim; ++j) m.good_[j] = grid.values[j] * inv_root_norm;

    double residual = std::sqrt(std::max(0.0, 1.0 - a_psi * a_psi) / static_cast<double>(dim));
    m.bad_.assign(dim, residual);
    return m;
}

QuantumMemory QuantumMemory::shifted(std::uint64_t w) const {
    if (w >= dimension())
        throw ConfigError("shift: W must lie in [0, 2^n), got " + std::to_string(w));
    QuantumMemory m = *this;
    std::uint64_t dim = dimension();
    for (std::uint64_t k = 0; k < dim; ++k) {
        std::uint64_t src = (k + w) & (dim - 1);
        m.good_[k] = good_[src];
        m.bad_[k] = bad_[src];
    }
    m.shift_offset_ = (shift_offset_ + w) & (dim - 1);
    return m;
}

double QuantumMemory::prefix_probability(const GoodSet& good) const {
    if (good.window_log2 < 0 || good.window_log2 > n_ ||
        good.window_start + good.size() > dimension())
        throw ConfigError("prefix_probability: window [" +
                          std::to_string(good.window_start) + ", " +
                          std::to_string(good.window_start + good.size()) +
                          ") exceeds 2^" + std::to_string(n_));
    KahanSum p;
    for (std::uint64_t k = good.window_start; k < good.window_start + good.size(); ++k)
        p.add(std::norm(good_[k]));
    return p.value();
}

double QuantumMemory::total_norm_sq() const {
    KahanSum s;
    for (const auto& a : good_) s.add(std::norm(a));
    for (const auto& a : bad_) s.add(std::norm(a));
    return s.value();
}

double QuantumMemory::good_branch_norm_sq() const {
    KahanSum s;
    for (const auto& a : good_) s.add(std::norm(a));
    return s.value();
}

}  // namespace qsx
