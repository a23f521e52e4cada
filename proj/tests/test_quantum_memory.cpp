#include <doctest.h>

#include <cmath>

#include "qsx/common.hpp"
#include "qsx/function_model.hpp"
#include "qsx/quantum_memory.hpp"
#include "qsx/rng.hpp"

using namespace qsx;

namespace {

QuantumMemory make_memory(const std::string& fn, int n, double a_psi) {
    return QuantumMemory::prepare(sample_grid(make_builtin(fn), n), a_psi);
}

}  // namespace

TEST_CASE("prepare places scaled amplitudes on the good branch") {
    QuantumMemory m = make_memory("constant", 2, 1.0);
    for (const auto& a : m.amplitudes_good())
        CHECK(a.real() == doctest::Approx(0.5).epsilon(1e-14));
    for (const auto& a : m.amplitudes_bad()) CHECK(std::norm(a) == 0.0);
    CHECK(m.total_norm_sq() == doctest::Approx(1.0).epsilon(1e-12));

    QuantumMemory half = make_memory("constant", 2, 0.5);
    CHECK(half.good_branch_norm_sq() == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(half.total_norm_sq() == doctest::Approx(1.0).epsilon(1e-12));

    QuantumMemory bump = make_memory("cosine-bump:0.5", 10, 0.7);
    CHECK(bump.total_norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(bump.good_branch_norm_sq() == doctest::Approx(0.49).epsilon(1e-12));

    GridFunction g = sample_grid(make_builtin("cosine-bump:0.5"), 10);
    double expected = 0.7 * g.values[100] / std::sqrt(g.norm_sq);
    CHECK(bump.amplitudes_good()[100].real() == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("prepare rejects out-of-range sub-normalization") {
    GridFunction g = sample_grid(make_builtin("constant"), 2);
    CHECK_THROWS_AS(QuantumMemory::prepare(g, 0.0), ConfigError);
    CHECK_THROWS_AS(QuantumMemory::prepare(g, 1.0001), ConfigError);
    CHECK_THROWS_AS(QuantumMemory::prepare(g, -0.5), ConfigError);
}

TEST_CASE("shift is a cyclic permutation") {
    QuantumMemory m = make_memory("gaussian", 2, 1.0);
    QuantumMemory same = m.shifted(0);
    for (std::uint64_t k = 0; k < 4; ++k)
        CHECK(same.amplitudes_good()[k] == m.amplitudes_good()[k]);

    QuantumMemory s1 = m.shifted(1);
    for (std::uint64_t k = 0; k < 4; ++k)
        CHECK(s1.amplitudes_good()[k] == m.amplitudes_good()[(k + 1) % 4]);
    CHECK(s1.shift_offset() == 1);

    CHECK_THROWS_AS(m.shifted(4), ConfigError);
}

TEST_CASE("shift composes modulo the dimension") {
    QuantumMemory m = make_memory("cosine-bump:0.5", 6, 0.9);
    SplitMix64 rng(99);
    for (int t = 0; t < 20; ++t) {
        auto w1 = rng.next_u64() % 64;
        auto w2 = rng.next_u64() % 64;
        QuantumMemory a = m.shifted(w1).shifted(w2);
        QuantumMemory b = m.shifted((w1 + w2) % 64);
        for (std::uint64_t k = 0; k < 64; ++k) {
            CHECK(std::fabs(a.amplitudes_good()[k].real() -
                            b.amplitudes_good()[k].real()) <= 1e-14);
        }
        CHECK(a.shift_offset() == b.shift_offset());
        CHECK(a.total_norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("prefix probabilities on the uniform state") {
    QuantumMemory m = make_memory("constant", 3, 1.0);
    CHECK(m.prefix_probability({0, 2}) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(m.prefix_probability({4, 0}) == doctest::Approx(0.125).epsilon(1e-14));

    QuantumMemory half = make_memory("constant", 3, 0.5);
    CHECK(half.prefix_probability({0, 3}) == doctest::Approx(0.25).epsilon(1e-12));

    CHECK_THROWS_AS(m.prefix_probability({6, 2}), ConfigError);  // 6 + 4 > 8
}

TEST_CASE("window on unshifted memory equals leading window on shifted memory") {
    QuantumMemory m = make_memory("cosine-bump:0.5", 8, 0.9);
    for (std::uint64_t w : {0ULL, 3ULL, 64ULL, 200ULL}) {
        for (int p : {0, 2, 5}) {
            if (w + (1ULL << p) > 256) continue;
            double direct = m.prefix_probability({w, p});
            double shifted = m.shifted(w).prefix_probability({0, p});
            CHECK(std::fabs(direct - shifted) <= 1e-14);
        }
    }
}

TEST_CASE("disjoint windows partition the good-branch weight") {
    for (double a_psi : {1.0, 0.6}) {
        QuantumMemory m = make_memory("cosine-bump:0.5", 8, a_psi);
        KahanSum total;
        for (std::uint64_t w = 0; w < 256; w += 32) total.add(m.prefix_probability({w, 5}));
        CHECK(total.value() == doctest::Approx(a_psi * a_psi).epsilon(1e-12));
    }
}
