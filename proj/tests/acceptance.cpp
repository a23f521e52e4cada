// Acceptance harness: runs every release criterion at its pinned tolerance
// and prints one PASS/FAIL line per criterion with the measured constants.
// Exit code is the number of failed criteria.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "qsx/amplitude_estimation.hpp"
#include "qsx/chebyshev.hpp"
#include "qsx/common.hpp"
#include "qsx/function_model.hpp"
#include "qsx/pipeline.hpp"
#include "qsx/prefix_integration.hpp"
#include "qsx/rng.hpp"

#include "oracles.hpp"

using namespace qsx;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%2d] %s  %-34s %s\n", id, pass ? "PASS" : "FAIL", name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(double v, const char* f = "%.3e") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), f, v);
    return buf;
}

QuantumMemory make_memory(const std::string& fn, int n, double a_psi = 1.0) {
    return QuantumMemory::prepare(sample_grid(make_builtin(fn), n), a_psi);
}

// 1. Exact-mode segmented estimates equal the brute-force prefix probability
//    within 1e-13 for every cut at n = 8, constant and cosine bump.
void criterion_1() {
    const int n = 8;
    double worst = 0.0;
    for (const char* spec : {"constant", "cosine-bump:0.5"}) {
        GridFunction grid = sample_grid(make_builtin(spec), n);
        QuantumMemory mem = QuantumMemory::prepare(grid, 1.0);
        for (std::uint64_t x = 0; x <= 256; ++x) {
            double est = estimate_prefix_integral(mem, x, 1e-3, EstimationMode::Exact, 0)
                             .psi_hat_value;
            worst = std::max(worst,
                             std::fabs(est - oracles::brute_prefix_probability(grid, x)));
        }
    }
    report(1, "segmentation-oracle-equivalence", worst <= 1e-13,
           "max |estimate - brute force| = " + fmt(worst) + " over 2x257 cuts (tol 1e-13)");
}

// 2. Orthonormality to 1e-12 for M <= 64; condition 1 +- 1e-10 at exact
//    nodes; cond <= 1.5 and ||V - V_pert||_2 <= 10 M^(5/2)/2^n at M=16, n=12.
void criterion_2() {
    double worst_dot = 0.0, worst_cond = 0.0;
    for (int m : {2, 4, 8, 16, 32, 48, 64}) {
        DenseMatrix v = build_vandermonde(oracles::exact_cheb_nodes(m), m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                double dot = 0.0;
                for (int k = 0; k < m; ++k) dot += v.at(k, i) * v.at(k, j);
                worst_dot = std::max(worst_dot, std::fabs(dot - (i == j ? 1.0 : 0.0)));
            }
        worst_cond = std::max(worst_cond, std::fabs(condition_number(v) - 1.0));
    }

    const int m = 16, n = 12;
    NodeSet ns = make_node_set(m, n);
    DenseMatrix v = build_vandermonde(ns.cheb_nodes, m);
    DenseMatrix vp = build_vandermonde(ns.mock_nodes, m);
    DenseMatrix diff(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) diff.at(i, j) = v.at(i, j) - vp.at(i, j);
    double pert_norm = spectral_norm(diff);
    double pert_cond = condition_number(vp);
    double bound = 10.0 * std::pow(m, 2.5) / std::pow(2.0, n);

    bool pass = worst_dot <= 1e-12 && worst_cond <= 1e-10 && pert_cond <= 1.5 &&
                pert_norm <= bound;
    report(2, "orthonormality-and-conditioning", pass,
           "max|V^TV-I| = " + fmt(worst_dot) + ", max|cond-1| = " + fmt(worst_cond) +
               ", cond(V_pert) = " + fmt(pert_cond, "%.4f") + ", ||dV||_2 = " +
               fmt(pert_norm) + " (bound " + fmt(bound) + ")");
}

// 3. Truncation decays by at least 0.5 per M -> M+2 on the cosine bump, and
//    choose_M hits the requested eps_cheb.
void criterion_3() {
    auto sup_error = [](int m) {
        std::vector<double> nodes = oracles::exact_cheb_nodes(m);
        std::vector<double> f(m);
        for (int k = 0; k < m; ++k) f[k] = oracles::bump_prefix(0.5, nodes[k]);
        ChebyshevInterpolant interp = fit_interpolant(nodes, f);
        double sup = 0.0;
        for (int i = 0; i <= 2000; ++i) {
            double x = -1.0 + 2.0 * i / 2000.0;
            sup = std::max(sup, std::fabs(interp.evaluate(x) - oracles::bump_prefix(0.5, x)));
        }
        return sup;
    };

    double worst_ratio = 0.0;
    double prev = sup_error(4);
    for (int m = 6; m <= 16; m += 2) {
        double cur = sup_error(m);
        worst_ratio = std::max(worst_ratio, cur / prev);
        prev = cur;
    }

    FunctionModel bump = make_builtin("cosine-bump:0.5");
    double lambda = estimate_lambda(bump, 8);
    bool targets_met = true;
    std::string target_detail;
    for (double eps : {1e-3, 1e-5}) {
        int m = choose_M(lambda, eps);
        double err = sup_error(m);
        targets_met = targets_met && err <= eps;
        target_detail += " M(" + fmt(eps, "%.0e") + ")=" + std::to_string(m) +
                         " err=" + fmt(err);
    }

    report(3, "chebyshev-truncation-decay", worst_ratio <= 0.5 && targets_met,
           "worst per-step ratio = " + fmt(worst_ratio, "%.3f") + " (tol 0.5)," +
               target_detail);
}

// 4. Injected per-sample noise is amplified by at most 10 M^2 in the
//    recovered integrand, across 100 seeds, M in {8, 12}, eps in {1e-3, 1e-4}.
void criterion_4() {
    double worst_factor = 0.0;
    for (int m : {8, 12}) {
        std::vector<double> nodes = oracles::exact_cheb_nodes(m);
        std::vector<double> clean(m);
        for (int k = 0; k < m; ++k) clean[k] = oracles::bump_prefix(0.5, nodes[k]);
        ChebyshevInterpolant base = fit_interpolant(nodes, clean);
        for (double eps : {1e-3, 1e-4}) {
            for (std::uint64_t seed = 0; seed < 100; ++seed) {
                SplitMix64 rng(derive_seed(404, static_cast<std::uint64_t>(m), seed));
                std::vector<double> noisy(m);
                for (int k = 0; k < m; ++k) noisy[k] = clean[k] + rng.uniform(-eps, eps);
                ChebyshevInterpolant pert = fit_interpolant(nodes, noisy);
                double sup = 0.0;
                for (int i = 0; i <= 800; ++i) {
                    double x = -1.0 + 2.0 * i / 800.0;
                    sup = std::max(sup, std::fabs(pert.derivative(x) - base.derivative(x)));
                }
                worst_factor = std::max(worst_factor, sup / (m * m * eps));
            }
        }
    }
    report(4, "m-squared-error-amplification", worst_factor <= 10.0,
           "worst sup-deviation / (M^2 eps) = " + fmt(worst_factor, "%.3f") +
               " over 400 trials (tol 10)");
}

// 5. Square-root propagation: approximant error eps <= min psi^2 yields
//    recovered psi error <= 2 eps / min psi on the catalog.
void criterion_5() {
    double worst_factor = 0.0;
    for (const char* spec : {"constant", "cosine-bump:0.5", "gaussian"}) {
        FunctionModel f = normalize(make_builtin(spec));
        double min_sq = f.min_psi * f.min_psi;
        for (double eps : {min_sq, min_sq / 3.0}) {
            for (int shape = 0; shape < 3; ++shape) {
                auto perturbed = [&f, eps, shape](double x) {
                    double v = f.evaluator(x);
                    double delta = shape == 0   ? -eps
                                   : shape == 1 ? eps
                                                : eps * std::sin(7.0 * x);
                    return v * v + delta;
                };
                auto recovered = sqrt_recover(perturbed, min_sq);
                double sup = 0.0;
                for (int i = 0; i <= 1500; ++i) {
                    double x = -1.0 + 2.0 * i / 1500.0;
                    sup = std::max(sup, std::fabs(recovered(x) - f.evaluator(x)));
                }
                worst_factor = std::max(worst_factor, sup / (2.0 * eps / f.min_psi));
            }
        }
    }
    report(5, "square-root-propagation", worst_factor <= 1.0,
           "worst sup-error / (2 eps / min psi) = " + fmt(worst_factor, "%.3f") +
               " (tol 1)");
}

// 6. Grover-ML query count grows by 1.6-2.6x per eps halving, and the
//    estimate lands within eps in at least 95% of 200 seeded runs.
void criterion_6() {
    QuantumMemory mem = make_memory("constant", 3);
    GoodSet window{0, 2};
    const double q = std::sqrt(0.5);

    std::vector<std::uint64_t> preps;
    double worst_rate = 1.0;
    std::string detail;
    for (double eps : {0.02, 0.01, 0.005}) {
        int within = 0;
        std::uint64_t cost = 0;
        for (std::uint64_t seed = 1; seed <= 200; ++seed) {
            AmplitudeEstimate est =
                estimate_amplitude(mem, window, eps, EstimationMode::GroverML, seed);
            if (std::fabs(est.q_hat - q) <= eps) ++within;
            cost = est.ledger.prep_queries;
        }
        preps.push_back(cost);
        worst_rate = std::min(worst_rate, within / 200.0);
        detail += " rate(" + fmt(eps, "%.3f") + ")=" + fmt(within / 200.0, "%.3f");
    }
    bool ratios_ok = true;
    for (std::size_t i = 0; i + 1 < preps.size(); ++i) {
        double r = static_cast<double>(preps[i + 1]) / static_cast<double>(preps[i]);
        ratios_ok = ratios_ok && r >= 1.6 && r <= 2.6;
        detail += " ratio=" + fmt(r, "%.2f");
    }
    report(6, "qae-query-scaling", ratios_ok && worst_rate >= 0.95, detail + " (tol >=0.95)");
}

// 7. At equal recovered-q precision, a_psi = 0.5 costs 1.5-2.8x the a_psi = 1
//    ledger.
void criterion_7() {
    QuantumMemory full = make_memory("cosine-bump:0.5", 8, 1.0);
    QuantumMemory half = make_memory("cosine-bump:0.5", 8, 0.5);
    const double eps_q = 0.01;
    PrefixEstimate e_full =
        estimate_prefix_integral(full, 160, eps_q * 8.0 * full.source_grid_max(),
                                 EstimationMode::GroverML, 5);
    PrefixEstimate e_half =
        estimate_prefix_integral(half, 160, eps_q * 8.0 * half.source_grid_max(),
                                 EstimationMode::GroverML, 5);
    double ratio = static_cast<double>(e_half.ledger.prep_queries) /
                   static_cast<double>(e_full.ledger.prep_queries);
    report(7, "sub-normalization-cost-factor", ratio >= 1.5 && ratio <= 2.8,
           "prep-query ratio a=0.5 vs a=1.0: " + fmt(ratio, "%.3f") + " (range [1.5, 2.8])");
}

// 8. Exact-mode estimate vs quadrature oracle halves per qubit added,
//    n in {8..14}.
void criterion_8() {
    FunctionModel bump = make_builtin("cosine-bump:0.5");
    std::vector<double> errs;
    for (int n = 8; n <= 14; ++n) {
        std::uint64_t dim = 1ULL << n;
        auto cut = static_cast<std::uint64_t>(0.65 * static_cast<double>(dim));
        QuantumMemory mem = QuantumMemory::prepare(sample_grid(bump, n), 1.0);
        PrefixEstimate est =
            estimate_prefix_integral(mem, cut, 1e-3, EstimationMode::Exact, 0);
        errs.push_back(std::fabs(est.psi_hat_value - integral_oracle(bump, est.x_hat)));
    }
    bool pass = true;
    std::string detail = "ratios:";
    for (std::size_t i = 0; i + 1 < errs.size(); ++i) {
        double r = errs[i] / errs[i + 1];
        pass = pass && r >= 1.7 && r <= 2.3;
        detail += " " + fmt(r, "%.2f");
    }
    report(8, "riemann-residual-order", pass, detail + " (range [1.7, 2.3])");
}

// 9. End-to-end: exact mode reaches 1e-3 sup error at n = 12; grover-ml at
//    eps_total = 0.05 stays within 0.05 in at least 90% of 50 seeds.
void criterion_9() {
    ExtractionConfig cfg;
    cfg.function_spec = "cosine-bump:0.5";
    cfg.n = 12;
    cfg.eps_total = 0.05;
    cfg.mode = EstimationMode::Exact;
    ExtractionReport exact_rep = extract(cfg);
    bool exact_ok = exact_rep.metrics.sup_psi <= 1e-3;

    cfg.mode = EstimationMode::GroverML;
    int within = 0;
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        cfg.master_seed = seed;
        ExtractionReport rep = extract(cfg);
        if (rep.metrics.sup_psi <= 0.05) ++within;
        worst = std::max(worst, rep.metrics.sup_psi);
    }
    bool ml_ok = within >= 45;
    report(9, "end-to-end-extraction", exact_ok && ml_ok,
           "exact sup = " + fmt(exact_rep.metrics.sup_psi) + " (tol 1e-3); grover-ml " +
               std::to_string(within) + "/50 within 0.05, worst = " + fmt(worst));
}

// 10. Byte-identical reports for equal seeds.
void criterion_10() {
    bool pass = true;

    ExtractionConfig cfg;
    cfg.function_spec = "cosine-bump:0.5";
    cfg.n = 8;
    cfg.eps_total = 0.1;
    cfg.master_seed = 31337;
    for (auto mode : {EstimationMode::Exact, EstimationMode::Noisy,
                      EstimationMode::GroverML}) {
        cfg.mode = mode;
        pass = pass && extract(cfg).to_json() == extract(cfg).to_json();
    }

    ExtractionConfig sw = cfg;
    sw.mode = EstimationMode::GroverML;
    pass = pass && sweep(sw, "eps_psi", {"0.02", "0.01"}).to_csv() ==
                       sweep(sw, "eps_psi", {"0.02", "0.01"}).to_csv();

    report(10, "report-determinism", pass,
           pass ? "extract (3 modes) and sweep byte-identical across reruns"
                : "re-run output differed");
}

}  // namespace

int main() {
    std::printf("acceptance criteria\n-------------------\n");
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    std::printf("-------------------\n%s (%d failure%s)\n",
                g_failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES PRESENT",
                g_failures, g_failures == 1 ? "" : "s");
    return g_failures;
}
