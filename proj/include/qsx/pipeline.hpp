#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qsx/amplitude_estimation.hpp"
#include "qsx/chebyshev.hpp"
#include "qsx/function_model.hpp"
#include "qsx/prefix_integration.hpp"

namespace qsx {

struct ExtractionConfig {
    // "constant", "cosine-bump[:a]", "gaussian[:alpha]", "expr:<text>", "file:<path>"
    std::string function_spec = "cosine-bump:0.5";
    int n = 12;
    double a_psi = 1.0;
    double eps_total = 0.05;
    std::optional<double> eps_psi;   // default eps_total * min_psi / (10 M^2)
    std::optional<double> eps_cheb;  // default: eps_psi if given, else eps_total
    EstimationMode mode = EstimationMode::Exact;
    std::uint64_t master_seed = 0;
    std::optional<int> cheb_m;
    std::optional<double> lambda_override;
    MlqaeOptions mlqae;
    std::string out_path;  // empty: no file written
};

struct ErrorMetrics {
    int eval_points = 0;
    double guard_band = 0.0;  // excluded width at each end
    double sup_psi = 0.0, l2_psi = 0.0;
    double sup_psi_sq = 0.0, l2_psi_sq = 0.0;
    double sup_prefix = 0.0, l2_prefix = 0.0;  // interpolant vs oracle Psi
};

struct NodeResult {
    std::uint64_t cut_index = 0;
    double x_hat = 0.0;
    double psi_hat = 0.0;     // estimated Psi
    double psi_oracle = 0.0;  // quadrature ground truth at x_hat
    QueryLedger ledger;
    std::vector<SegmentEstimate> segments;
};

struct ExtractionReport {
    ExtractionConfig config;         // with derived eps_psi/eps_cheb/M filled in
    std::string function_name;
    double lambda = 0.0;
    bool lambda_user_supplied = false;
    double min_psi = 0.0, max_psi = 0.0;
    double grid_norm_sq = 0.0, grid_max = 0.0;
    int cheb_m = 0;
    double eps_psi = 0.0, eps_cheb = 0.0;
    NodeSet node_set;
    std::vector<NodeResult> nodes;
    std::vector<double> coefficients;
    double condition_estimate = 0.0;
    ErrorMetrics metrics;
    QueryLedger ledger;
    double predicted_cost_value = 0.0;
    std::vector<std::string> warnings;

    std::string to_json() const;
};

// Resolves the function spec to a normalized model with lambda filled in.
FunctionModel resolve_function(const ExtractionConfig& cfg);

// Full pipeline: normalize, sample, prepare, choose nodes, estimate prefix
// integrals, solve, differentiate, take the square root, compare to oracles.
// Deterministic given the master seed. Writes the JSON report when
// cfg.out_path is set.
ExtractionReport extract(const ExtractionConfig& cfg);

// Theorem-style budget (1/a_psi) lambda^2 n^2 max_psi / (eps_total min_psi),
// constant 1; reported for ratio analysis against the measured ledger.
double predicted_cost(const ExtractionConfig& cfg, double lambda, double min_psi,
                      double max_psi);

struct SweepRow {
    std::string axis;
    std::string value;
    bool failed = false;
    std::string error;
    double sup_psi = 0.0, l2_psi = 0.0;
    std::uint64_t prep_queries = 0;
    double predicted = 0.0;
    int cheb_m = 0;
    std::size_t warning_count = 0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::string to_csv() const;  // fixed header, one row per run
};

// Runs one extraction per value of the axis (n, eps_total, eps_psi, M, a_psi,
// mode), each with a seed derived from the template's master seed. Per-run
// failures become rows with the error column set; the sweep continues.
SweepResult sweep(const ExtractionConfig& base, const std::string& axis,
                  const std::vector<std::string>& values);

struct VerifyOptions {
    // Test hook: multiplies the j = 0 basis column in the orthonormality
    // suite; anything != 1 must make that suite fail.
    double basis_scale_tamper = 1.0;
};

struct SuiteResult {
    std::string name;
    bool pass = false;
    std::string details;  // measured constants
};

struct VerifyReport {
    std::vector<SuiteResult> suites;
    bool all_pass = true;
};

// Module invariant suites: orthonormality, conditioning, perturbed-system
// bounds, segmentation brute-force equivalence at n = 8, Grover subspace
// identity, derivative finite-difference check.
VerifyReport verify_suites(const VerifyOptions& opts = {});

}  // namespace qsx
