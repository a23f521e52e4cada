#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace qsx {

enum class Provenance { Builtin, ParsedExpression, Tabulated };

// A positive target function psi on [-1, 1] together with classical
// ground-truth metadata. Evaluation is pure; instances are safe to share.
struct FunctionModel {
    std::string name;
    std::function<double(double)> evaluator;
    std::optional<double> lambda;  // derivative-growth bound; estimated when unset
    bool lambda_user_supplied = false;
    double min_psi = 0.0;  // infimum on the check grid
    double max_psi = 0.0;  // supremum on the check grid
    Provenance provenance = Provenance::Builtin;
    double scale = 1.0;  // cumulative normalization factor applied so far
};

// Samples of psi on the 2^n grid x_j = 2j/2^n - 1.
struct GridFunction {
    int n = 0;
    std::vector<double> values;
    double norm_sq = 0.0;  // compensated sum of squares

    double grid_max() const;
};

// Builtin catalog: "constant", "cosine-bump[:a]" (default a = 0.5),
// "gaussian[:alpha]" (default alpha = 4). All returned models are normalized.
FunctionModel make_builtin(const std::string& spec);

// Parses an arithmetic expression in x and validates positivity/finiteness on
// the 10^4-point check grid. The result is NOT normalized.
FunctionModel parse_function_expr(const std::string& src);

// Loads a definition file: either an expression line or a tabulated list of
// 2^n values (see README for the format). Tabulated input requires a lambda
// header. The result is NOT normalized.
FunctionModel load_function_file(const std::string& path);

// Rescales so that the squared integral over [-1, 1] is 1 (adaptive
// quadrature, tolerance 1e-12).
FunctionModel normalize(const FunctionModel& f);

// Ground-truth prefix integral Psi(x) = int_{-1}^{x} psi^2, tolerance 1e-12.
// Independent of the estimation pipeline.
double integral_oracle(const FunctionModel& f, double x);

// Psi at many ascending points, computed incrementally (same accuracy).
std::vector<double> integral_oracle_many(const FunctionModel& f,
                                         const std::vector<double>& ascending_xs);

// Samples psi on the 2^n grid; norm_sq by compensated summation. 1 <= n <= 24.
GridFunction sample_grid(const FunctionModel& f, int n);

// max over derivative orders j <= k_max and a 4096-point grid of
// |psi^(j)(x)|^(1/(j+1)). Central finite differences with one Richardson
// extrapolation level; the grid for order j is shrunk by the stencil
// halfwidth so evaluation never leaves [-1, 1]. k_max <= 8.
double estimate_lambda(const FunctionModel& f, int k_max);

// Returns f.lambda if present, otherwise estimates at k_max and stores it.
double resolve_lambda(FunctionModel& f, int k_max = 8);

}  // namespace qsx
