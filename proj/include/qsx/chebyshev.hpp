#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

namespace qsx {

// Square dense matrix, row-major. Small (M <= 64ish) throughout.
struct DenseMatrix {
    int size = 0;
    std::vector<double> data;

    explicit DenseMatrix(int m) : size(m), data(static_cast<std::size_t>(m) * m, 0.0) {}
    double& at(int r, int c) { return data[static_cast<std::size_t>(r) * size + c]; }
    double at(int r, int c) const { return data[static_cast<std::size_t>(r) * size + c]; }
};

double spectral_norm(const DenseMatrix& a);
double condition_number(const DenseMatrix& a);

// Chebyshev polynomials. T via the cosine form (uniform accuracy at clustered
// nodes); U via the sine quotient with the closed-form limit at |x| = 1.
double cheb_t(int j, double x);
double cheb_u(int j, double x);

// Orthonormalized basis u_j: sqrt(1/M) T_0, sqrt(2/M) T_j for j >= 1.
double orthonormal_basis(int j, double x, int m);

struct NodeSet {
    int M = 0;
    std::vector<double> cheb_nodes;        // cos((2k-1)pi/(2M)), k = 1..M, descending
    std::vector<double> mock_nodes;        // nearest grid points 2j/2^n - 1
    std::vector<std::uint64_t> mock_indices;
    double max_snap_error = 0.0;
};

struct ChebyshevInterpolant {
    int M = 0;
    std::vector<double> coeffs;  // a'_j over the orthonormalized basis
    NodeSet node_set;
    double condition_estimate = 0.0;

    // P(x) = sum_j a'_j u_j(x)
    double evaluate(double x) const;
    // P'(x) = sum_{j>=1} a'_j scale_j j U_{j-1}(x)
    double derivative(double x) const;
};

// M = ceil(e * lambda + 2 * ln(1/eps_cheb)), floored at 2.
int choose_M(double lambda, double eps_cheb);

// Chebyshev nodes snapped to the nearest 2^n-point grid. Throws NumericError
// naming the offending pair if two nodes snap to the same grid index.
NodeSet make_node_set(int m, int n);

// Entry (k, j) = u_j(nodes[k]).
DenseMatrix build_vandermonde(const std::vector<double>& nodes, int m);

// Pivoted direct solve of V a = f. Aborts with diagnostics when the condition
// estimate exceeds 1e6 or the residual exceeds 1e-10 * ||f||.
std::vector<double> solve_coefficients(const DenseMatrix& v, const std::vector<double>& f,
                                       double* condition_out = nullptr);

// Convenience: build + solve at the given nodes.
ChebyshevInterpolant fit_interpolant(const std::vector<double>& nodes,
                                     const std::vector<double>& f);
ChebyshevInterpolant fit_interpolant(const NodeSet& nodes, const std::vector<double>& f);

// Evaluator for the interpolant's derivative (the psi^2 approximant).
std::function<double(double)> differentiate_interpolant(const ChebyshevInterpolant& interp);

// Records clamping observed while evaluating a sqrt-recovered function.
struct ClampMonitor {
    bool clamped = false;
    double most_negative = 0.0;
    double min_floor = 0.0;  // validity threshold the excursion is judged against
};

// x -> sqrt(max(approx_sq(x), 0)). Negative excursions are clamped and noted
// on the monitor; the recovery bound needs the approximant error to stay
// below min psi^2, so callers surface a warning when clamping fires.
std::function<double(double)> sqrt_recover(std::function<double(double)> approx_sq,
                                           double min_floor,
                                           std::shared_ptr<ClampMonitor> monitor = nullptr);

}  // namespace qsx
