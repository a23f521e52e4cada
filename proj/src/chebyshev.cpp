#include "qsx/chebyshev.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "qsx/common.hpp"

namespace qsx {
namespace {

Eigen::MatrixXd to_eigen(const DenseMatrix& a) {
    Eigen::MatrixXd m(a.size, a.size);
    for (int r = 0; r < a.size; ++r)
        for (int c = 0; c < a.size; ++c) m(r, c) = a.at(r, c);
    return m;
}

}  // namespace

double spectral_norm(const DenseMatrix& a) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(a));
    return svd.singularValues()(0);
}

double condition_number(const DenseMatrix& a) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(a));
    const auto& sv = svd.singularValues();
    double smin = sv(sv.size() - 1);
    if (smin <= 0.0) return std::numeric_limits<double>::infinity();
    return sv(0) / smin;
}

double cheb_t(int j, double x) {
    double t = std::clamp(x, -1.0, 1.0);
    return std::cos(j * std::acos(t));
}

double cheb_u(int j, double x) {
    double t = std::clamp(x, -1.0, 1.0);
    double theta = std::acos(t);
    double s = std::sin(theta);
    if (s < 1e-12) {
        // U_j(+-1) = (+-1)^j (j+1)
        double sign = t > 0.0 ? 1.0 : (j % 2 == 0 ? 1.0 : -1.0);
        return sign * (j + 1);
    }
    return std::sin((j + 1) * theta) / s;
}

double orthonormal_basis(int j, double x, int m) {
    double scale = j == 0 ? std::sqrt(1.0 / m) : std::sqrt(2.0 / m);
    return scale * cheb_t(j, x);
}

int choose_M(double lambda, double eps_cheb) {
    if (lambda < 0.0) throw ConfigError("choose_M: lambda must be non-negative");
    if (!(eps_cheb > 0.0) || eps_cheb >= 1.0)
        throw ConfigError("choose_M: eps_cheb must lie in (0, 1)");
    double m = M_E * lambda + 2.0 * std::log(1.0 / eps_cheb);
    return std::max(2, static_cast<int>(std::ceil(m)));
}

NodeSet make_node_set(int m, int n) {
    if (m < 1) throw ConfigError("make_node_set: M must be >= 1");
    if (n < 1 || n > 24) throw ConfigError("make_node_set: n must be in [1, 24]");

    NodeSet ns;
    ns.M = m;
    ns.cheb_nodes.resize(m);
    ns.mock_nodes.resize(m);
    ns.mock_indices.resize(m);

    const double dim = static_cast<double>(1ULL << n);
    const std::uint64_t max_index = (1ULL << n) - 1;
    for (int k = 1; k <= m; ++k) {
        double x = std::cos((2.0 * k - 1.0) / (2.0 * m) * M_PI);
        auto j = static_cast<std::int64_t>(std::llround((x + 1.0) * dim / 2.0));
        j = std::clamp<std::int64_t>(j, 0, static_cast<std::int64_t>(max_index));
        ns.cheb_nodes[k - 1] = x;
        ns.mock_indices[k - 1] = static_cast<std::uint64_t>(j);
        ns.mock_nodes[k - 1] = 2.0 * static_cast<double>(j) / dim - 1.0;
        ns.max_snap_error = std::max(ns.max_snap_error,
                                     std::fabs(x - ns.mock_nodes[k - 1]));
    }
    for (int k = 0; k + 1 < m; ++k) {
        if (ns.mock_indices[k] == ns.mock_indices[k + 1])
            throw NumericError(
                "make_node_set: Chebyshev nodes " + std::to_string(k + 1) + " and " +
                std::to_string(k + 2) + " both snap to grid index " +
                std::to_string(ns.mock_indices[k]) + " (M = " + std::to_string(m) +
                " too dense for n = " + std::to_string(n) + ")");
    }
    return ns;
}

DenseMatrix build_vandermonde(const std::vector<double>& nodes, int m) {
    DenseMatrix v(m);
    for (int k = 0; k < m; ++k)
        for (int j = 0; j < m; ++j) v.at(k, j) = orthonormal_basis(j, nodes[k], m);
    return v;
}

std::vector<double> solve_coefficients(const DenseMatrix& v, const std::vector<double>& f,
                                       double* condition_out) {
    const int m = v.size;
    if (static_cast<int>(f.size()) != m)
        throw ConfigError("solve_coefficients: dimension mismatch");

    Eigen::MatrixXd ev = to_eigen(v);
    Eigen::VectorXd ef(m);
    for (int i = 0; i < m; ++i) ef(i) = f[i];

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(ev);
    double smin = svd.singularValues()(m - 1);
    double cond = smin > 0.0 ? svd.singularValues()(0) / smin
                             : std::numeric_limits<double>::infinity();
    if (condition_out) *condition_out = cond;
    if (!(cond <= 1e6))
        throw NumericError("solve_coefficients: system is ill-conditioned (estimate " +
                           std::to_string(cond) + " > 1e6)");

    Eigen::VectorXd a = ev.partialPivLu().solve(ef);
    double residual = (ev * a - ef).norm();
    if (residual > 1e-10 * std::max(ef.norm(), 1e-300))
        throw NumericError("solve_coefficients: residual " + std::to_string(residual) +
                           " exceeds 1e-10 * ||f||");

    return std::vector<double>(a.data(), a.data() + m);
}

double ChebyshevInterpolant::evaluate(double x) const {
    double t = std::clamp(x, -1.0, 1.0);
    double theta = std::acos(t);
    double sum = coeffs[0] * std::sqrt(1.0 / M);
    double s2 = std::sqrt(2.0 / M);
    for (int j = 1; j < M; ++j) sum += coeffs[j] * s2 * std::cos(j * theta);
    return sum;
}

double ChebyshevInterpolant::derivative(double x) const {
    double t = std::clamp(x, -1.0, 1.0);
    double theta = std::acos(t);
    double s = std::sin(theta);
    double s2 = std::sqrt(2.0 / M);
    double sum = 0.0;
    if (s < 1e-12) {
        // dT_j/dx at +-1 is (+-1)^(j-1) j^2
        for (int j = 1; j < M; ++j) {
            double sign = t > 0.0 ? 1.0 : (j % 2 == 1 ? 1.0 : -1.0);
            sum += coeffs[j] * s2 * sign * j * j;
        }
    } else {
        for (int j = 1; j < M; ++j)
            sum += coeffs[j] * s2 * j * std::sin(j * theta) / s;
    }
    return sum;
}

ChebyshevInterpolant fit_interpolant(const std::vector<double>& nodes,
                                     const std::vector<double>& f) {
    const int m = static_cast<int>(nodes.size());
    ChebyshevInterpolant interp;
    interp.M = m;
    DenseMatrix v = build_vandermonde(nodes, m);
    interp.coeffs = solve_coefficients(v, f, &interp.condition_estimate);
    return interp;
}

ChebyshevInterpolant fit_interpolant(const NodeSet& nodes, const std::vector<double>& f) {
    ChebyshevInterpolant interp = fit_interpolant(nodes.mock_nodes, f);
    interp.node_set = nodes;
    return interp;
}

std::function<double(double)> differentiate_interpolant(const ChebyshevInterpolant& interp) {
    return [interp](double x) { return interp.derivative(x); };
}

std::function<double(double)> sqrt_recover(std::function<double(double)> approx_sq,
                                           double min_floor,
                                           std::shared_ptr<ClampMonitor> monitor) {
    if (monitor) monitor->min_floor = min_floor;
    return [approx_sq = std::move(approx_sq), monitor](double x) {
        double v = approx_sq(x);
        if (v < 0.0 && monitor) {
            monitor->clamped = true;
            monitor->most_negative = std::min(monitor->most_negative, v);
        }
        return std::sqrt(std::max(v, 0.0));
    };
}

}  // namespace qsx
