#pragma once

#include <functional>

namespace qsx {

// Adaptive bisection over a fixed Gauss(7)/Kronrod(15) panel. Kept deliberately
// separate from the Chebyshev machinery so it can serve as an independent
// ground-truth oracle for integrals of the functions under test.
struct QuadratureOptions {
    double abs_tol = 1e-12;
    int max_depth = 40;
};

// Integrates f over [a, b]. Throws NumericError if the panel error estimate
// still exceeds the local tolerance at max_depth, or if f is non-finite.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts = {});

}  // namespace qsx
