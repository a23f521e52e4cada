#include "qsx/quadrature.hpp"

#include <cmath>
#include <queue>

#include "qsx/common.hpp"

namespace qsx {
namespace {

// 15-point Kronrod extension of 7-point Gauss-Legendre (QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct Panel {
    double k15;
    double err;
};

std::string format_interval(double a, double b) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "[%.6g, %.6g]", a, b);
    return buf;
}

Panel evaluate_panel(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double halfwidth = 0.5 * (b - a);

    double fv[15];
    double fc = f(center);
    double g7 = kWg[3] * fc;
    double k15 = kWgk[7] * fc;
    fv[14] = fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = halfwidth * kXgk[i];
        fv[2 * i] = f(center + dx);
        fv[2 * i + 1] = f(center - dx);
        const double pair = fv[2 * i] + fv[2 * i + 1];
        k15 += kWgk[i] * pair;
        if (i % 2 == 1) g7 += kWg[i / 2] * pair;
    }

    // QUADPACK-style error estimate: the raw |K15 - G7| gap, damped by the
    // integrand roughness so endpoint-steep integrands do not stall.
    const double mean = k15 * 0.5;
    double resasc = kWgk[7] * std::fabs(fc - mean);
    for (int i = 0; i < 7; ++i)
        resasc += kWgk[i] * (std::fabs(fv[2 * i] - mean) + std::fabs(fv[2 * i + 1] - mean));
    resasc *= std::fabs(halfwidth);

    double err = std::fabs((k15 - g7) * halfwidth);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));

    g7 *= halfwidth;
    k15 *= halfwidth;
    if (!std::isfinite(k15)) {
        throw NumericError("quadrature: non-finite integrand on " +
                           format_interval(a, b));
    }
    return {k15, err};
}

struct Interval {
    double a, b;
    double value, err;
    int depth;

    bool operator<(const Interval& other) const {
        if (err != other.err) return err < other.err;  // max-heap on error
        return a > other.a;                            // deterministic tie-break
    }
};

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts) {
    if (a == b) return 0.0;

    // Worst-interval-first refinement against a global error budget.
    Panel first = evaluate_panel(f, a, b);
    std::priority_queue<Interval> queue;
    queue.push({a, b, first.k15, first.err, 0});
    double total_err = first.err;

    while (total_err > opts.abs_tol) {
        Interval worst = queue.top();
        queue.pop();
        if (worst.depth >= opts.max_depth)
            throw NumericError("quadrature: no convergence after depth " +
                               std::to_string(worst.depth) + " on " +
                               format_interval(worst.a, worst.b));
        const double mid = 0.5 * (worst.a + worst.b);
        Panel left = evaluate_panel(f, worst.a, mid);
        Panel right = evaluate_panel(f, mid, worst.b);
        total_err += left.err + right.err - worst.err;
        queue.push({worst.a, mid, left.k15, left.err, worst.depth + 1});
        queue.push({mid, worst.b, right.k15, right.err, worst.depth + 1});
    }

    KahanSum sum;
    while (!queue.empty()) {
        sum.add(queue.top().value);
        queue.pop();
    }
    return sum.value();
}

}  // namespace qsx
