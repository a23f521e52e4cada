#include "qsx/function_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qsx/common.hpp"
#include "qsx/expression.hpp"
#include "qsx/quadrature.hpp"

namespace qsx {
namespace {

constexpr int kCheckGridPoints = 10000;
constexpr int kLambdaGridPoints = 4096;

// Scans the check grid, rejecting non-positive or non-finite values, and
// fills min_psi/max_psi.
void run_check_grid(FunctionModel& f) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int i = 0; i < kCheckGridPoints; ++i) {
        double x = -1.0 + 2.0 * i / (kCheckGridPoints - 1);
        double v = f.evaluator(x);
        if (!std::isfinite(v))
            throw DomainError("function '" + f.name + "' is non-finite at x = " +
                              std::to_string(x));
        if (v <= 0.0)
            throw DomainError("function '" + f.name + "' is not strictly positive at x = " +
                              std::to_string(x) + " (value " + std::to_string(v) + ")");
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    f.min_psi = lo;
    f.max_psi = hi;
}

double parse_builtin_param(const std::string& spec, std::size_t colon, double fallback) {
    if (colon == std::string::npos) return fallback;
    try {
        return std::stod(spec.substr(colon + 1));
    } catch (const std::exception&) {
        throw ConfigError("bad builtin parameter in '" + spec + "'");
    }
}

}  // namespace

double GridFunction::grid_max() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, v);
    return m;
}

FunctionModel make_builtin(const std::string& spec) {
    std::size_t colon = spec.find(':');
    std::string base = spec.substr(0, colon);

    FunctionModel f;
    f.provenance = Provenance::Builtin;

    if (base == "constant") {
        f.name = "constant";
        f.evaluator = [](double) { return M_SQRT1_2; };
        f.lambda = M_SQRT1_2;  // only the j = 0 term survives
    } else if (base == "cosine-bump") {
        double a = parse_builtin_param(spec, colon, 0.5);
        if (a <= 0.0 || a >= 1.0) throw ConfigError("cosine-bump parameter must be in (0,1)");
        f.name = "cosine-bump:" + std::to_string(a);
        f.evaluator = [a](double x) { return std::sqrt((1.0 + a * std::cos(M_PI * x)) / 2.0); };
    } else if (base == "gaussian") {
        double alpha = parse_builtin_param(spec, colon, 4.0);
        if (alpha <= 0.0) throw ConfigError("gaussian parameter must be positive");
        f.name = "gaussian:" + std::to_string(alpha);
        f.evaluator = [alpha](double x) { return std::exp(-alpha * x * x); };
        run_check_grid(f);
        return normalize(f);
    } else {
        throw ConfigError("unknown builtin function '" + spec +
                          "' (expected constant, cosine-bump[:a], gaussian[:alpha])");
    }
    run_check_grid(f);
    return f;
}

FunctionModel parse_function_expr(const std::string& src) {
    Expression expr = Expression::parse(src);
    FunctionModel f;
    f.name = "expr";
    f.provenance = Provenance::ParsedExpression;
    f.evaluator = [expr](double x) { return expr.evaluate(x); };
    run_check_grid(f);
    return f;
}

FunctionModel load_function_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open function file '" + path + "'");

    std::optional<double> lambda;
    std::optional<std::string> expr_line;
    std::vector<double> table;
    bool in_table = false;
    std::size_t table_count = 0;

    std::string line;
    while (std::getline(in, line)) {
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::string body = line.substr(first);

        if (body.rfind("lambda:", 0) == 0) {
            lambda = std::stod(body.substr(7));
        } else if (body.rfind("expr:", 0) == 0) {
            std::string e = body.substr(5);
            std::size_t s = e.find_first_not_of(" \t");
            expr_line = s == std::string::npos ? "" : e.substr(s);
        } else if (body.rfind("table:", 0) == 0) {
            table_count = static_cast<std::size_t>(std::stoull(body.substr(6)));
            in_table = true;
        } else if (in_table) {
            std::istringstream vs(body);
            double v;
            while (vs >> v) table.push_back(v);
        } else {
            throw ConfigError("unrecognized line in function file: '" + body + "'");
        }
    }

    if (expr_line && in_table)
        throw ConfigError("function file holds both an expression and a table");

    if (expr_line) {
        FunctionModel f = parse_function_expr(*expr_line);
        if (lambda) {
            f.lambda = *lambda;
            f.lambda_user_supplied = true;
        }
        return f;
    }

    if (!in_table) throw ConfigError("function file holds neither 'expr:' nor 'table:'");
    if (table.size() != table_count)
        throw ConfigError("function table declares " + std::to_string(table_count) +
                          " values but provides " + std::to_string(table.size()));
    std::size_t n = 0;
    while ((1ULL << n) < table.size()) ++n;
    if ((1ULL << n) != table.size() || table.empty())
        throw ConfigError("function table length must be a power of two");
    if (!lambda)
        throw ConfigError("tabulated function input requires a 'lambda:' header");

    // Piecewise-linear through (x_j, v_j); held constant right of the last
    // grid point (the grid has no sample at x = +1).
    auto values = std::make_shared<std::vector<double>>(std::move(table));
    double dx = 2.0 / static_cast<double>(values->size());
    FunctionModel f;
    f.name = "table:" + path;
    f.provenance = Provenance::Tabulated;
    f.lambda = *lambda;
    f.lambda_user_supplied = true;
    f.evaluator = [values, dx](double x) {
        double t = (x + 1.0) / dx;
        auto last = static_cast<double>(values->size() - 1);
        if (t <= 0.0) return values->front();
        if (t >= last) return values->back();
        auto j = static_cast<std::size_t>(t);
        double frac = t - static_cast<double>(j);
        return (*values)[j] * (1.0 - frac) + (*values)[j + 1] * frac;
    };
    run_check_grid(f);
    return f;
}

FunctionModel normalize(const FunctionModel& f) {
    auto base = f.evaluator;
    double integral = integrate([&base](double x) {
        double v = base(x);
        return v * v;
    }, -1.0, 1.0);
    if (!(integral > 0.0) || !std::isfinite(integral))
        throw NumericError("normalize: squared integral is not positive and finite");

    double factor = 1.0 / std::sqrt(integral);
    FunctionModel out = f;
    out.evaluator = [base, factor](double x) { return factor * base(x); };
    out.scale = f.scale * factor;
    out.min_psi = f.min_psi * factor;
    out.max_psi = f.max_psi * factor;
    if (!f.lambda_user_supplied) out.lambda.reset();  // scale changes the bound
    return out;
}

double integral_oracle(const FunctionModel& f, double x) {
    if (x < -1.0 || x > 1.0)
        throw ConfigError("integral_oracle: x must lie in [-1, 1]");
    auto base = f.evaluator;
    return integrate([&base](double t) {
        double v = base(t);
        return v * v;
    }, -1.0, x);
}

std::vector<double> integral_oracle_many(const FunctionModel& f,
                                         const std::vector<double>& ascending_xs) {
    auto base = f.evaluator;
    auto sq = [&base](double t) {
        double v = base(t);
        return v * v;
    };
    std::vector<double> out;
    out.reserve(ascending_xs.size());
    KahanSum acc;
    double prev = -1.0;
    for (double x : ascending_xs) {
        if (x < prev) throw ConfigError("integral_oracle_many: points must ascend");
        if (x > 1.0 || x < -1.0) throw ConfigError("integral_oracle_many: x outside [-1, 1]");
        QuadratureOptions opts;
        opts.abs_tol = 1e-12 * std::max(x - prev, 1e-6) / 2.0;
        acc.add(integrate(sq, prev, x, opts));
        out.push_back(acc.value());
        prev = x;
    }
    return out;
}

GridFunction sample_grid(const FunctionModel& f, int n) {
    if (n < 1 || n > 24)
        throw ConfigError("sample_grid: qubit count must be in [1, 24], got " +
                          std::to_string(n));
    GridFunction g;
    g.n = n;
    std::size_t size = 1ULL << n;
    g.values.resize(size);
    double inv = 1.0 / static_cast<double>(size);
    KahanSum norm;
    for (std::size_t j = 0; j < size; ++j) {
        double x = 2.0 * static_cast<double>(j) * inv - 1.0;
        double v = f.evaluator(x);
        g.values[j] = v;
        norm.add(v * v);
    }
    g.norm_sq = norm.value();
    return g;
}

double estimate_lambda(const FunctionModel& f, int k_max) {
    if (k_max < 0 || k_max > 8)
        throw ConfigError("estimate_lambda: k_max must be in [0, 8]");

    double best = 0.0;
    for (int j = 0; j <= k_max; ++j) {
        // Step chosen so the Richardson-corrected truncation (h^4) and the
        // subtractive roundoff (eps 2^j / h^j) balance.
        double h = std::pow(std::numeric_limits<double>::epsilon(), 1.0 / (j + 4));
        double halfwidth = 0.5 * j * h;

        // High-order maxima often sit at the interval ends. Keep the full
        // grid when the evaluator extends finitely past +-1; otherwise pull
        // the grid in by the stencil halfwidth.
        double probe_lo = f.evaluator(-1.0 - halfwidth);
        double probe_hi = f.evaluator(1.0 + halfwidth);
        bool extendable = std::isfinite(probe_lo) && std::isfinite(probe_hi);
        double edge = extendable ? 1.0 : 1.0 - halfwidth;

        auto fd = [&](double x, double step) {
            // Central difference for the j-th derivative, O(step^2).
            double sum = 0.0;
            double sign = 1.0;
            double binom = 1.0;
            for (int i = 0; i <= j; ++i) {
                sum += sign * binom * f.evaluator(x + (0.5 * j - i) * step);
                sign = -sign;
                binom = binom * (j - i) / (i + 1);
            }
            return sum / std::pow(step, j);
        };

        double order_max = 0.0;
        for (int i = 0; i < kLambdaGridPoints; ++i) {
            double x = -edge + 2.0 * edge * i / (kLambdaGridPoints - 1);
            double d;
            if (j == 0) {
                d = f.evaluator(x);
            } else {
                double coarse = fd(x, h);
                double fine = fd(x, 0.5 * h);
                d = (4.0 * fine - coarse) / 3.0;
            }
            if (!std::isfinite(d))
                throw NumericError("estimate_lambda: non-finite derivative estimate at order " +
                                   std::to_string(j));
            order_max = std::max(order_max, std::fabs(d));
        }
        best = std::max(best, std::pow(order_max, 1.0 / (j + 1)));
    }
    return best;
}

double resolve_lambda(FunctionModel& f, int k_max) {
    if (f.lambda) return *f.lambda;
    double est = estimate_lambda(f, k_max);
    f.lambda = est;
    return est;
}

}  // namespace qsx
