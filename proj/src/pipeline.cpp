#include "qsx/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "qsx/common.hpp"
#include "qsx/json_writer.hpp"
#include "qsx/rng.hpp"

namespace qsx {
namespace {

constexpr int kEvalPoints = 2048;

std::string format_double(double v, const char* fmt = "%.6g") {
    char buf[40];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

void append_unique(std::vector<std::string>& out, const std::vector<std::string>& in) {
    for (const auto& w : in)
        if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(w);
}

void validate_config(const ExtractionConfig& cfg) {
    if (cfg.n < 4 || cfg.n > 24)
        throw ConfigError("extract: qubit count must lie in [4, 24], got " +
                          std::to_string(cfg.n));
    if (!(cfg.eps_total > 0.0)) throw ConfigError("extract: eps_total must be positive");
    if (!(cfg.a_psi > 0.0) || cfg.a_psi > 1.0)
        throw ConfigError("extract: a_psi must lie in (0, 1]");
    if (cfg.eps_psi && !(*cfg.eps_psi > 0.0))
        throw ConfigError("extract: eps_psi must be positive");
    if (cfg.cheb_m && *cfg.cheb_m < 2)
        throw ConfigError("extract: cheb_m must be at least 2");
}

}  // namespace

FunctionModel resolve_function(const ExtractionConfig& cfg) {
    FunctionModel f;
    if (cfg.function_spec.rfind("expr:", 0) == 0) {
        f = normalize(parse_function_expr(cfg.function_spec.substr(5)));
    } else if (cfg.function_spec.rfind("file:", 0) == 0) {
        f = normalize(load_function_file(cfg.function_spec.substr(5)));
    } else {
        f = normalize(make_builtin(cfg.function_spec));
    }
    if (cfg.lambda_override) {
        f.lambda = *cfg.lambda_override;
        f.lambda_user_supplied = true;
    }
    resolve_lambda(f);
    return f;
}

double predicted_cost(const ExtractionConfig& cfg, double lambda, double min_psi,
                      double max_psi) {
    if (!(lambda > 0.0) || !(min_psi > 0.0) || !(max_psi > 0.0))
        throw ConfigError("predicted_cost: inputs must be positive");
    double n = cfg.n;
    return (1.0 / cfg.a_psi) * lambda * lambda * n * n * max_psi /
           (cfg.eps_total * min_psi);
}

ExtractionReport extract(const ExtractionConfig& cfg) {
    validate_config(cfg);

    ExtractionReport rep;
    rep.config = cfg;

    FunctionModel f = resolve_function(cfg);
    rep.function_name = f.name;
    rep.lambda = *f.lambda;
    rep.lambda_user_supplied = f.lambda_user_supplied;
    rep.min_psi = f.min_psi;
    rep.max_psi = f.max_psi;

    GridFunction grid = sample_grid(f, cfg.n);
    rep.grid_norm_sq = grid.norm_sq;
    rep.grid_max = grid.grid_max();
    QuantumMemory mem = QuantumMemory::prepare(grid, cfg.a_psi);

    // Interpolation order first (eps_cheb defaults to the total budget, or to
    // eps_psi when the caller pinned that), then the per-node integral budget
    // by inverting the M^2 derivative amplification with a safety factor 10.
    rep.eps_cheb = cfg.eps_cheb ? *cfg.eps_cheb
                   : cfg.eps_psi ? *cfg.eps_psi
                                 : cfg.eps_total;
    rep.cheb_m = cfg.cheb_m ? *cfg.cheb_m : choose_M(rep.lambda, rep.eps_cheb);
    rep.eps_psi = cfg.eps_psi
                      ? *cfg.eps_psi
                      : cfg.eps_total * f.min_psi /
                            (10.0 * static_cast<double>(rep.cheb_m) * rep.cheb_m);
    rep.config.eps_psi = rep.eps_psi;
    rep.config.eps_cheb = rep.eps_cheb;
    rep.config.cheb_m = rep.cheb_m;

    rep.node_set = make_node_set(rep.cheb_m, cfg.n);

    std::vector<double> samples(rep.node_set.M);
    for (int k = 0; k < rep.node_set.M; ++k) {
        std::uint64_t node_seed = derive_seed(cfg.master_seed, 1, static_cast<std::uint64_t>(k));
        PrefixEstimate est = estimate_prefix_integral(
            mem, rep.node_set.mock_indices[k], rep.eps_psi, cfg.mode, node_seed, cfg.mlqae);
        samples[k] = est.psi_hat_value;

        NodeResult nr;
        nr.cut_index = est.cut_index;
        nr.x_hat = est.x_hat;
        nr.psi_hat = est.psi_hat_value;
        nr.psi_oracle = integral_oracle(f, est.x_hat);
        nr.ledger = est.ledger;
        nr.segments = est.segments;
        rep.nodes.push_back(std::move(nr));
        rep.ledger.merge(est.ledger);
        append_unique(rep.warnings, est.warnings);
    }

    ChebyshevInterpolant interp = fit_interpolant(rep.node_set, samples);
    rep.coefficients = interp.coeffs;
    rep.condition_estimate = interp.condition_estimate;

    auto psi_sq_approx = differentiate_interpolant(interp);
    auto monitor = std::make_shared<ClampMonitor>();
    auto psi_approx = sqrt_recover(psi_sq_approx, f.min_psi * f.min_psi, monitor);

    // Error metrics on the interior evaluation grid; the guard band of one
    // grid cell at each end is excluded and reported.
    ErrorMetrics& m = rep.metrics;
    m.eval_points = kEvalPoints;
    m.guard_band = 2.0 / static_cast<double>(mem.dimension());
    const double lo = -1.0 + m.guard_band;
    const double hi = 1.0 - m.guard_band;
    std::vector<double> xs(kEvalPoints);
    for (int i = 0; i < kEvalPoints; ++i)
        xs[i] = lo + (hi - lo) * i / (kEvalPoints - 1);
    std::vector<double> oracle = integral_oracle_many(f, xs);

    KahanSum sq_psi, sq_psi_sq, sq_prefix;
    for (int i = 0; i < kEvalPoints; ++i) {
        double x = xs[i];
        double truth = f.evaluator(x);
        double e_psi = psi_approx(x) - truth;
        double e_sq = psi_sq_approx(x) - truth * truth;
        double e_pref = interp.evaluate(x) - oracle[i];
        m.sup_psi = std::max(m.sup_psi, std::fabs(e_psi));
        m.sup_psi_sq = std::max(m.sup_psi_sq, std::fabs(e_sq));
        m.sup_prefix = std::max(m.sup_prefix, std::fabs(e_pref));
        sq_psi.add(e_psi * e_psi);
        sq_psi_sq.add(e_sq * e_sq);
        sq_prefix.add(e_pref * e_pref);
    }
    m.l2_psi = std::sqrt(sq_psi.value() / kEvalPoints);
    m.l2_psi_sq = std::sqrt(sq_psi_sq.value() / kEvalPoints);
    m.l2_prefix = std::sqrt(sq_prefix.value() / kEvalPoints);

    if (monitor->clamped)
        rep.warnings.push_back(
            "sqrt recovery clamped a negative approximant (most negative " +
            format_double(monitor->most_negative, "%.3e") +
            "; validity threshold min_psi^2 = " +
            format_double(monitor->min_floor, "%.3e") + ")");

    rep.predicted_cost_value = predicted_cost(cfg, rep.lambda, f.min_psi, f.max_psi);

    if (!cfg.out_path.empty()) {
        std::ofstream out(cfg.out_path, std::ios::binary);
        if (!out) throw ConfigError("cannot write report to '" + cfg.out_path + "'");
        out << rep.to_json();
    }
    return rep;
}

std::string ExtractionReport::to_json() const {
    JsonWriter w;
    w.begin_object();

    w.key("config");
    w.begin_object();
    w.key_value("function", config.function_spec);
    w.key_value("n", config.n);
    w.key_value("a_psi", config.a_psi);
    w.key_value("eps_total", config.eps_total);
    w.key_value("eps_psi", eps_psi);
    w.key_value("eps_cheb", eps_cheb);
    w.key_value("mode", mode_name(config.mode));
    w.key_value("seed", config.master_seed);
    w.key_value("cheb_m", cheb_m);
    w.key_value("shots_per_power", config.mlqae.shots_per_power);
    w.key_value("schedule_constant", config.mlqae.schedule_constant);
    w.end_object();

    w.key("function");
    w.begin_object();
    w.key_value("name", function_name);
    w.key_value("lambda", lambda);
    w.key_value("lambda_user_supplied", lambda_user_supplied);
    w.key_value("min_psi", min_psi);
    w.key_value("max_psi", max_psi);
    w.key_value("grid_norm_sq", grid_norm_sq);
    w.key_value("grid_max", grid_max);
    w.end_object();

    w.key("node_set");
    w.begin_object();
    w.key_value("M", node_set.M);
    w.key_value("max_snap_error", node_set.max_snap_error);
    w.key_array("cheb_nodes", node_set.cheb_nodes);
    w.key_array("mock_nodes", node_set.mock_nodes);
    w.key("mock_indices");
    w.begin_array();
    for (auto idx : node_set.mock_indices) w.value(idx);
    w.end_array();
    w.end_object();

    w.key("nodes");
    w.begin_array();
    for (const auto& nr : nodes) {
        w.begin_object();
        w.key_value("X", nr.cut_index);
        w.key_value("x_hat", nr.x_hat);
        w.key_value("psi_hat", nr.psi_hat);
        w.key_value("psi_oracle", nr.psi_oracle);
        w.key_value("abs_error", std::fabs(nr.psi_hat - nr.psi_oracle));
        w.key("ledger");
        w.begin_object();
        w.key_value("prep_queries", nr.ledger.prep_queries);
        w.key_value("grover_applications", nr.ledger.grover_applications);
        w.key_value("shots", nr.ledger.shots);
        w.end_object();
        w.key("segments");
        w.begin_array();
        for (const auto& s : nr.segments) {
            w.begin_object();
            w.key_value("p", s.p);
            w.key_value("W", s.window_start);
            w.key_value("q_hat", s.q_hat);
            w.end_object();
        }
        w.end_array();
        w.end_object();
    }
    w.end_array();

    w.key_array("coefficients", coefficients);
    w.key_value("condition_estimate", condition_estimate);

    w.key("metrics");
    w.begin_object();
    w.key_value("eval_points", metrics.eval_points);
    w.key_value("guard_band", metrics.guard_band);
    w.key_value("sup_psi", metrics.sup_psi);
    w.key_value("l2_psi", metrics.l2_psi);
    w.key_value("sup_psi_sq", metrics.sup_psi_sq);
    w.key_value("l2_psi_sq", metrics.l2_psi_sq);
    w.key_value("sup_prefix", metrics.sup_prefix);
    w.key_value("l2_prefix", metrics.l2_prefix);
    w.end_object();

    w.key("ledger");
    w.begin_object();
    w.key_value("prep_queries", ledger.prep_queries);
    w.key_value("grover_applications", ledger.grover_applications);
    w.key_value("shots", ledger.shots);
    w.end_object();

    w.key_value("predicted_cost", predicted_cost_value);

    w.key("warnings");
    w.begin_array();
    for (const auto& s : warnings) w.value(s);
    w.end_array();

    w.end_object();
    return w.str();
}

std::string SweepResult::to_csv() const {
    std::string out =
        "axis,value,sup_err_psi,l2_err_psi,prep_queries,predicted_cost,M,warnings,error\n";
    for (const auto& r : rows) {
        out += r.axis + ',' + r.value + ',';
        if (r.failed) {
            out += ",,,,,,\"" + r.error + "\"\n";
            continue;
        }
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%llu,%.17g,%d,%zu,\n", r.sup_psi,
                      r.l2_psi, static_cast<unsigned long long>(r.prep_queries),
                      r.predicted, r.cheb_m, r.warning_count);
        out += buf;
    }
    return out;
}

SweepResult sweep(const ExtractionConfig& base, const std::string& axis,
                  const std::vector<std::string>& values) {
    static const std::vector<std::string> kAxes = {"n",   "eps_total", "eps_psi",
                                                   "M",   "a_psi",     "mode"};
    if (std::find(kAxes.begin(), kAxes.end(), axis) == kAxes.end())
        throw ConfigError("sweep: unknown axis '" + axis +
                          "' (expected n, eps_total, eps_psi, M, a_psi, mode)");

    SweepResult result;
    for (std::size_t i = 0; i < values.size(); ++i) {
        SweepRow row;
        row.axis = axis;
        row.value = values[i];
        ExtractionConfig cfg = base;
        cfg.out_path.clear();
        cfg.master_seed = derive_seed(base.master_seed, 4, i);
        try {
            if (axis == "n") cfg.n = std::stoi(values[i]);
            else if (axis == "eps_total") cfg.eps_total = std::stod(values[i]);
            else if (axis == "eps_psi") cfg.eps_psi = std::stod(values[i]);
            else if (axis == "M") cfg.cheb_m = std::stoi(values[i]);
            else if (axis == "a_psi") cfg.a_psi = std::stod(values[i]);
            else cfg.mode = parse_mode(values[i]);

            ExtractionReport rep = extract(cfg);
            row.sup_psi = rep.metrics.sup_psi;
            row.l2_psi = rep.metrics.l2_psi;
            row.prep_queries = rep.ledger.prep_queries;
            row.predicted = rep.predicted_cost_value;
            row.cheb_m = rep.cheb_m;
            row.warning_count = rep.warnings.size();
        } catch (const std::exception& e) {
            row.failed = true;
            row.error = e.what();
        }
        result.rows.push_back(std::move(row));
    }
    return result;
}

namespace {

SuiteResult suite_orthonormality(double tamper) {
    SuiteResult r{"discrete-orthonormality", true, ""};
    double worst = 0.0;
    for (int m : {4, 16, 64}) {
        std::vector<double> nodes(m);
        for (int k = 1; k <= m; ++k)
            nodes[k - 1] = std::cos((2.0 * k - 1.0) / (2.0 * m) * M_PI);
        DenseMatrix v = build_vandermonde(nodes, m);
        if (tamper != 1.0)
            for (int k = 0; k < m; ++k) v.at(k, 0) *= tamper;
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) {
                double dot = 0.0;
                for (int k = 0; k < m; ++k) dot += v.at(k, i) * v.at(k, j);
                worst = std::max(worst, std::fabs(dot - (i == j ? 1.0 : 0.0)));
            }
        }
    }
    r.pass = worst <= 1e-12;
    r.details = "max |V^T V - I| = " + format_double(worst, "%.3e") + " (tol 1e-12)";
    return r;
}

SuiteResult suite_conditioning() {
    SuiteResult r{"exact-node-conditioning", true, ""};
    double worst = 0.0;
    for (int m : {4, 16, 64}) {
        std::vector<double> nodes(m);
        for (int k = 1; k <= m; ++k)
            nodes[k - 1] = std::cos((2.0 * k - 1.0) / (2.0 * m) * M_PI);
        double cond = condition_number(build_vandermonde(nodes, m));
        worst = std::max(worst, std::fabs(cond - 1.0));
    }
    r.pass = worst <= 1e-10;
    r.details = "max |cond - 1| = " + format_double(worst, "%.3e") + " (tol 1e-10)";
    return r;
}

SuiteResult suite_perturbed_system() {
    SuiteResult r{"perturbed-system", true, ""};
    const int m = 16, n = 12;
    NodeSet ns = make_node_set(m, n);
    DenseMatrix v = build_vandermonde(ns.cheb_nodes, m);
    DenseMatrix vp = build_vandermonde(ns.mock_nodes, m);
    DenseMatrix diff(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) diff.at(i, j) = v.at(i, j) - vp.at(i, j);
    double cond = condition_number(vp);
    double norm = spectral_norm(diff);
    double bound = 10.0 * std::pow(m, 2.5) / std::pow(2.0, n);
    r.pass = cond <= 1.5 && norm <= bound;
    r.details = "cond(V_pert) = " + format_double(cond) + " (tol 1.5), ||V - V_pert||_2 = " +
                format_double(norm, "%.3e") + " (bound " + format_double(bound, "%.3e") + ")";
    return r;
}

SuiteResult suite_segmentation() {
    SuiteResult r{"segmentation-equivalence", true, ""};
    const int n = 8;
    double worst = 0.0;
    for (const char* spec : {"constant", "cosine-bump:0.5"}) {
        FunctionModel f = make_builtin(spec);
        GridFunction grid = sample_grid(f, n);
        QuantumMemory mem = QuantumMemory::prepare(grid, 1.0);
        for (std::uint64_t x = 0; x <= (1ULL << n); ++x) {
            PrefixEstimate est =
                estimate_prefix_integral(mem, x, 1e-3, EstimationMode::Exact, 0);
            KahanSum brute;
            for (std::uint64_t j = 0; j < x; ++j)
                brute.add(grid.values[j] * grid.values[j]);
            worst = std::max(worst, std::fabs(est.psi_hat_value -
                                              brute.value() / grid.norm_sq));
        }
    }
    r.pass = worst <= 1e-13;
    r.details = "max |estimate - brute force| = " + format_double(worst, "%.3e") +
                " over 514 cuts (tol 1e-13)";
    return r;
}

SuiteResult suite_grover_identity() {
    SuiteResult r{"grover-subspace-identity", true, ""};
    double worst = 0.0;
    for (double a_psi : {1.0, 0.6}) {
        FunctionModel f = make_builtin("cosine-bump:0.5");
        GridFunction grid = sample_grid(f, 6);
        QuantumMemory mem = QuantumMemory::prepare(grid, a_psi);
        GoodSet window{8, 3};
        double theta = std::asin(std::sqrt(mem.prefix_probability(window)));
        for (int reps = 0; reps <= 3; ++reps) {
            double expected = std::pow(std::sin((2.0 * reps + 1.0) * theta), 2);
            double measured = apply_grover(mem, window, reps).prefix_probability(window);
            worst = std::max(worst, std::fabs(measured - expected));
        }
    }
    r.pass = worst <= 1e-10;
    r.details = "max |P - sin^2((2r+1)theta)| = " + format_double(worst, "%.3e") +
                " (tol 1e-10)";
    return r;
}

SuiteResult suite_derivative_fd() {
    SuiteResult r{"derivative-finite-difference", true, ""};
    FunctionModel f = make_builtin("cosine-bump:0.5");
    const int m = 12;
    std::vector<double> nodes(m), samples(m);
    for (int k = 1; k <= m; ++k)
        nodes[k - 1] = std::cos((2.0 * k - 1.0) / (2.0 * m) * M_PI);
    for (int k = 0; k < m; ++k) samples[k] = integral_oracle(f, nodes[k]);
    ChebyshevInterpolant interp = fit_interpolant(nodes, samples);

    SplitMix64 rng(20240811);
    const double h = 1e-4;
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
        double x = rng.uniform(-0.95, 0.95);
        double central = (interp.evaluate(x + h) - interp.evaluate(x - h)) / (2.0 * h);
        worst = std::max(worst, std::fabs(interp.derivative(x) - central));
    }
    r.pass = worst <= 1e-6;
    r.details = "max |P' - central difference| = " + format_double(worst, "%.3e") +
                " at 50 points (tol 1e-6)";
    return r;
}

}  // namespace

VerifyReport verify_suites(const VerifyOptions& opts) {
    VerifyReport rep;
    rep.suites.push_back(suite_orthonormality(opts.basis_scale_tamper));
    rep.suites.push_back(suite_conditioning());
    rep.suites.push_back(suite_perturbed_system());
    rep.suites.push_back(suite_segmentation());
    rep.suites.push_back(suite_grover_identity());
    rep.suites.push_back(suite_derivative_fd());
    for (const auto& s : rep.suites) rep.all_pass = rep.all_pass && s.pass;
    return rep;
}

}  // namespace qsx
