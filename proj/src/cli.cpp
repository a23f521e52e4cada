#include "qsx/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qsx/common.hpp"
#include "qsx/pipeline.hpp"

namespace qsx {
namespace {

struct CliFlags {
    std::string function = "cosine-bump:0.5";
    int qubits = 12;
    double a_psi = 1.0;
    double eps_total = 0.05;
    double eps_psi = 0.0;
    std::string mode = "exact";
    std::uint64_t seed = 0;
    int cheb_m = 0;
    std::string out;
    std::string axis;
    std::vector<std::string> values;
};

void add_common_flags(CLI::App* cmd, CliFlags& f) {
    cmd->add_option("--function", f.function,
                    "builtin name, expr:<text>, or file:<path>");
    cmd->add_option("--qubits", f.qubits, "data qubit count n")->check(CLI::Range(4, 24));
    cmd->add_option("--a-psi", f.a_psi, "preparation sub-normalization in (0,1]");
    cmd->add_option("--eps-total", f.eps_total, "total extraction error target");
    cmd->add_option("--eps-psi", f.eps_psi, "per-node integral error target (default derived)");
    cmd->add_option("--mode", f.mode, "exact | noisy | grover-ml");
    cmd->add_option("--seed", f.seed, "master seed");
    cmd->add_option("--cheb-m", f.cheb_m, "interpolation order override");
    cmd->add_option("--out", f.out, "output path (JSON report / CSV)");
}

ExtractionConfig to_config(const CliFlags& f) {
    ExtractionConfig cfg;
    cfg.function_spec = f.function;
    cfg.n = f.qubits;
    cfg.a_psi = f.a_psi;
    cfg.eps_total = f.eps_total;
    if (f.eps_psi > 0.0) cfg.eps_psi = f.eps_psi;
    cfg.mode = parse_mode(f.mode);
    cfg.master_seed = f.seed;
    if (f.cheb_m > 0) cfg.cheb_m = f.cheb_m;
    cfg.out_path = f.out;
    return cfg;
}

int run_extract(const CliFlags& f) {
    ExtractionReport rep = extract(to_config(f));
    std::printf("function        %s\n", rep.function_name.c_str());
    std::printf("lambda          %.6g%s\n", rep.lambda,
                rep.lambda_user_supplied ? " (user)" : " (estimated)");
    std::printf("M               %d   (max snap error %.3e)\n", rep.cheb_m,
                rep.node_set.max_snap_error);
    std::printf("eps_psi         %.6g\n", rep.eps_psi);
    std::printf("sup |psi~-psi|  %.6e\n", rep.metrics.sup_psi);
    std::printf("L2  |psi~-psi|  %.6e\n", rep.metrics.l2_psi);
    std::printf("sup |Psi~-Psi|  %.6e\n", rep.metrics.sup_prefix);
    std::printf("prep queries    %llu\n",
                static_cast<unsigned long long>(rep.ledger.prep_queries));
    std::printf("predicted cost  %.6e\n", rep.predicted_cost_value);
    for (const auto& warning : rep.warnings)
        std::printf("warning: %s\n", warning.c_str());
    if (!f.out.empty()) std::printf("report written to %s\n", f.out.c_str());
    return 0;
}

int run_sweep(const CliFlags& f) {
    if (f.axis.empty() || f.values.empty())
        throw ConfigError("sweep requires --axis and --values");
    ExtractionConfig cfg = to_config(f);
    cfg.out_path.clear();
    SweepResult result = sweep(cfg, f.axis, f.values);
    std::string csv = result.to_csv();
    if (f.out.empty()) {
        std::fputs(csv.c_str(), stdout);
    } else {
        std::ofstream out(f.out, std::ios::binary);
        if (!out) throw ConfigError("cannot write CSV to '" + f.out + "'");
        out << csv;
        std::printf("sweep written to %s\n", f.out.c_str());
    }
    return 0;
}

int run_verify() {
    VerifyReport rep = verify_suites();
    for (const auto& s : rep.suites)
        std::printf("%-32s %s  %s\n", s.name.c_str(), s.pass ? "PASS" : "FAIL",
                    s.details.c_str());
    if (!rep.all_pass) {
        std::printf("verification FAILED\n");
        return 3;
    }
    std::printf("all suites passed\n");
    return 0;
}

int run_predict(const CliFlags& f) {
    ExtractionConfig cfg = to_config(f);
    FunctionModel model = resolve_function(cfg);
    double cost = predicted_cost(cfg, *model.lambda, model.min_psi, model.max_psi);
    std::printf("lambda          %.6g\n", *model.lambda);
    std::printf("min/max psi     %.6g / %.6g\n", model.min_psi, model.max_psi);
    std::printf("predicted cost  %.6e\n", cost);
    return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"amplitude-encoded function readout simulator"};
    app.require_subcommand(1);

    CliFlags flags;
    CLI::App* cmd_extract = app.add_subcommand("extract", "run one full extraction");
    add_common_flags(cmd_extract, flags);
    CLI::App* cmd_sweep = app.add_subcommand("sweep", "run one extraction per axis value");
    add_common_flags(cmd_sweep, flags);
    cmd_sweep->add_option("--axis", flags.axis, "n | eps_total | eps_psi | M | a_psi | mode");
    cmd_sweep->add_option("--values", flags.values, "axis values")->delimiter(',');
    CLI::App* cmd_verify = app.add_subcommand("verify", "run the module invariant suites");
    CLI::App* cmd_predict = app.add_subcommand("predict", "evaluate the cost bound");
    add_common_flags(cmd_predict, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (cmd_extract->parsed()) return run_extract(flags);
        if (cmd_sweep->parsed()) return run_sweep(flags);
        if (cmd_verify->parsed()) return run_verify();
        if (cmd_predict->parsed()) return run_predict(flags);
    } catch (const NumericError& e) {
        std::fprintf(stderr, "numeric failure: %s\n", e.what());
        return 2;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 1;
}

}  // namespace qsx
