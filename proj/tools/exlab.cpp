// exlab: desk-scale statistics for Frobenius traces, trace residues, and
// fractional parts of prime powers.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "exlab/cli.hpp"

namespace {

void add_common_flags(CLI::App* cmd, exlab::ExperimentConfig& cfg, std::string& config_path,
                      std::string& alpha_str) {
    cmd->add_option("--config", config_path, "config file (key = value lines)");
    cmd->add_option("--curve", cfg.curve_label, "built-in label (11a3, 37a1, x3-x, x3+x, x3-2) or a1,a2,a3,a4,a6");
    cmd->add_option("--x", cfg.x, "range parameter x");
    cmd->add_option("--ell", cfg.ell, "odd prime moduli")->delimiter(',');
    cmd->add_option("--omega", cfg.omega, "sub-window parameter omega >= 1");
    cmd->add_option("--alpha", alpha_str, "positive real alpha (decimals or fractions like 2/5)");
    cmd->add_option("--theta", cfg.theta, "exponent theta in [0,1]");
    cmd->add_option("--lambda", cfg.lambda, "exponent lambda > 0");
    cmd->add_option("--delta1", cfg.delta1, "window lower end");
    cmd->add_option("--delta2", cfg.delta2, "window upper end");
    cmd->add_option("--bins", cfg.bins, "histogram bins");
    cmd->add_option("--threads", cfg.threads, "worker threads (0 = all cores)");
    cmd->add_option("--cache", cfg.cache_path, "trace cache file (default $EXLAB_CACHE)");
    cmd->add_option("--out", cfg.out_path, "JSON report path");
    cmd->add_option("--csv", cfg.csv_path, "per-prime CSV path");
    cmd->add_option("--t", cfg.trace_t, "target trace (Lang-Trotter style reports)");
    cmd->add_option("--sign", cfg.sign, "extremal sign: + or -");
    cmd->add_option("--theorem", cfg.theorem, "envelope id, e.g. Thm1.3");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exlab: prime, trace, and fractional-part experiments"};
    app.require_subcommand(1);

    exlab::ExperimentConfig cfg;
    std::string config_path, alpha_str;

    const std::vector<std::pair<std::string, std::string>> subcommands = {
        {"sieve", "prime counts and the sub-window plan"},
        {"ap", "Frobenius traces for good primes up to x"},
        {"classes", "GL2(F_ell) conjugacy classes and trace fibers"},
        {"joint", "a_p == [2 sqrt(p)] mod ell over (x, 2x]"},
        {"jointzero", "a_p == [2 sqrt(p)] == 0 mod ell over (x, 2x]"},
        {"extremal", "extremal primes a_p = +/-[2 sqrt(p)] up to x"},
        {"satotate", "normalized-trace histogram against the semicircle"},
        {"residues", "a_p mod ell histogram against trace-fiber masses"},
        {"balog", "discrepancy of {alpha p^theta} over p <= x"},
        {"landau", "{alpha p^theta} < p^-lambda counts"},
        {"meanvalue", "Dirichlet-polynomial mean value against its envelope"},
        {"envelope", "evaluate an error-term envelope"},
        {"verify", "run the built-in oracle suite"},
    };
    for (const auto& [name, desc] : subcommands)
        add_common_flags(app.add_subcommand(name, desc), cfg, config_path, alpha_str);

    CLI11_PARSE(app, argc, argv);

    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw std::invalid_argument("cannot open config file " + config_path);
            std::stringstream ss;
            ss << in.rdbuf();
            exlab::ExperimentConfig from_file = exlab::parse_config(ss.str());
            // flags given on the command line override file values
            std::string cmdline_curve = cfg.curve_label;
            exlab::ExperimentConfig merged = from_file;
            CLI::App* sub = app.get_subcommands().front();
            auto overridden = [&](const char* flag) { return sub->count(flag) > 0; };
            if (overridden("--curve")) merged.curve_label = cfg.curve_label;
            if (overridden("--x")) merged.x = cfg.x;
            if (overridden("--ell")) merged.ell = cfg.ell;
            if (overridden("--omega")) merged.omega = cfg.omega;
            if (overridden("--theta")) merged.theta = cfg.theta;
            if (overridden("--lambda")) merged.lambda = cfg.lambda;
            if (overridden("--delta1")) merged.delta1 = cfg.delta1;
            if (overridden("--delta2")) merged.delta2 = cfg.delta2;
            if (overridden("--bins")) merged.bins = cfg.bins;
            if (overridden("--threads")) merged.threads = cfg.threads;
            if (overridden("--cache")) merged.cache_path = cfg.cache_path;
            if (overridden("--out")) merged.out_path = cfg.out_path;
            if (overridden("--csv")) merged.csv_path = cfg.csv_path;
            if (overridden("--t")) merged.trace_t = cfg.trace_t;
            if (overridden("--sign")) merged.sign = cfg.sign;
            if (overridden("--theorem")) merged.theorem = cfg.theorem;
            cfg = merged;
            (void)cmdline_curve;
        }
        cfg.experiment = app.get_subcommands().front()->get_name();
        if (!alpha_str.empty()) exlab::apply_config_key(cfg, "alpha", alpha_str);

        exlab::RunResult res = exlab::run(cfg);
        if (cfg.out_path.empty() && cfg.experiment != "verify")
            std::cout << res.report.dump(2) << "\n";
        else
            for (const auto& f : res.files_written) std::cerr << "wrote " << f << "\n";
        return res.exit_code;
    } catch (const exlab::uncertain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
