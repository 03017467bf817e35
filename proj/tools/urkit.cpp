// urkit: Dickey-Fuller unit root testing toolkit.
//
// Subcommands:
//   test        run one estimation pipeline on a CSV series
//   simulate    draw a series from the configured DGP
//   cv          tabulate Monte Carlo critical values
//   experiment  size/power, variance, or efficiency experiment
//
// Exit codes: 0 success, 1 usage/config/parse error, 2 degenerate input.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "urkit/errors.hpp"
#include "urkit/io.hpp"
#include "urkit/montecarlo.hpp"

namespace {

using namespace urkit;

int resolve_threads(int cli_threads) {
    if (cli_threads > 0) return cli_threads;
    if (const char* env = std::getenv("URKIT_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 1;
}

std::string sig6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::ostream& open_or_stdout(const std::string& path, std::ofstream& file) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw ParseError("cannot open output file: " + path);
    return file;
}

std::string join_args(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += " ";
        s += argv[i];
    }
    return s;
}

struct TestOptions {
    std::string data;
    std::string method = "zeropad";
    std::string det = "c";
    std::string k = "0";
    std::string cv_path;
    std::string out;
};

int run_test(const TestOptions& opt, const std::string& command) {
    std::vector<double> y = read_series(opt.data);
    const long T = static_cast<long>(y.size());

    auto method = method_from_name(opt.method);
    if (!method) {
        std::cerr << "urkit: unknown method '" << opt.method << "'\n";
        return 1;
    }
    DetSpec spec = DetSpec::parse(opt.det);
    int k;
    if (opt.k == "auto") {
        k = schwert_lag_rule(T);
    } else {
        try {
            k = std::stoi(opt.k);
        } catch (...) {
            std::cerr << "urkit: bad --k value '" << opt.k << "'\n";
            return 1;
        }
    }

    UnitRootResult r = [&] {
        switch (*method) {
            case Method::OneStep:
                return one_step_df(y, spec, k);
            case Method::TwoStep:
                return two_step_df(y, spec, k, TwoStepForm::Levels);
            case Method::ResidualOnly:
                return residual_only_df(y, spec, k);
            case Method::ZeroPadded:
            default:
                return zero_padded_df(y, spec, k);
        }
    }();

    std::cout << "method     : " << method_name(r.method) << "\n";
    std::cout << "det        : " << spec.to_string() << "\n";
    std::cout << "T          : " << T << "   T_eff: " << r.t_effective << "   k: " << r.k
              << "   m: " << r.m << "\n";
    std::cout << "rho_hat    : " << sig6(r.rho_hat) << "   se: " << sig6(r.se_rho) << "\n";
    std::cout << "t_DF       : " << sig6(r.t_df) << "\n";
    std::cout << "F          : " << sig6(r.f_stat) << "\n";
    std::cout << "chi        : " << sig6(r.chi) << "\n";
    std::cout << "t_LM       : " << sig6(r.t_lm) << "\n";
    if (r.gamma_structural) {
        std::cout << "gamma      :";
        const auto labels = spec.labels();
        for (std::size_t i = 0; i < r.gamma_structural->size(); ++i) {
            std::cout << " " << labels[i] << "=" << sig6((*r.gamma_structural)[i]);
        }
        std::cout << "\n";
    }
    std::cout << "design     : [";
    for (std::size_t i = 0; i < r.design_labels.size(); ++i) {
        if (i) std::cout << ", ";
        std::cout << r.design_labels[i];
    }
    std::cout << "]\n";

    if (!opt.cv_path.empty()) {
        CriticalValueTable cv = read_cv_csv(opt.cv_path);
        std::cout << "decisions (reject H0: unit root when statistic < critical value)\n";
        for (double q : {0.01, 0.05, 0.10}) {
            for (Statistic s : {Statistic::TDf, Statistic::TLm}) {
                if (!cv.has(*method, s, q)) continue;
                const double crit = cv.lookup(*method, s, q);
                const double stat = (s == Statistic::TDf) ? r.t_df : r.t_lm;
                std::cout << "  " << statistic_name(s) << " @ " << sig6(q * 100) << "%: " << sig6(stat)
                          << (stat < crit ? " < " : " >= ") << sig6(crit)
                          << (stat < crit ? "  -> reject" : "  -> accept") << "\n";
            }
        }
    }

    if (!opt.out.empty()) {
        std::ofstream file;
        std::ostream& os = open_or_stdout(opt.out, file);
        RunManifest manifest{command, "method=" + method_name(r.method) + " det=" + spec.to_string() +
                                          " k=" + std::to_string(r.k) + " T=" + std::to_string(T),
                             0};
        manifest.write(os);
        os << "field,value\n";
        os << "method," << method_name(r.method) << "\n";
        os << "rho_hat," << format_full(r.rho_hat) << "\n";
        os << "se_rho," << format_full(r.se_rho) << "\n";
        os << "t_df," << format_full(r.t_df) << "\n";
        os << "f_stat," << format_full(r.f_stat) << "\n";
        os << "chi," << format_full(r.chi) << "\n";
        os << "t_lm," << format_full(r.t_lm) << "\n";
        os << "k," << r.k << "\n";
        os << "t_effective," << r.t_effective << "\n";
        os << "m," << r.m << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dickey-Fuller unit root testing toolkit"};
    app.require_subcommand(1);
    const std::string command = join_args(argc, argv);

    // --- test ---
    TestOptions topt;
    auto* test = app.add_subcommand("test", "run a unit root test on a CSV series");
    test->add_option("--data", topt.data, "input series CSV")->required();
    test->add_option("--method", topt.method, "onestep|twostep|residual|zeropad");
    test->add_option("--det", topt.det, "deterministic spec (none|c|ct|poly:r|break:TB[:trend]|custom:file)");
    test->add_option("--k", topt.k, "augmentation lags, integer or 'auto'");
    test->add_option("--cv", topt.cv_path, "critical value table CSV");
    test->add_option("--out", topt.out, "write machine-readable report CSV");

    // --- simulate ---
    struct {
        double alpha = 1.0;
        double sigma = 1.0;
        double z0 = 0.0;
        long burn_in = 0;
        long T = 100;
        std::uint64_t seed = 0;
        std::string det = "none";
        std::string gamma;
        std::string error_ar;
        std::string innovations = "gaussian";
        std::string out;
    } sopt;
    auto* sim = app.add_subcommand("simulate", "simulate a series from the DGP");
    sim->add_option("--alpha", sopt.alpha, "AR root of the stochastic component");
    sim->add_option("--sigma", sopt.sigma, "innovation standard deviation");
    sim->add_option("--z0", sopt.z0, "initial condition");
    sim->add_option("--burn-in", sopt.burn_in, "pre-sample draws to discard");
    sim->add_option("--T", sopt.T, "series length")->required();
    sim->add_option("--seed", sopt.seed, "base seed");
    sim->add_option("--det", sopt.det, "deterministic spec");
    sim->add_option("--gamma", sopt.gamma, "comma list of deterministic coefficients");
    sim->add_option("--error-ar", sopt.error_ar, "comma list b_1..b_k of the error AR polynomial");
    sim->add_option("--innovations", sopt.innovations, "gaussian or t:df");
    sim->add_option("--out", sopt.out, "output CSV (default stdout)");

    // --- cv / experiment ---
    struct {
        std::string config;
        std::string out;
        int threads = 0;
    } copt, eopt;
    auto* cv = app.add_subcommand("cv", "tabulate Monte Carlo critical values");
    cv->add_option("--config", copt.config, "experiment config file")->required();
    cv->add_option("--out", copt.out, "output CSV (default stdout)");
    cv->add_option("--threads", copt.threads, "worker threads (URKIT_THREADS fallback)");

    auto* exp = app.add_subcommand("experiment", "run a comparison experiment");
    exp->add_option("--config", eopt.config, "experiment config file")->required();
    exp->add_option("--out", eopt.out, "output CSV (default stdout)");
    exp->add_option("--threads", eopt.threads, "worker threads (URKIT_THREADS fallback)");
    std::string kind = "sizepower";
    exp->add_option("--kind", kind, "sizepower|variance|efficiency");
    std::string power_out;
    exp->add_option("--power-out", power_out, "write power-curve CSV (sizepower only)");
    std::string cv_in;
    exp->add_option("--cv", cv_in, "critical value table for sizepower (default: tabulated now)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (test->parsed()) return run_test(topt, command);

        if (sim->parsed()) {
            DgpConfig dgp;
            dgp.alpha = sopt.alpha;
            dgp.sigma = sopt.sigma;
            dgp.z0 = sopt.z0;
            dgp.burn_in = sopt.burn_in;
            dgp.det = DetSpec::parse(sopt.det);
            dgp.gamma.assign(dgp.det.column_count(), 0.0);
            if (!sopt.gamma.empty()) {
                dgp.gamma.clear();
                std::stringstream ss(sopt.gamma);
                std::string cell;
                while (std::getline(ss, cell, ',')) dgp.gamma.push_back(std::stod(cell));
            }
            if (!sopt.error_ar.empty()) {
                std::stringstream ss(sopt.error_ar);
                std::string cell;
                while (std::getline(ss, cell, ',')) dgp.error_ar.push_back(std::stod(cell));
            }
            if (sopt.innovations == "gaussian") {
                dgp.innovations = DgpConfig::Innovations::Gaussian;
            } else if (sopt.innovations.rfind("t:", 0) == 0) {
                dgp.innovations = DgpConfig::Innovations::StudentT;
                dgp.student_df = std::stoi(sopt.innovations.substr(2));
            } else {
                std::cerr << "urkit: bad --innovations value\n";
                return 1;
            }
            std::vector<double> y = simulate(dgp, sopt.T, {sopt.seed, 0});
            std::ofstream file;
            std::ostream& os = open_or_stdout(sopt.out, file);
            RunManifest manifest{command,
                                 "T=" + std::to_string(sopt.T) + " alpha=" + format_full(dgp.alpha) +
                                     " sigma=" + format_full(dgp.sigma) + " det=" + dgp.det.to_string(),
                                 sopt.seed, kToolVersion, "fixed"};
            write_series_csv(os, y, manifest);
            return 0;
        }

        if (cv->parsed()) {
            ExperimentConfig cfg = read_experiment_config(copt.config);
            if (copt.threads > 0 || std::getenv("URKIT_THREADS")) {
                cfg.threads = resolve_threads(copt.threads);
            }
            if (cfg.reps < 1000) {
                std::cerr << "urkit: warning: reps < 1000; table not suitable for publication\n";
            }
            CriticalValueTable table = tabulate_critical_values(cfg);
            std::ofstream file;
            std::ostream& os = open_or_stdout(copt.out, file);
            RunManifest manifest{command, cfg.summary(), cfg.base_seed};
            write_cv_csv(os, table, manifest);
            return 0;
        }

        if (exp->parsed()) {
            ExperimentConfig cfg = read_experiment_config(eopt.config);
            if (eopt.threads > 0 || std::getenv("URKIT_THREADS")) {
                cfg.threads = resolve_threads(eopt.threads);
            }
            ExperimentReport report;
            if (kind == "variance") {
                report = variance_comparison(cfg);
            } else if (kind == "efficiency") {
                report = efficiency_comparison(cfg);
            } else if (kind == "sizepower") {
                CriticalValueTable table =
                    cv_in.empty() ? tabulate_critical_values(cfg) : read_cv_csv(cv_in);
                report = size_power(cfg, table);
                if (!power_out.empty()) {
                    std::ofstream pf(power_out);
                    if (!pf) throw ParseError("cannot open output file: " + power_out);
                    RunManifest manifest{command, cfg.summary(), cfg.base_seed};
                    write_power_curve_csv(pf, report, manifest);
                }
            } else {
                std::cerr << "urkit: unknown experiment kind '" << kind << "'\n";
                return 1;
            }
            std::ofstream file;
            std::ostream& os = open_or_stdout(eopt.out, file);
            RunManifest manifest{command, cfg.summary(), cfg.base_seed};
            write_report_csv(os, report, manifest);
            return 0;
        }
    } catch (const DegenerateResidualVariance& e) {
        std::cerr << "urkit: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "urkit: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "urkit: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
