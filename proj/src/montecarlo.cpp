#include "urkit/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>

#include "urkit/errors.hpp"

namespace urkit {

namespace {

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string dgp_summary(const DgpConfig& d) {
    std::string s = "alpha=" + fmt_g(d.alpha) + " sigma=" + fmt_g(d.sigma) +
                    " z0=" + fmt_g(d.z0) + " burn_in=" + std::to_string(d.burn_in) +
                    " det=" + d.det.to_string();
    s += " gamma=";
    for (std::size_t i = 0; i < d.gamma.size(); ++i) {
        if (i) s += ",";
        s += fmt_g(d.gamma[i]);
    }
    s += " error_ar=";
    for (std::size_t i = 0; i < d.error_ar.size(); ++i) {
        if (i) s += ",";
        s += fmt_g(d.error_ar[i]);
    }
    if (d.innovations == DgpConfig::Innovations::StudentT) {
        s += " innov=t:" + std::to_string(d.student_df);
    } else {
        s += " innov=gaussian";
    }
    return s;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

UnitRootResult run_method(Method m, std::span<const double> y, const DetSpec& spec, int k) {
    switch (m) {
        case Method::OneStep:
            return one_step_df(y, spec, k);
        case Method::TwoStep:
            return two_step_df(y, spec, k, TwoStepForm::Levels);
        case Method::ResidualOnly:
            return residual_only_df(y, spec, k);
        case Method::ZeroPadded:
            return zero_padded_df(y, spec, k);
    }
    throw Error("run_method: bad method");
}

// Runs fn(i) for i in [0, reps) across `threads` workers. Each index owns
// its output slot, so results are independent of the schedule.
template <typename Fn>
void parallel_reps(long reps, int threads, Fn&& fn) {
    threads = std::max(1, threads);
    if (threads == 1 || reps < 2) {
        for (long i = 0; i < reps; ++i) fn(i);
        return;
    }
    std::atomic<long> next{0};
    auto worker = [&] {
        for (;;) {
            const long i = next.fetch_add(1);
            if (i >= reps) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

std::string dgp_label(const DgpConfig& d, bool is_null) {
    if (is_null) return "null";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "alpha=%g", d.alpha);
    return buf;
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double sd_of(const std::vector<double>& v, double mean) {
    if (v.size() < 2) return 0.0;
    double s = 0.0;
    for (double x : v) s += (x - mean) * (x - mean);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace

std::string statistic_name(Statistic s) { return s == Statistic::TDf ? "t_df" : "t_lm"; }

void ExperimentConfig::validate() const {
    if (methods.empty()) throw Error("ExperimentConfig: no methods requested");
    if (reps < 1) throw Error("ExperimentConfig: reps must be >= 1");
    if (T < 10) throw Error("ExperimentConfig: T too small");
    if (!(nominal_size > 0.0 && nominal_size < 1.0)) {
        throw Error("ExperimentConfig: nominal_size must lie in (0,1)");
    }
    for (double q : quantiles) {
        if (!(q > 0.0 && q < 1.0)) throw Error("ExperimentConfig: quantiles must lie in (0,1)");
    }
    dgp_null.validate();
    for (const auto& d : dgp_alts) d.validate();
}

std::string ExperimentConfig::summary() const {
    std::string s = "methods=";
    for (std::size_t i = 0; i < methods.size(); ++i) {
        if (i) s += "+";
        s += method_name(methods[i]);
    }
    s += " spec=" + spec.to_string() + " T=" + std::to_string(T) +
         " k=" + (schwert_rule ? std::string("auto") : std::to_string(k)) +
         " reps=" + std::to_string(reps) + " seed=" + std::to_string(base_seed) +
         " nominal=" + fmt_g(nominal_size) + " quantiles=";
    for (std::size_t i = 0; i < quantiles.size(); ++i) {
        if (i) s += ",";
        s += fmt_g(quantiles[i]);
    }
    s += " | null{" + dgp_summary(dgp_null) + "}";
    for (const auto& d : dgp_alts) s += " alt{" + dgp_summary(d) + "}";
    return s;
}

std::uint64_t ExperimentConfig::config_hash() const { return fnv1a(summary()); }

double CriticalValueTable::lookup(Method m, Statistic s, double q) const {
    auto it = entries.find({m, s, q});
    if (it == entries.end()) {
        throw MissingCriticalValue("no critical value for (" + method_name(m) + ", " +
                                   statistic_name(s) + ", " + fmt_g(q) + ")");
    }
    return it->second;
}

bool CriticalValueTable::has(Method m, Statistic s, double q) const {
    return entries.count({m, s, q}) > 0;
}

double quantile_type7(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) throw Error("quantile_type7: empty sample");
    if (sorted.size() == 1) return sorted[0];
    const double h = (static_cast<double>(sorted.size()) - 1.0) * q;
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = h - std::floor(h);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

CriticalValueTable tabulate_critical_values(const ExperimentConfig& config) {
    config.validate();
    if (config.dgp_null.alpha != 1.0) {
        throw Error("tabulate_critical_values: null DGP must have alpha = 1");
    }
    const int k = config.effective_k();
    const long reps = config.reps;
    const std::size_t nmethods = config.methods.size();

    // slot per (method, rep); NaN marks a dropped replication
    std::vector<std::vector<double>> tdf(nmethods, std::vector<double>(reps));
    std::vector<std::vector<double>> tlm(nmethods, std::vector<double>(reps));
    std::vector<char> ok(static_cast<std::size_t>(reps), 1);

    parallel_reps(reps, config.threads, [&](long i) {
        std::vector<double> y =
            simulate(config.dgp_null, config.T, {config.base_seed, static_cast<std::uint64_t>(i)});
        try {
            for (std::size_t mi = 0; mi < nmethods; ++mi) {
                UnitRootResult r = run_method(config.methods[mi], y, config.spec, k);
                tdf[mi][static_cast<std::size_t>(i)] = r.t_df;
                tlm[mi][static_cast<std::size_t>(i)] = r.t_lm;
            }
        } catch (const Error&) {
            ok[static_cast<std::size_t>(i)] = 0;
        }
    });

    long dropped = 0;
    for (char c : ok) dropped += (c == 0);
    if (dropped * 1000 > reps) {
        throw UnreliableTable("tabulate_critical_values: " + std::to_string(dropped) +
                              " of " + std::to_string(reps) +
                              " replications degenerate (> 0.1%)");
    }

    CriticalValueTable table;
    table.config_summary = config.summary();
    table.config_hash = config.config_hash();
    table.reps = reps;
    table.base_seed = config.base_seed;
    table.dropped = dropped;

    for (std::size_t mi = 0; mi < nmethods; ++mi) {
        for (Statistic stat : {Statistic::TDf, Statistic::TLm}) {
            std::vector<double> vals;
            vals.reserve(static_cast<std::size_t>(reps - dropped));
            const auto& src = (stat == Statistic::TDf) ? tdf[mi] : tlm[mi];
            for (long i = 0; i < reps; ++i) {
                if (ok[static_cast<std::size_t>(i)]) vals.push_back(src[static_cast<std::size_t>(i)]);
            }
            std::sort(vals.begin(), vals.end());
            for (double q : config.quantiles) {
                table.entries[{config.methods[mi], stat, q}] = quantile_type7(vals, q);
            }
        }
    }
    return table;
}

ExperimentReport size_power(const ExperimentConfig& config, const CriticalValueTable& cv) {
    config.validate();
    const int k = config.effective_k();
    const long reps = config.reps;
    for (Method m : config.methods) {
        for (Statistic s : {Statistic::TDf, Statistic::TLm}) {
            if (!cv.has(m, s, config.nominal_size)) {
                throw MissingCriticalValue("size_power: table lacks (" + method_name(m) + ", " +
                                           statistic_name(s) + ") at the nominal size");
            }
        }
    }

    ExperimentReport report;
    report.config_summary = config.summary();
    report.config_hash = config.config_hash();
    report.reps = reps;
    report.base_seed = config.base_seed;

    std::vector<const DgpConfig*> dgps{&config.dgp_null};
    for (const auto& d : config.dgp_alts) dgps.push_back(&d);

    for (std::size_t di = 0; di < dgps.size(); ++di) {
        const DgpConfig& dgp = *dgps[di];
        const std::size_t nmethods = config.methods.size();
        std::vector<std::vector<char>> rej_df(nmethods, std::vector<char>(reps, 0));
        std::vector<std::vector<char>> rej_lm(nmethods, std::vector<char>(reps, 0));
        std::vector<char> ok(static_cast<std::size_t>(reps), 1);

        parallel_reps(reps, config.threads, [&](long i) {
            const std::uint64_t rep_index =
                static_cast<std::uint64_t>(di) * static_cast<std::uint64_t>(reps) +
                static_cast<std::uint64_t>(i);
            std::vector<double> y = simulate(dgp, config.T, {config.base_seed, rep_index});
            try {
                for (std::size_t mi = 0; mi < nmethods; ++mi) {
                    UnitRootResult r = run_method(config.methods[mi], y, config.spec, k);
                    rej_df[mi][static_cast<std::size_t>(i)] =
                        r.t_df < cv.lookup(config.methods[mi], Statistic::TDf, config.nominal_size);
                    rej_lm[mi][static_cast<std::size_t>(i)] =
                        r.t_lm < cv.lookup(config.methods[mi], Statistic::TLm, config.nominal_size);
                }
            } catch (const Error&) {
                ok[static_cast<std::size_t>(i)] = 0;
            }
        });

        long valid = 0;
        for (char c : ok) valid += (c != 0);
        report.dropped += reps - valid;
        const std::string label = dgp_label(dgp, di == 0);
        for (std::size_t mi = 0; mi < nmethods; ++mi) {
            for (Statistic stat : {Statistic::TDf, Statistic::TLm}) {
                const auto& rej = (stat == Statistic::TDf) ? rej_df[mi] : rej_lm[mi];
                long count = 0;
                for (long i = 0; i < reps; ++i) {
                    if (ok[static_cast<std::size_t>(i)] && rej[static_cast<std::size_t>(i)]) ++count;
                }
                const double rate = static_cast<double>(count) / static_cast<double>(valid);
                const double se = std::sqrt(rate * (1.0 - rate) / static_cast<double>(valid));
                report.rows.push_back({"rate", method_name(config.methods[mi]),
                                       statistic_name(stat), label, rate, se});
            }
        }
    }
    return report;
}

ExperimentReport variance_comparison(const ExperimentConfig& config) {
    config.validate();
    if (config.spec.kind == DetSpec::Kind::None) {
        throw Error("variance_comparison: spec must be nonempty");
    }
    const int k = config.effective_k();
    const long reps = config.reps;

    std::vector<double> s2_two(reps), s2_res(reps);
    std::vector<char> ok(static_cast<std::size_t>(reps), 1);

    parallel_reps(reps, config.threads, [&](long i) {
        std::vector<double> y =
            simulate(config.dgp_null, config.T, {config.base_seed, static_cast<std::uint64_t>(i)});
        try {
            // Matched normalization (rss/n over the same rows): the claim
            // being measured is about the error variance of the two
            // equations, and the dof correction would otherwise reward the
            // smaller model for the regressors it omits.
            UnitRootResult two = two_step_df(y, config.spec, k, TwoStepForm::Residual);
            UnitRootResult res = residual_only_df(y, config.spec, k);
            s2_two[static_cast<std::size_t>(i)] = two.fit.rss / static_cast<double>(two.fit.n);
            s2_res[static_cast<std::size_t>(i)] = res.fit.rss / static_cast<double>(res.fit.n);
        } catch (const Error&) {
            ok[static_cast<std::size_t>(i)] = 0;
        }
    });

    std::vector<double> two, res, diff;
    long ordered = 0;
    for (long i = 0; i < reps; ++i) {
        if (!ok[static_cast<std::size_t>(i)]) continue;
        const double a = s2_two[static_cast<std::size_t>(i)];
        const double b = s2_res[static_cast<std::size_t>(i)];
        two.push_back(a);
        res.push_back(b);
        diff.push_back(b - a);
        ordered += (b >= a);
    }
    if (two.empty()) throw Error("variance_comparison: all replications degenerate");

    const double n = static_cast<double>(two.size());
    const double m_two = mean_of(two);
    const double m_res = mean_of(res);
    const double m_diff = mean_of(diff);
    const double se_diff = sd_of(diff, m_diff) / std::sqrt(n);
    const double frac = static_cast<double>(ordered) / n;

    ExperimentReport report;
    report.config_summary = config.summary();
    report.config_hash = config.config_hash();
    report.reps = reps;
    report.base_seed = config.base_seed;
    report.dropped = reps - static_cast<long>(two.size());
    const std::string label = dgp_label(config.dgp_null, false);
    report.rows.push_back({"sigma2", "twostep", "", label, m_two, sd_of(two, m_two) / std::sqrt(n)});
    report.rows.push_back({"sigma2", "residual", "", label, m_res, sd_of(res, m_res) / std::sqrt(n)});
    report.rows.push_back({"sigma2_diff", "residual-twostep", "", label, m_diff, se_diff});
    report.rows.push_back(
        {"order_frac", "residual>=twostep", "", label, frac, std::sqrt(frac * (1.0 - frac) / n)});
    return report;
}

ExperimentReport efficiency_comparison(const ExperimentConfig& config) {
    config.validate();
    if (config.spec.kind == DetSpec::Kind::None) {
        throw Error("efficiency_comparison: spec must be nonempty");
    }
    const DgpConfig& dgp = config.dgp_alts.empty() ? config.dgp_null : config.dgp_alts.front();
    if (!(std::abs(dgp.alpha) < 1.0)) {
        throw Error("efficiency_comparison: need |alpha| < 1 for an identified gamma");
    }
    if (dgp.det.column_count() != config.spec.column_count()) {
        throw Error("efficiency_comparison: DGP det and estimation spec disagree");
    }
    const int k = config.effective_k();
    const long reps = config.reps;
    const std::size_t ncoef = config.spec.column_count();

    // squared errors per (estimator, coefficient, rep)
    std::vector<std::vector<std::vector<double>>> sqerr(
        3, std::vector<std::vector<double>>(ncoef, std::vector<double>(reps)));
    std::vector<char> ok(static_cast<std::size_t>(reps), 1);

    parallel_reps(reps, config.threads, [&](long i) {
        std::vector<double> y =
            simulate(dgp, config.T, {config.base_seed, static_cast<std::uint64_t>(i)});
        try {
            DesignMatrix x = build(config.spec, 1, config.T);
            OlsFit step1 = ols_fit(y, x);
            UnitRootResult two = two_step_df(y, config.spec, k, TwoStepForm::Levels);
            UnitRootResult zp = zero_padded_df(y, config.spec, k);
            for (std::size_t c = 0; c < ncoef; ++c) {
                const double truth = dgp.gamma[c];
                auto sq = [truth](double est) { return (est - truth) * (est - truth); };
                sqerr[0][c][static_cast<std::size_t>(i)] = sq(step1.coefficients[c]);
                sqerr[1][c][static_cast<std::size_t>(i)] = sq((*two.gamma_structural)[c]);
                sqerr[2][c][static_cast<std::size_t>(i)] = sq((*zp.gamma_structural)[c]);
            }
        } catch (const Error&) {
            ok[static_cast<std::size_t>(i)] = 0;
        }
    });

    ExperimentReport report;
    report.config_summary = config.summary();
    report.config_hash = config.config_hash();
    report.reps = reps;
    report.base_seed = config.base_seed;

    const char* estimator_names[3] = {"gamma_hat", "gamma_tilde", "gamma_bar"};
    const auto labels = config.spec.labels();
    for (int e = 0; e < 3; ++e) {
        for (std::size_t c = 0; c < ncoef; ++c) {
            std::vector<double> vals;
            for (long i = 0; i < reps; ++i) {
                if (ok[static_cast<std::size_t>(i)]) {
                    vals.push_back(sqerr[static_cast<std::size_t>(e)][c][static_cast<std::size_t>(i)]);
                }
            }
            if (vals.empty()) throw Error("efficiency_comparison: all replications degenerate");
            const double mse = mean_of(vals);
            const double se = sd_of(vals, mse) / std::sqrt(static_cast<double>(vals.size()));
            report.rows.push_back({"mse", estimator_names[e], "", labels[c], mse, se});
            report.dropped = reps - static_cast<long>(vals.size());
        }
    }
    return report;
}

}  // namespace urkit
