#include "otfs/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace otfs {

AnalyticEngine::AnalyticEngine(const SweepConfig& cfg)
    : alloc_(cfg.scenario.alloc),
      rates_(cfg.scenario.rates),
      nm_(cfg.scenario.frame.grid_size()) {
    const FrameParams& frame = cfg.scenario.frame;
    const GroupStructure g_sc1 = group_structure(cfg.scenario.sc_t1, frame);
    const GroupStructure g_sr1 = group_structure(cfg.scenario.sr_t1, frame);
    const GroupStructure g_sc2 = group_structure(cfg.scenario.sc_t2, frame);
    const GroupStructure g_re2 = group_structure(cfg.scenario.re_t2, frame);
    cf_sc1_ = make_cf_spec(g_sc1, cfg.scenario.sc_t1.omega_total);
    cf_sr1_ = make_cf_spec(g_sr1, cfg.scenario.sr_t1.omega_total);
    cf_sc2_ = make_cf_spec(g_sc2, cfg.scenario.sc_t2.omega_total);
    cf_re2_ = make_cf_spec(g_re2, cfg.scenario.re_t2.omega_total);
    special_ = g_sc1.G == 1 && g_sr1.G == 1 && g_sc2.G == 1 && g_re2.G == 1;
    omegas_ = LinkOmegas{cfg.scenario.sc_t1.omega_total, cfg.scenario.sr_t1.omega_total,
                         cfg.scenario.sc_t2.omega_total, cfg.scenario.re_t2.omega_total};
}

OutageInputs AnalyticEngine::inputs(double rho_s, double rho_r) const {
    OutageInputs in;
    in.alloc = alloc_;
    in.rho_s = rho_s;
    in.rho_r = rho_r;
    in.nm = nm_;
    in.rates = rates_;
    return in;
}

OutageTriple AnalyticEngine::proposed(double rho_s, double rho_r) const {
    const OutageInputs in = inputs(rho_s, rho_r);
    if (special_) {
        return outage_special(in, omegas_);
    }
    OutageTriple p;
    p.xc = outage_xc_general(in, cf_sc1_);
    p.xe = outage_xe_general(in, cf_sr1_, cf_re2_);
    p.xbarc = outage_xbarc_general(in, cf_sc2_);
    return p;
}

OutageTriple AnalyticEngine::oma(double rho_s, double rho_r) const {
    const OutageInputs in = inputs(rho_s, rho_r);
    if (special_) {
        return outage_oma_special(in, omegas_);
    }
    return outage_oma_general(in, cf_sc1_, cf_sr1_, cf_sc2_, cf_re2_);
}

OutageTriple AnalyticEngine::ncdrt(double rho_s, double rho_r) const {
    OutageTriple p = proposed(rho_s, rho_r);
    p.xbarc = 1.0; // not transmitted; excluded from rate accounting separately
    return p;
}

namespace {

struct SignalColumn {
    const char* name;
    double analytic;
    const OutageEstimate* estimate;
};

OutageTriple analytic_for(const AnalyticEngine& engine, Scheme scheme, double rho_s,
                          double rho_r) {
    switch (scheme) {
        case Scheme::oma: return engine.oma(rho_s, rho_r);
        case Scheme::ncdrt: return engine.ncdrt(rho_s, rho_r);
        case Scheme::proposed: break;
    }
    return engine.proposed(rho_s, rho_r);
}

} // namespace

std::vector<OutageRow> sweep_outage(const SweepConfig& cfg) {
    const AnalyticEngine engine(cfg);
    std::vector<OutageRow> rows;
    for (double snr_db : cfg.snr_grid_db) {
        for (Scheme scheme : cfg.schemes) {
            const Scenario s = scenario_at(cfg, snr_db, scheme);
            const OutageTriple analytic = analytic_for(engine, scheme, s.rho_s, s.rho_r);
            const OutageEstimates mc = estimate_outage(s, cfg.mc);
            std::vector<SignalColumn> cols{{"xc", analytic.xc, &mc.xc},
                                           {"xe", analytic.xe, &mc.xe}};
            if (scheme != Scheme::ncdrt) {
                cols.push_back({"xbarc", analytic.xbarc, &mc.xbarc});
            }
            for (const SignalColumn& col : cols) {
                OutageRow row;
                row.snr_db = snr_db;
                row.scheme = scheme_name(scheme);
                row.signal = col.name;
                row.p_analytic = col.analytic;
                row.p_mc = col.estimate->p_hat;
                row.ci95 = col.estimate->ci95_halfwidth;
                row.trials = col.estimate->trials;
                rows.push_back(row);
            }
        }
    }
    return rows;
}

std::vector<SumRateRow> sweep_sumrate(const SweepConfig& cfg) {
    const AnalyticEngine engine(cfg);
    std::vector<SumRateRow> rows;
    for (double snr_db : cfg.snr_grid_db) {
        for (Scheme scheme : cfg.schemes) {
            const Scenario s = scenario_at(cfg, snr_db, scheme);
            const OutageTriple analytic = analytic_for(engine, scheme, s.rho_s, s.rho_r);
            const OutageEstimates mc = estimate_outage(s, cfg.mc);
            const OutageTriple mc_triple{mc.xc.p_hat, mc.xe.p_hat, mc.xbarc.p_hat};
            SumRateRow row;
            row.snr_db = snr_db;
            row.scheme = scheme_name(scheme);
            switch (scheme) {
                case Scheme::proposed:
                    row.sr_analytic = outage_sum_rate(analytic, s.rates);
                    row.sr_mc = outage_sum_rate(mc_triple, s.rates);
                    break;
                case Scheme::ncdrt:
                    row.sr_analytic = outage_sum_rate_ncdrt(analytic, s.rates);
                    row.sr_mc = outage_sum_rate_ncdrt(mc_triple, s.rates);
                    break;
                case Scheme::oma:
                    row.sr_analytic = outage_sum_rate_oma(analytic, s.rates);
                    row.sr_mc = outage_sum_rate_oma(mc_triple, s.rates);
                    break;
            }
            rows.push_back(row);
        }
    }
    return rows;
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) {
        fields.push_back(field);
    }
    return fields;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("cannot write file: " + path);
    }
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open file: " + path);
    }
    return in;
}

} // namespace

void write_outage_csv(const std::string& path, const std::vector<OutageRow>& rows) {
    std::ofstream out = open_out(path);
    out << "snr_db,scheme,signal,p_analytic,p_mc,ci95,trials\n";
    char buf[256];
    for (const OutageRow& r : rows) {
        std::snprintf(buf, sizeof(buf), "%g,%s,%s,%.10g,%.10g,%.6g,%lld\n", r.snr_db,
                      r.scheme.c_str(), r.signal.c_str(), r.p_analytic, r.p_mc, r.ci95, r.trials);
        out << buf;
    }
}

std::vector<OutageRow> read_outage_csv(const std::string& path) {
    std::ifstream in = open_in(path);
    std::string line;
    if (!std::getline(in, line) || line != "snr_db,scheme,signal,p_analytic,p_mc,ci95,trials") {
        throw ConfigError(path + ": not an outage sweep CSV (bad header)");
    }
    std::vector<OutageRow> rows;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        const auto f = split_csv(line);
        if (f.size() != 7) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 7 fields");
        }
        OutageRow r;
        try {
            r.snr_db = std::stod(f[0]);
            r.scheme = f[1];
            r.signal = f[2];
            r.p_analytic = std::stod(f[3]);
            r.p_mc = std::stod(f[4]);
            r.ci95 = std::stod(f[5]);
            r.trials = std::stoll(f[6]);
        } catch (const std::exception&) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": malformed numeric field");
        }
        rows.push_back(r);
    }
    return rows;
}

void write_sumrate_csv(const std::string& path, const std::vector<SumRateRow>& rows) {
    std::ofstream out = open_out(path);
    out << "snr_db,scheme,sr_analytic,sr_mc\n";
    char buf[160];
    for (const SumRateRow& r : rows) {
        std::snprintf(buf, sizeof(buf), "%g,%s,%.10g,%.10g\n", r.snr_db, r.scheme.c_str(),
                      r.sr_analytic, r.sr_mc);
        out << buf;
    }
}

std::vector<SumRateRow> read_sumrate_csv(const std::string& path) {
    std::ifstream in = open_in(path);
    std::string line;
    if (!std::getline(in, line) || line != "snr_db,scheme,sr_analytic,sr_mc") {
        throw ConfigError(path + ": not a sum-rate sweep CSV (bad header)");
    }
    std::vector<SumRateRow> rows;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        const auto f = split_csv(line);
        if (f.size() != 4) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 4 fields");
        }
        SumRateRow r;
        try {
            r.snr_db = std::stod(f[0]);
            r.scheme = f[1];
            r.sr_analytic = std::stod(f[2]);
            r.sr_mc = std::stod(f[3]);
        } catch (const std::exception&) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": malformed numeric field");
        }
        rows.push_back(r);
    }
    return rows;
}

namespace {

struct CheckLog {
    std::ostringstream text;
    bool passed = true;
    double worst = 0.0;

    void check(const std::string& what, double value, double tol) {
        const bool ok = value <= tol;
        passed = passed && ok;
        worst = std::max(worst, value);
        text << (ok ? "  ok   " : "  FAIL ") << what << ": " << value << " (tol " << tol
             << ")\n";
    }
};

double gp_cdf(double z, const CfSpec& spec, const std::optional<InversionParams>& forced) {
    if (forced.has_value()) {
        return gil_pelaez_cdf(z, *forced, spec);
    }
    return gil_pelaez_cdf(z, spec);
}

} // namespace

CfValidation validate_cf(const SweepConfig& cfg, long long samples,
                         const std::optional<InversionParams>& forced) {
    if (samples < 1000) {
        throw ConfigError("validate_cf: needs at least 1000 samples");
    }
    CheckLog log;
    log.text << "CF/CDF validation (" << samples << " samples per check)\n";
    SplitMix64 rng(cfg.mc.master_seed ^ 0xCF5EEDULL);

    // kernel axioms
    log.check("psi(0, 1) == 1", std::abs(psi_kernel(0.0, 1.0) - cplx{1.0, 0.0}), 0.0);
    double worst_mod = 0.0;
    double worst_conj = 0.0;
    for (double t : {-100.0, -10.0, -1.0, -0.1, 0.1, 1.0, 10.0, 100.0}) {
        worst_mod = std::max(worst_mod, std::abs(psi_kernel(t, 1.0)) - 1.0);
        worst_conj = std::max(
            worst_conj, std::abs(psi_kernel(-t, 1.0) - std::conj(psi_kernel(t, 1.0))));
    }
    log.check("|psi(t, 1)| <= 1", worst_mod, 1e-12);
    log.check("psi(-t) == conj(psi(t))", worst_conj, 0.0);

    // kernel vs sampled CF of 1/X, X ~ Exp(mean 1)
    const double cf_tol = 0.005 * std::max(1.0, std::sqrt(1e6 / static_cast<double>(samples)));
    for (double t : {0.1, 1.0, 10.0}) {
        cplx acc{0.0, 0.0};
        SplitMix64 local(SplitMix64::mix(cfg.mc.master_seed + static_cast<std::uint64_t>(t * 512)));
        for (long long i = 0; i < samples; ++i) {
            const double x = local.next_exp(1.0);
            const double arg = t / x;
            acc += cplx{std::cos(arg), std::sin(arg)};
        }
        acc /= static_cast<double>(samples);
        std::ostringstream what;
        what << "psi vs sampled CF at t=" << t;
        log.check(what.str(), std::abs(acc - psi_kernel(t, 1.0)), cf_tol);
    }

    // per-link Theta model: sampled CDF vs inversion, plus the exponential
    // closed form whenever the link has a single group
    const FrameParams& frame = cfg.scenario.frame;
    const double sup_tol =
        std::max(0.01, 0.005 + 1.63 / std::sqrt(static_cast<double>(samples)));
    const ChannelProfile* links[] = {&cfg.scenario.sc_t1, &cfg.scenario.sr_t1,
                                     &cfg.scenario.sc_t2, &cfg.scenario.re_t2};
    for (const ChannelProfile* link : links) {
        const GroupStructure groups = group_structure(*link, frame);
        const CfSpec spec = make_cf_spec(groups, link->omega_total);
        McConfig mc;
        mc.trials = samples;
        mc.master_seed = rng.next_u64();
        const std::vector<double> theta_samples =
            sample_theta(*link, frame, mc, ThetaMode::model);
        double sup = 0.0;
        const int grid = 160;
        for (int g = 0; g < grid; ++g) {
            const std::size_t idx = static_cast<std::size_t>(
                (static_cast<double>(g) + 0.5) / grid * static_cast<double>(theta_samples.size()));
            const double z = theta_samples[std::min(idx, theta_samples.size() - 1)];
            const double empirical =
                static_cast<double>(std::upper_bound(theta_samples.begin(), theta_samples.end(),
                                                     z) -
                                    theta_samples.begin()) /
                static_cast<double>(theta_samples.size());
            sup = std::max(sup, std::abs(empirical - gp_cdf(z, spec, forced)));
        }
        std::ostringstream what;
        what << "inversion vs sampled Theta CDF, link " << link_name(link->link) << " (G="
             << groups.G << ")";
        log.check(what.str(), sup, sup_tol);

        if (groups.G == 1) {
            const int nm = frame.grid_size();
            double sup_exp = 0.0;
            for (double q : {0.01, 0.05, 0.2, 0.5, 0.8, 0.95, 0.99}) {
                const double z = -nm / (link->omega_total * std::log(q));
                sup_exp = std::max(sup_exp, std::abs(gp_cdf(z, spec, forced) - q));
            }
            std::ostringstream what2;
            what2 << "inversion vs exponential closed form, link " << link_name(link->link);
            log.check(what2.str(), sup_exp, 0.005);
        }
    }

    CfValidation out;
    out.passed = log.passed;
    out.worst_supnorm = log.worst;
    log.text << (log.passed ? "ALL CHECKS PASSED\n" : "VALIDATION FAILED\n");
    out.report = log.text.str();
    return out;
}

} // namespace otfs
