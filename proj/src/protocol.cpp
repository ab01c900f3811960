#include "otfs/protocol.hpp"

#include <cmath>
#include <limits>

namespace otfs {

const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::proposed: return "proposed";
        case Scheme::oma: return "oma";
        case Scheme::ncdrt: return "ncdrt";
    }
    return "?";
}

void check_scenario(const Scenario& s) {
    check_frame(s.frame);
    check_profile(s.sc_t1, s.frame);
    check_profile(s.sr_t1, s.frame);
    check_profile(s.sc_t2, s.frame);
    check_profile(s.rc_t2, s.frame);
    check_profile(s.re_t2, s.frame);
    check_rates(s.rates);
    if (!(s.rho_s > 0.0) || !(s.rho_r > 0.0)) {
        throw ConfigError("scenario: transmit SNRs must be positive");
    }
    if (!(s.sr_t1.omega_total < s.sc_t1.omega_total)) {
        throw ConfigError(
            "scenario: needs omega_sr_t1 < omega_sc_t1 (relay link weaker than the direct link)");
    }
}

namespace {

inline double ratio_or_zero(double numer, double denom) {
    return std::isinf(denom) ? 0.0 : numer / denom;
}

} // namespace

Phase1Sinr sinr_phase1(double theta_sc, double theta_sr, const PowerAllocation& alloc,
                       double rho_s, int nm) {
    Phase1Sinr out;
    out.c_xe = ratio_or_zero(alloc.alpha_e * rho_s, alloc.alpha_c * rho_s + theta_sc / nm);
    out.c_xc = ratio_or_zero(nm * alloc.alpha_c * rho_s, theta_sc);
    out.r_xe = ratio_or_zero(alloc.alpha_e * rho_s, alloc.alpha_c * rho_s + theta_sr / nm);
    return out;
}

Phase2Sinr sinr_phase2(double theta_sc2, double theta_re2, double rho_s, double rho_r, int nm) {
    Phase2Sinr out;
    out.c_xbarc = ratio_or_zero(rho_s * nm, theta_sc2);
    out.e_xe = ratio_or_zero(rho_r * nm, theta_re2);
    return out;
}

TrialOutcome decide_outages(const SinrSet& s, const RateTargets& rates, bool strict_eq19) {
    const double phi_xe = sinr_threshold(rates.r_xe);
    const double phi_xc = sinr_threshold(rates.r_xc);
    const double phi_xbarc = sinr_threshold(rates.r_xbarc);
    const bool sic_ok = s.c_xe_t1 > phi_xe;
    TrialOutcome out;
    out.outage_xc = !(sic_ok && s.c_xc_t1 > phi_xc);
    out.outage_xe = !(s.r_xe_t1 > phi_xe && s.e_xe_t2 > phi_xe);
    out.outage_xbarc = !(s.c_xbarc_t2 > phi_xbarc);
    if (!strict_eq19 && !sic_ok) {
        // residual relay interference is not cancellable; phase 2 fails at U_c
        out.outage_xbarc = true;
    }
    return out;
}

TrialRunner::TrialRunner(const Scenario& s)
    : scenario_(s),
      sc1_(s.sc_t1, s.frame),
      sr1_(s.sr_t1, s.frame),
      sc2_(s.sc_t2, s.frame),
      rc2_(s.rc_t2, s.frame),
      re2_(s.re_t2, s.frame) {
    check_scenario(s);
}

TrialRunner::LinkThetas TrialRunner::draw_thetas(SplitMix64& rng) const {
    LinkThetas t{};
    t.sc1 = sc1_.draw_theta(rng);
    t.sr1 = sr1_.draw_theta(rng);
    t.sc2 = sc2_.draw_theta(rng);
    rc2_.draw_theta(rng); // relay->near-user interference link; cancelled, kept for stream parity
    t.re2 = re2_.draw_theta(rng);
    return t;
}

TrialOutcome TrialRunner::run(SplitMix64& rng) const {
    switch (scenario_.scheme) {
        case Scheme::oma: return run_oma(rng);
        case Scheme::ncdrt: return run_ncdrt(rng);
        case Scheme::proposed: break;
    }
    return run_proposed(rng);
}

TrialOutcome TrialRunner::run_proposed(SplitMix64& rng) const {
    const LinkThetas t = draw_thetas(rng);
    const int nm = scenario_.frame.grid_size();
    const Phase1Sinr p1 = sinr_phase1(t.sc1, t.sr1, scenario_.alloc, scenario_.rho_s, nm);
    const Phase2Sinr p2 = sinr_phase2(t.sc2, t.re2, scenario_.rho_s, scenario_.rho_r, nm);
    const SinrSet s{p1.c_xe, p1.c_xc, p1.r_xe, p2.c_xbarc, p2.e_xe};
    return decide_outages(s, scenario_.rates, scenario_.strict_eq19);
}

TrialOutcome TrialRunner::run_oma(SplitMix64& rng) const {
    // four orthogonal phases, full power each, quarter pre-log:
    // x_c over s->c, xbar_c over s->c, x_e over s->r then r->e
    const LinkThetas t = draw_thetas(rng);
    const int nm = scenario_.frame.grid_size();
    const double g_xc = ratio_or_zero(nm * scenario_.rho_s, t.sc1);
    const double g_xbarc = ratio_or_zero(nm * scenario_.rho_s, t.sc2);
    const double g_xe_hop1 = ratio_or_zero(nm * scenario_.rho_s, t.sr1);
    const double g_xe_hop2 = ratio_or_zero(nm * scenario_.rho_r, t.re2);
    TrialOutcome out;
    out.outage_xc = !(g_xc > sinr_threshold_oma(scenario_.rates.r_xc));
    const double phi4e = sinr_threshold_oma(scenario_.rates.r_xe);
    out.outage_xe = !(g_xe_hop1 > phi4e && g_xe_hop2 > phi4e);
    out.outage_xbarc = !(g_xbarc > sinr_threshold_oma(scenario_.rates.r_xbarc));
    return out;
}

TrialOutcome TrialRunner::run_ncdrt(SplitMix64& rng) const {
    // two phases as in the proposed scheme but the source stays silent in t2;
    // there is no second near-user stream
    const LinkThetas t = draw_thetas(rng);
    const int nm = scenario_.frame.grid_size();
    const Phase1Sinr p1 = sinr_phase1(t.sc1, t.sr1, scenario_.alloc, scenario_.rho_s, nm);
    const Phase2Sinr p2 = sinr_phase2(t.sc2, t.re2, scenario_.rho_s, scenario_.rho_r, nm);
    TrialOutcome out;
    const double phi_xe = sinr_threshold(scenario_.rates.r_xe);
    out.outage_xc = !(p1.c_xe > phi_xe && p1.c_xc > sinr_threshold(scenario_.rates.r_xc));
    out.outage_xe = !(p1.r_xe > phi_xe && p2.e_xe > phi_xe);
    out.outage_xbarc = true; // not transmitted
    return out;
}

TrialOutcome run_trial(const Scenario& s, SplitMix64& rng) {
    Scenario copy = s;
    copy.scheme = Scheme::proposed;
    return TrialRunner(copy).run_proposed(rng);
}

TrialOutcome run_trial_oma(const Scenario& s, SplitMix64& rng) {
    return TrialRunner(s).run_oma(rng);
}

TrialOutcome run_trial_ncdrt(const Scenario& s, SplitMix64& rng) {
    return TrialRunner(s).run_ncdrt(rng);
}

SinrMeasurement measure_phase1_sinr(const Scenario& s, const ChannelRealization& sc1_real,
                                    int noise_draws, int probe_symbols, SplitMix64& rng) {
    check_scenario(s);
    const int nm = s.frame.grid_size();
    probe_symbols = std::min(probe_symbols, nm);
    const EigenSpectrum spec = eigen_spectrum(sc1_real, s.frame);
    const double th = theta(spec);

    const DdGrid x_c = random_payload(s.payload, nm, rng);
    const DdGrid x_e = random_payload(s.payload, nm, rng);
    const DdGrid x_s = superpose(x_c, x_e, s.alloc);
    const double amp = std::sqrt(s.rho_s); // sigma^2 = 1
    DdGrid tx;
    tx.values.resize(x_s.values.size());
    for (std::size_t i = 0; i < tx.values.size(); ++i) {
        tx.values[i] = amp * x_s.values[i];
    }
    const DdGrid faded = apply_dd_channel(sc1_real, tx, s.frame);

    std::vector<double> noise_acc(static_cast<std::size_t>(probe_symbols), 0.0);
    for (int d = 0; d < noise_draws; ++d) {
        DdGrid y = faded;
        add_noise(y, 1.0, rng);
        const DdGrid eq = zf_equalize(y, spec);
        for (int k = 0; k < probe_symbols; ++k) {
            const cplx residual = eq.values[static_cast<std::size_t>(k)] -
                                  amp * x_s.values[static_cast<std::size_t>(k)];
            noise_acc[static_cast<std::size_t>(k)] += std::norm(residual);
        }
    }

    SinrMeasurement out;
    out.formula_noise_power = th / nm;
    out.formula_c_xe =
        s.alloc.alpha_e * s.rho_s / (s.alloc.alpha_c * s.rho_s + out.formula_noise_power);
    out.measured_c_xe.resize(static_cast<std::size_t>(probe_symbols));
    double total = 0.0;
    for (int k = 0; k < probe_symbols; ++k) {
        const double noise_power = noise_acc[static_cast<std::size_t>(k)] / noise_draws;
        total += noise_power;
        out.measured_c_xe[static_cast<std::size_t>(k)] =
            s.alloc.alpha_e * s.rho_s / (s.alloc.alpha_c * s.rho_s + noise_power);
    }
    out.mean_noise_power = total / probe_symbols;
    return out;
}

} // namespace otfs
