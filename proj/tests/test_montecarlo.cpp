#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "otfs/config.hpp"
#include "otfs/montecarlo.hpp"

using namespace otfs;

namespace {

Scenario special_scenario(double rho_s = 100.0) {
    SweepConfig cfg = default_sweep_config();
    Scenario s = cfg.scenario;
    for (ChannelProfile* p : {&s.sc_t1, &s.sr_t1, &s.sc_t2, &s.rc_t2, &s.re_t2}) {
        p->paths = {{1, 1}};
    }
    s.frame = FrameParams{16, 8, 3750.0, 4.0e9};
    s.rho_s = rho_s;
    s.rho_r = 0.5 * rho_s;
    return s;
}

} // namespace

TEST_CASE("estimate_outage is bit-identical across parallelism levels") {
    Scenario s = special_scenario();
    McConfig mc;
    mc.trials = 20000;
    mc.master_seed = 424242;
    mc.parallelism = 1;
    const OutageEstimates serial = estimate_outage(s, mc);
    for (const int workers : {2, 3, 8}) {
        mc.parallelism = workers;
        const OutageEstimates parallel = estimate_outage(s, mc);
        CHECK(parallel.xc.p_hat == serial.xc.p_hat);
        CHECK(parallel.xe.p_hat == serial.xe.p_hat);
        CHECK(parallel.xbarc.p_hat == serial.xbarc.p_hat);
    }
}

TEST_CASE("estimate_outage matches the closed forms in the single-group case") {
    const Scenario s = special_scenario(std::pow(10.0, 2.0)); // 20 dB
    McConfig mc;
    mc.trials = 100000;
    mc.master_seed = 9;
    const OutageEstimates est = estimate_outage(s, mc);

    OutageInputs in;
    in.alloc = s.alloc;
    in.rho_s = s.rho_s;
    in.rho_r = s.rho_r;
    in.nm = s.frame.grid_size();
    in.rates = s.rates;
    const OutageTriple p = outage_special(
        in, LinkOmegas{s.sc_t1.omega_total, s.sr_t1.omega_total, s.sc_t2.omega_total,
                       s.re_t2.omega_total});
    CHECK(std::abs(est.xc.p_hat - p.xc) < 3.0 * est.xc.ci95_halfwidth + 1e-9);
    CHECK(std::abs(est.xe.p_hat - p.xe) < 3.0 * est.xe.ci95_halfwidth + 1e-9);
    CHECK(std::abs(est.xbarc.p_hat - p.xbarc) < 3.0 * est.xbarc.ci95_halfwidth + 1e-9);
}

TEST_CASE("degenerate power split: the estimator reports exactly one") {
    Scenario s = special_scenario();
    s.rates.r_xe = 1.7; // phi_xe > alpha_e/alpha_c
    McConfig mc;
    mc.trials = 5000;
    mc.master_seed = 10;
    const OutageEstimates est = estimate_outage(s, mc);
    CHECK(est.xc.p_hat == 1.0);
    CHECK(est.xe.p_hat == 1.0);
}

TEST_CASE("rigged median scenario estimates one half") {
    // single-group Theta = NM/X has median NM/(omega*ln 2); choosing the
    // phase-2 rate so xi4 equals that median pins the xbarc outage at 1/2
    Scenario s = special_scenario();
    const int nm = s.frame.grid_size();
    const double median = nm / (s.sc_t2.omega_total * std::log(2.0));
    const double phi = nm * s.rho_s / median; // = rho_s * omega * ln 2
    s.rates.r_xbarc = std::log2(1.0 + phi) / 2.0;
    McConfig mc;
    mc.trials = 100000;
    mc.master_seed = 11;
    const OutageEstimates est = estimate_outage(s, mc);
    CHECK(std::abs(est.xbarc.p_hat - 0.5) < 3.0 * est.xbarc.ci95_halfwidth);
}

TEST_CASE("low-confidence flag trips below ten events") {
    Scenario s = special_scenario(1e8);
    McConfig mc;
    mc.trials = 2000;
    mc.master_seed = 12;
    const OutageEstimates est = estimate_outage(s, mc);
    CHECK(est.xbarc.low_confidence);
}

TEST_CASE("sample_theta: exact and model modes coincide in law for G = 1") {
    const Scenario s = special_scenario();
    McConfig mc;
    mc.trials = 100000;
    mc.master_seed = 13;
    const auto exact = sample_theta(s.sc_t1, s.frame, mc, ThetaMode::exact);
    mc.master_seed = 14;
    const auto model = sample_theta(s.sc_t1, s.frame, mc, ThetaMode::model);
    const double d = ks_distance(exact, model);
    // two-sample KS 1% critical value: 1.6276 * sqrt(2/n)
    CHECK(d < 1.6276 * std::sqrt(2.0 / 100000.0));
}

TEST_CASE("sample_theta model mode agrees with the CDF inversion") {
    const SweepConfig cfg = default_sweep_config(); // three-path general taps
    McConfig mc;
    mc.trials = 200000;
    mc.master_seed = 15;
    const auto samples = sample_theta(cfg.scenario.sc_t1, cfg.scenario.frame, mc,
                                      ThetaMode::model);
    const CfSpec spec = make_cf_spec(group_structure(cfg.scenario.sc_t1, cfg.scenario.frame),
                                     cfg.scenario.sc_t1.omega_total);
    CHECK(sup_cdf_gap(samples, spec, 120) < 0.01);
}

TEST_CASE("sample_theta exact mode reflects the correlated eigen-structure") {
    // for multi-path links the exact and independent-model laws differ; the
    // distance is reported by the sweep tooling rather than asserted away
    const SweepConfig cfg = default_sweep_config();
    McConfig mc;
    mc.trials = 50000;
    mc.master_seed = 16;
    const auto exact = sample_theta(cfg.scenario.sc_t1, cfg.scenario.frame, mc, ThetaMode::exact);
    mc.master_seed = 17;
    const auto model = sample_theta(cfg.scenario.sc_t1, cfg.scenario.frame, mc, ThetaMode::model);
    const double d = ks_distance(exact, model);
    CHECK(d > 0.0);
    CHECK(d < 1.0);
}

TEST_CASE("ks_distance sanity") {
    const std::vector<double> a{1.0, 2.0, 3.0, 4.0};
    CHECK(ks_distance(a, a) == doctest::Approx(0.0));
    const std::vector<double> b{11.0, 12.0, 13.0, 14.0};
    CHECK(ks_distance(a, b) == doctest::Approx(1.0));
}
