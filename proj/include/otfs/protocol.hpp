#pragma once

#include <optional>

#include "otfs/analysis.hpp"
#include "otfs/channel.hpp"
#include "otfs/modem.hpp"

namespace otfs {

enum class Scheme { proposed, oma, ncdrt };

const char* scheme_name(Scheme s);

/**
 * A complete experiment description: frame geometry, the five link profiles,
 * power split, transmit SNRs (linear, sigma^2 = 1), rate targets, and which
 * transmission scheme runs.
 *
 * strict_eq19 keeps the second-phase near-user stream independent of the
 * first-phase SIC outcome. Clearing it couples them: if the near user failed
 * to decode the far-user stream in phase 1 it cannot cancel the relay's
 * phase-2 interference, and the phase-2 stream is declared in outage.
 */
struct Scenario {
    FrameParams frame;
    ChannelProfile sc_t1;
    ChannelProfile sr_t1;
    ChannelProfile sc_t2;
    ChannelProfile rc_t2;
    ChannelProfile re_t2;
    PowerAllocation alloc{0.1, 0.9};
    double rho_s = 1.0;
    double rho_r = 0.5;
    RateTargets rates;
    Scheme scheme = Scheme::proposed;
    bool strict_eq19 = true;
    Payload payload = Payload::qpsk;
};

/// Throws ConfigError on invalid profiles, nonpositive SNRs, or a power
/// ordering that contradicts the near/far user roles (needs
/// omega_sr_t1 < omega_sc_t1).
void check_scenario(const Scenario& s);

/// Per-frame SINRs; identical across the NM symbols of one realization.
struct SinrSet {
    double c_xe_t1 = 0.0;    // far-user stream at the near user, phase 1 (SIC step)
    double c_xc_t1 = 0.0;    // near-user stream at the near user, phase 1
    double r_xe_t1 = 0.0;    // far-user stream at the relay, phase 1
    double c_xbarc_t2 = 0.0; // fresh near-user stream at the near user, phase 2
    double e_xe_t2 = 0.0;    // far-user stream at the far user, phase 2
};

struct Phase1Sinr {
    double c_xe = 0.0;
    double c_xc = 0.0;
    double r_xe = 0.0;
};

struct Phase2Sinr {
    double c_xbarc = 0.0;
    double e_xe = 0.0;
};

/// SINRs from the Theta statistics of the phase-1 links. A +inf Theta
/// (singular spectrum) maps to SINR 0.
Phase1Sinr sinr_phase1(double theta_sc, double theta_sr, const PowerAllocation& alloc,
                       double rho_s, int nm);

Phase2Sinr sinr_phase2(double theta_sc2, double theta_re2, double rho_s, double rho_r, int nm);

struct TrialOutcome {
    bool outage_xc = true;
    bool outage_xe = true;
    bool outage_xbarc = true;
};

/// Applies the SIC decoding chain to one realization's SINRs.
TrialOutcome decide_outages(const SinrSet& s, const RateTargets& rates, bool strict_eq19 = true);

/**
 * Precomputed per-scenario trial engine. Each call draws the five link
 * realizations from the given stream (fixed order: sc_t1, sr_t1, sc_t2,
 * rc_t2, re_t2) and evaluates the configured scheme's outage events.
 */
class TrialRunner {
public:
    explicit TrialRunner(const Scenario& s);

    TrialOutcome run(SplitMix64& rng) const;

    TrialOutcome run_proposed(SplitMix64& rng) const;
    TrialOutcome run_oma(SplitMix64& rng) const;
    TrialOutcome run_ncdrt(SplitMix64& rng) const;

    const Scenario& scenario() const { return scenario_; }

private:
    struct LinkThetas {
        double sc1, sr1, sc2, re2;
    };
    LinkThetas draw_thetas(SplitMix64& rng) const;

    Scenario scenario_;
    LinkSampler sc1_;
    LinkSampler sr1_;
    LinkSampler sc2_;
    LinkSampler rc2_;
    LinkSampler re2_;
};

/// One-shot convenience wrappers around TrialRunner.
TrialOutcome run_trial(const Scenario& s, SplitMix64& rng);
TrialOutcome run_trial_oma(const Scenario& s, SplitMix64& rng);
TrialOutcome run_trial_ncdrt(const Scenario& s, SplitMix64& rng);

/**
 * Debug-mode check of phase 1: runs the full symbol chain (superpose, DD
 * channel, noise, ZF) for one fixed realization of the s->c link and measures
 * the per-symbol SINR of the far-user stream from the equalized residuals.
 */
struct SinrMeasurement {
    std::vector<double> measured_c_xe; // one entry per probed symbol
    double formula_c_xe = 0.0;         // closed-form value for the same realization
    double mean_noise_power = 0.0;     // measured post-ZF noise power per symbol
    double formula_noise_power = 0.0;  // Theta/NM
};

SinrMeasurement measure_phase1_sinr(const Scenario& s, const ChannelRealization& sc1_real,
                                    int noise_draws, int probe_symbols, SplitMix64& rng);

} // namespace otfs
