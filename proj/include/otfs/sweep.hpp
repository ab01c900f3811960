#pragma once

#include <optional>
#include <string>
#include <vector>

#include "otfs/config.hpp"

namespace otfs {

struct OutageRow {
    double snr_db = 0.0;
    std::string scheme;
    std::string signal; // xc, xe, xbarc
    double p_analytic = 0.0;
    double p_mc = 0.0;
    double ci95 = 0.0;
    long long trials = 0;
};

struct SumRateRow {
    double snr_db = 0.0;
    std::string scheme;
    double sr_analytic = 0.0;
    double sr_mc = 0.0;
};

/**
 * Closed-form outage engine bound to one sweep config: per-link group
 * structures are computed once; evaluation switches to the single-group
 * closed forms when every link has G = 1.
 */
class AnalyticEngine {
public:
    explicit AnalyticEngine(const SweepConfig& cfg);

    OutageTriple proposed(double rho_s, double rho_r) const;
    OutageTriple oma(double rho_s, double rho_r) const;
    /// xc/xe as in the proposed scheme; the second near-user stream is not sent.
    OutageTriple ncdrt(double rho_s, double rho_r) const;

    bool all_single_group() const { return special_; }
    const CfSpec& cf_sc1() const { return cf_sc1_; }
    const CfSpec& cf_sr1() const { return cf_sr1_; }
    const CfSpec& cf_sc2() const { return cf_sc2_; }
    const CfSpec& cf_re2() const { return cf_re2_; }

private:
    OutageInputs inputs(double rho_s, double rho_r) const;

    PowerAllocation alloc_;
    RateTargets rates_;
    int nm_;
    bool special_ = false;
    CfSpec cf_sc1_, cf_sr1_, cf_sc2_, cf_re2_;
    LinkOmegas omegas_;
};

/// One row per (snr_db, scheme, transmitted signal).
std::vector<OutageRow> sweep_outage(const SweepConfig& cfg);

std::vector<SumRateRow> sweep_sumrate(const SweepConfig& cfg);

void write_outage_csv(const std::string& path, const std::vector<OutageRow>& rows);
std::vector<OutageRow> read_outage_csv(const std::string& path);

void write_sumrate_csv(const std::string& path, const std::vector<SumRateRow>& rows);
std::vector<SumRateRow> read_sumrate_csv(const std::string& path);

/// CF/CDF regression harness: kernel axioms, sampling agreement for the
/// kernel and for each link's Theta model, and the single-group exponential
/// closed form. `forced` overrides the auto-tuned inversion parameters (used
/// as a negative control in tests).
struct CfValidation {
    bool passed = true;
    std::string report;
    double worst_supnorm = 0.0;
};

CfValidation validate_cf(const SweepConfig& cfg, long long samples = 100000,
                         const std::optional<InversionParams>& forced = std::nullopt);

} // namespace otfs
