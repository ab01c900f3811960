#pragma once

#include <complex>
#include <vector>

#include "otfs/channel.hpp"
#include "otfs/modem.hpp"

namespace otfs {

/**
 * Modified Bessel function of the second kind, order 1, complex argument on
 * the closed right half-plane (principal branch). Power series below |z| = 3,
 * Steed-type continued fraction above. Throws DomainError for Re(z) < 0 or
 * z = 0.
 */
cplx bessel_k1(cplx z);

/**
 * Characteristic-function kernel of an inverse-exponential variate:
 * psi(t, Omega) = z*K1(z) with z = 2*sqrt(-j*t*Omega)/Omega, the CF of 1/X
 * for X exponential with mean Omega. psi(0) = 1; negative t by conjugate
 * symmetry.
 */
cplx psi_kernel(double t, double omega);

/// CF of Theta under the independent-group model: a product of psi kernels,
/// one per distinct-eigenvalue group, scaled by its multiplicity.
struct CfSpec {
    std::vector<int> multiplicities;
    double omega = 1.0;

    int nm() const;
};

CfSpec make_cf_spec(const GroupStructure& groups, double omega);

cplx cf_theta(double t, const CfSpec& spec);

/// Step size and truncation count of the CDF inversion sum.
struct InversionParams {
    double mu = 0.0;
    long long terms = 0; // I
};

/**
 * Picks inversion parameters for evaluating the CDF at z: a doubling/halving
 * search finds the smallest power of two Ts with |cf(Ts)| < 1e-8, then
 * terms = max(2000, ceil(Ts * W / 2pi)) and mu = Ts / terms, where the
 * periodization window W = 50*z + ln(2)*NM/(omega*5e-4) bounds the aliasing
 * contribution of the heavy Theta tail by about 5e-4. Throws NonDecayingCf
 * if no such Ts exists below 2^40.
 */
InversionParams auto_tune_inversion(const CfSpec& spec, double z);

/**
 * CDF of Theta at z by the half-offset imaginary-part inversion sum:
 * 0.5 - (1/pi) * sum_{i=0}^{I} Im(exp(-j(i+.5)mu z) cf((i+.5)mu))/(i+.5),
 * clamped to [0, 1] (a warning is printed if the raw value leaves the
 * interval by more than 1e-3).
 */
double gil_pelaez_cdf(double z, const InversionParams& params, const CfSpec& spec);

/// Auto-tuned convenience overload.
double gil_pelaez_cdf(double z, const CfSpec& spec);

/// Target rates in bits per channel use, uniform across the NM symbols.
struct RateTargets {
    double r_xc = 1.8;
    double r_xe = 1.0;
    double r_xbarc = 1.0;
};

void check_rates(const RateTargets& rates);

/// Decoding threshold 2^(2R) - 1 for a half pre-log.
double sinr_threshold(double rate_bpcu);
/// Threshold 2^(4R) - 1 for the quarter pre-log of the four-phase OMA baseline.
double sinr_threshold_oma(double rate_bpcu);

/// Everything the closed forms need besides the per-link channel statistics.
struct OutageInputs {
    PowerAllocation alloc{0.1, 0.9};
    double rho_s = 1.0;
    double rho_r = 0.5;
    int nm = 512;
    RateTargets rates;

    double phi_xe() const { return sinr_threshold(rates.r_xe); }
    double phi_xc() const { return sinr_threshold(rates.r_xc); }
    double phi_xbarc() const { return sinr_threshold(rates.r_xbarc); }
    /// The power split can carry the far-user stream through SIC only when
    /// alpha_e/alpha_c exceeds the far-user threshold.
    bool noma_feasible() const { return alloc.alpha_e / alloc.alpha_c > phi_xe(); }

    double xi1() const;
    double xi2() const;
    double xi3() const;
    double xi4() const;
    double xi5() const;
};

struct OutageTriple {
    double xc = 1.0;
    double xe = 1.0;
    double xbarc = 1.0;
};

/// Per-link average powers for the special (single-group) closed forms.
struct LinkOmegas {
    double sc1 = 1.0;
    double sr1 = 0.5;
    double sc2 = 1.0;
    double re2 = 1.0;
};

double outage_xc_general(const OutageInputs& in, const CfSpec& cf_sc1);
double outage_xe_general(const OutageInputs& in, const CfSpec& cf_sr1, const CfSpec& cf_re2);
double outage_xbarc_general(const OutageInputs& in, const CfSpec& cf_sc2);

/// Single-group closed forms (every link has G = 1).
OutageTriple outage_special(const OutageInputs& in, const LinkOmegas& omegas);

/// Four-phase orthogonal baseline, full power per phase, quarter pre-log.
OutageTriple outage_oma_general(const OutageInputs& in, const CfSpec& cf_sc1,
                                const CfSpec& cf_sr1, const CfSpec& cf_sc2,
                                const CfSpec& cf_re2);
OutageTriple outage_oma_special(const OutageInputs& in, const LinkOmegas& omegas);

/// Normalized outage sum rate ((1-p)R summed over the three signals) / 2.
double outage_sum_rate(const OutageTriple& p, const RateTargets& rates);
/// As above without the second-phase near-user stream (relay-only baseline).
double outage_sum_rate_ncdrt(const OutageTriple& p, const RateTargets& rates);
/// Four-phase baseline: quarter pre-log.
double outage_sum_rate_oma(const OutageTriple& p, const RateTargets& rates);

} // namespace otfs
