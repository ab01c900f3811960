#include "otfs/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <limits>
#include <numeric>

namespace otfs {

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// K1 ascending series (small |z|):
// K1(z) = ln(z/2) I1(z) + 1/z - (z/4) sum_k [psi(k+1)+psi(k+2)] q^k/(k!(k+1)!)
// with q = z^2/4 and digamma at integers psi(m) = -gamma + H_{m-1}.
cplx k1_series(cplx z) {
    const cplx q = z * z * 0.25;
    cplx term{1.0, 0.0}; // q^k / (k! (k+1)!)
    cplx i1_sum{0.0, 0.0};
    cplx psi_sum{0.0, 0.0};
    double harmonic = 0.0; // H_k
    for (int k = 0; k < 40; ++k) {
        const double psi1 = -kEulerGamma + harmonic;
        const double psi2 = psi1 + 1.0 / (k + 1);
        i1_sum += term;
        psi_sum += (psi1 + psi2) * term;
        term *= q / static_cast<double>((k + 1) * (k + 2));
        harmonic += 1.0 / (k + 1);
        if (std::norm(term) < 1e-64) {
            break;
        }
    }
    const cplx i1 = 0.5 * z * i1_sum;
    return std::log(0.5 * z) * i1 + 1.0 / z - 0.25 * z * psi_sum;
}

// Steed-type continued fraction for K0/K1 (midrange and large |z|, Re z > 0).
cplx k1_continued_fraction(cplx z) {
    constexpr double kEps = 1e-16;
    constexpr int kMaxIter = 20000;
    const double a1 = 0.25;
    cplx b = 2.0 * (1.0 + z);
    cplx d = 1.0 / b;
    cplx h = d;
    cplx delh = d;
    cplx q1{0.0, 0.0};
    cplx q2{1.0, 0.0};
    double a = -a1;
    double c = a1;
    cplx q{c, 0.0};
    cplx s = 1.0 + q * delh;
    for (int i = 2; i < kMaxIter; ++i) {
        a -= 2 * (i - 1);
        c = -a * c / i;
        const cplx qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const cplx dels = q * delh;
        s += dels;
        if (std::abs(dels) <= kEps * std::abs(s)) {
            const cplx k0 = std::sqrt(M_PI / (2.0 * z)) * std::exp(-z) / s;
            return k0 * (0.5 + z - a1 * h) / z;
        }
    }
    throw DomainError("bessel_k1: continued fraction failed to converge");
}

} // namespace

cplx bessel_k1(cplx z) {
    if (z == cplx{0.0, 0.0}) {
        throw DomainError("bessel_k1: z = 0");
    }
    if (z.real() < 0.0) {
        throw DomainError("bessel_k1: Re(z) must be nonnegative");
    }
    return std::abs(z) < 3.0 ? k1_series(z) : k1_continued_fraction(z);
}

cplx psi_kernel(double t, double omega) {
    if (!(omega > 0.0)) {
        throw DomainError("psi_kernel: omega must be positive");
    }
    if (t == 0.0) {
        return {1.0, 0.0};
    }
    // z = 2*sqrt(-j|t|*Omega)/Omega = sqrt(2|t|/Omega)*(1 - j), principal root
    const double r = std::sqrt(2.0 * std::abs(t) / omega);
    const cplx z{r, -r};
    const cplx value = z * bessel_k1(z);
    return t > 0.0 ? value : std::conj(value);
}

int CfSpec::nm() const {
    return std::accumulate(multiplicities.begin(), multiplicities.end(), 0);
}

CfSpec make_cf_spec(const GroupStructure& groups, double omega) {
    return CfSpec{groups.multiplicities, omega};
}

namespace {

cplx pow_int(cplx base, long long e) {
    cplx acc{1.0, 0.0};
    while (e > 0) {
        if (e & 1) {
            acc *= base;
        }
        base *= base;
        e >>= 1;
        if (std::norm(acc) < 1e-240) {
            return {0.0, 0.0};
        }
    }
    return acc;
}

// Groups sharing a multiplicity share the kernel value, so evaluate each
// distinct multiplicity once and raise it to the repeat count.
struct CompiledCf {
    std::vector<std::pair<int, long long>> census; // (multiplicity, repeats)
    double omega;

    explicit CompiledCf(const CfSpec& spec) : omega(spec.omega) {
        std::map<int, long long> counts;
        for (int c : spec.multiplicities) {
            ++counts[c];
        }
        census.assign(counts.begin(), counts.end());
    }

    cplx operator()(double t) const {
        cplx prod{1.0, 0.0};
        for (const auto& [mult, repeats] : census) {
            prod *= pow_int(psi_kernel(mult * t, omega), repeats);
            if (std::norm(prod) < 1e-240) {
                return {0.0, 0.0};
            }
        }
        return prod;
    }
};

} // namespace

cplx cf_theta(double t, const CfSpec& spec) { return CompiledCf(spec)(t); }

InversionParams auto_tune_inversion(const CfSpec& spec, double z) {
    if (!(z > 0.0)) {
        throw DomainError("auto_tune_inversion: z must be positive");
    }
    constexpr double kCfTail = 1e-8;
    constexpr double kAliasBudget = 5e-4;
    const CompiledCf cf(spec);
    // smallest power of two T* with |cf(T*)| < kCfTail
    double t_star = 1.0;
    if (std::abs(cf(t_star)) < kCfTail) {
        while (t_star > 0x1p-60 && std::abs(cf(0.5 * t_star)) < kCfTail) {
            t_star *= 0.5;
        }
    } else {
        while (std::abs(cf(t_star)) >= kCfTail) {
            t_star *= 2.0;
            if (t_star > 0x1p40) {
                throw NonDecayingCf("auto_tune_inversion: |cf| never falls below 1e-8");
            }
        }
    }
    // Periodization window: the sampled sum folds tail mass beyond ~2*pi/mu
    // back into the estimate. With P(Theta > u) ~ NM/(omega*u) the folded
    // bands contribute about ln(2)*NM/(omega*W), so W is sized for kAliasBudget.
    const double window = 50.0 * z + std::log(2.0) * spec.nm() / (spec.omega * kAliasBudget);
    const long long terms =
        std::max<long long>(2000, static_cast<long long>(std::ceil(t_star * window / (2.0 * M_PI))));
    return InversionParams{t_star / static_cast<double>(terms), terms};
}

double gil_pelaez_cdf(double z, const InversionParams& params, const CfSpec& spec) {
    if (!(z > 0.0)) {
        throw DomainError("gil_pelaez_cdf: z must be positive");
    }
    const CompiledCf cf(spec);
    double sum = 0.0;
    for (long long i = 0; i <= params.terms; ++i) {
        const double half = static_cast<double>(i) + 0.5;
        const double t = half * params.mu;
        const cplx rot{std::cos(t * z), -std::sin(t * z)};
        sum += (rot * cf(t)).imag() / half;
    }
    const double raw = 0.5 - sum / M_PI;
    if (raw < -1e-3 || raw > 1.0 + 1e-3) {
        std::fprintf(stderr,
                     "otfs: warning: CDF inversion at z=%g left [0,1] by %.3g; clamped\n", z,
                     raw < 0.0 ? -raw : raw - 1.0);
    }
    return std::clamp(raw, 0.0, 1.0);
}

double gil_pelaez_cdf(double z, const CfSpec& spec) {
    return gil_pelaez_cdf(z, auto_tune_inversion(spec, z), spec);
}

void check_rates(const RateTargets& rates) {
    if (!(rates.r_xc > 0.0) || !(rates.r_xe > 0.0) || !(rates.r_xbarc > 0.0)) {
        throw ConfigError("rates: all target rates must be positive");
    }
}

double sinr_threshold(double rate_bpcu) { return std::exp2(2.0 * rate_bpcu) - 1.0; }

double sinr_threshold_oma(double rate_bpcu) { return std::exp2(4.0 * rate_bpcu) - 1.0; }

double OutageInputs::xi1() const {
    const double pe = phi_xe();
    return std::min(nm * (alloc.alpha_e - pe * alloc.alpha_c) * rho_s / pe,
                    nm * alloc.alpha_c * rho_s / phi_xc());
}

double OutageInputs::xi2() const {
    const double pe = phi_xe();
    return nm * (alloc.alpha_e - alloc.alpha_c * pe) * rho_s / pe;
}

double OutageInputs::xi3() const { return nm * rho_r / phi_xe(); }

double OutageInputs::xi4() const { return nm * rho_s / phi_xbarc(); }

double OutageInputs::xi5() const {
    const double pe = phi_xe();
    return std::max(pe / ((alloc.alpha_e - pe * alloc.alpha_c) * rho_s),
                    phi_xc() / (alloc.alpha_c * rho_s));
}

double outage_xc_general(const OutageInputs& in, const CfSpec& cf_sc1) {
    if (!in.noma_feasible()) {
        return 1.0;
    }
    return 1.0 - gil_pelaez_cdf(in.xi1(), cf_sc1);
}

double outage_xe_general(const OutageInputs& in, const CfSpec& cf_sr1, const CfSpec& cf_re2) {
    if (!in.noma_feasible()) {
        return 1.0;
    }
    return 1.0 - gil_pelaez_cdf(in.xi2(), cf_sr1) * gil_pelaez_cdf(in.xi3(), cf_re2);
}

double outage_xbarc_general(const OutageInputs& in, const CfSpec& cf_sc2) {
    return 1.0 - gil_pelaez_cdf(in.xi4(), cf_sc2);
}

OutageTriple outage_special(const OutageInputs& in, const LinkOmegas& omegas) {
    OutageTriple p;
    const double pe = in.phi_xe();
    p.xbarc = 1.0 - std::exp(-in.phi_xbarc() / (in.rho_s * omegas.sc2));
    if (!in.noma_feasible()) {
        p.xc = 1.0;
        p.xe = 1.0;
        return p;
    }
    p.xc = 1.0 - std::exp(-in.xi5() / omegas.sc1);
    p.xe = 1.0 - std::exp(-pe / (in.rho_r * omegas.re2)) *
                     std::exp(-pe / ((in.alloc.alpha_e - pe * in.alloc.alpha_c) * in.rho_s *
                                     omegas.sr1));
    return p;
}

OutageTriple outage_oma_general(const OutageInputs& in, const CfSpec& cf_sc1,
                                const CfSpec& cf_sr1, const CfSpec& cf_sc2,
                                const CfSpec& cf_re2) {
    OutageTriple p;
    p.xc = 1.0 - gil_pelaez_cdf(in.nm * in.rho_s / sinr_threshold_oma(in.rates.r_xc), cf_sc1);
    const double phi4e = sinr_threshold_oma(in.rates.r_xe);
    p.xe = 1.0 - gil_pelaez_cdf(in.nm * in.rho_s / phi4e, cf_sr1) *
                     gil_pelaez_cdf(in.nm * in.rho_r / phi4e, cf_re2);
    p.xbarc =
        1.0 - gil_pelaez_cdf(in.nm * in.rho_s / sinr_threshold_oma(in.rates.r_xbarc), cf_sc2);
    return p;
}

OutageTriple outage_oma_special(const OutageInputs& in, const LinkOmegas& omegas) {
    OutageTriple p;
    const double phi4e = sinr_threshold_oma(in.rates.r_xe);
    p.xc = 1.0 - std::exp(-sinr_threshold_oma(in.rates.r_xc) / (in.rho_s * omegas.sc1));
    p.xe = 1.0 - std::exp(-phi4e / (in.rho_s * omegas.sr1)) *
                     std::exp(-phi4e / (in.rho_r * omegas.re2));
    p.xbarc = 1.0 - std::exp(-sinr_threshold_oma(in.rates.r_xbarc) / (in.rho_s * omegas.sc2));
    return p;
}

namespace {

void check_probs(const OutageTriple& p) {
    const auto ok = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!ok(p.xc) || !ok(p.xe) || !ok(p.xbarc)) {
        throw DomainError("outage_sum_rate: probabilities must lie in [0,1]");
    }
}

} // namespace

double outage_sum_rate(const OutageTriple& p, const RateTargets& rates) {
    check_probs(p);
    return ((1.0 - p.xc) * rates.r_xc + (1.0 - p.xe) * rates.r_xe +
            (1.0 - p.xbarc) * rates.r_xbarc) /
           2.0;
}

double outage_sum_rate_ncdrt(const OutageTriple& p, const RateTargets& rates) {
    check_probs(p);
    return ((1.0 - p.xc) * rates.r_xc + (1.0 - p.xe) * rates.r_xe) / 2.0;
}

double outage_sum_rate_oma(const OutageTriple& p, const RateTargets& rates) {
    check_probs(p);
    return ((1.0 - p.xc) * rates.r_xc + (1.0 - p.xe) * rates.r_xe +
            (1.0 - p.xbarc) * rates.r_xbarc) /
           4.0;
}

} // namespace otfs
