#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "otfs/analysis.hpp"
#include "otfs/rng.hpp"

using namespace otfs;

TEST_CASE("bessel_k1 matches the integral-representation oracle on the used rays") {
    // the CF kernel evaluates K1 along arg z = -pi/4 (and +pi/4 by symmetry)
    for (const double arg : {-M_PI / 4, M_PI / 4, 0.0, M_PI / 8}) {
        for (double mag = 1e-6; mag <= 50.0; mag *= 1.7) {
            const cplx z = std::polar(mag, arg);
            const cplx mine = bessel_k1(z);
            const cplx ref = oracle::k1_integral(z);
            CHECK(std::abs(mine - ref) / std::abs(ref) < 1e-10);
        }
    }
}

TEST_CASE("bessel_k1 agrees with the standard library on the real axis") {
    for (double x = 0.25; x <= 40.0; x *= 1.5) {
        const cplx mine = bessel_k1(cplx{x, 0.0});
        CHECK(std::abs(mine.real() - std::cyl_bessel_k(1.0, x)) /
                  std::cyl_bessel_k(1.0, x) <
              1e-12);
        CHECK(std::abs(mine.imag()) < 1e-300);
    }
}

TEST_CASE("bessel_k1 frozen values") {
    CHECK(std::abs(bessel_k1(cplx{1.0, 0.0}) - cplx{0.6019072301972346, 0.0}) < 1e-13);
    CHECK(std::abs(bessel_k1(cplx{0.5, 2.0}) -
                   cplx{-0.5373631254679898, -0.1833481500850518}) < 1e-12);
}

TEST_CASE("z*K1(z) -> 1 as z -> 0") {
    const cplx z = std::polar(1e-6, -M_PI / 4);
    CHECK(std::abs(z * bessel_k1(z) - cplx{1.0, 0.0}) < 1e-5);
}

TEST_CASE("bessel_k1 reflection symmetry and domain errors") {
    for (double mag : {0.3, 2.9, 3.1, 20.0}) {
        const cplx z = std::polar(mag, M_PI / 5);
        CHECK(std::abs(bessel_k1(std::conj(z)) - std::conj(bessel_k1(z))) <
              1e-12 * std::abs(bessel_k1(z)));
    }
    CHECK_THROWS_AS(bessel_k1(cplx{0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(bessel_k1(cplx{-0.5, 1.0}), DomainError);
}

TEST_CASE("psi kernel axioms") {
    CHECK(psi_kernel(0.0, 1.0) == cplx{1.0, 0.0});
    CHECK(psi_kernel(0.0, 17.0) == cplx{1.0, 0.0});
    for (double t = -100.0; t <= 100.0; t += 7.3) {
        if (t == 0.0) {
            continue;
        }
        CHECK(std::abs(psi_kernel(t, 1.0)) <= 1.0 + 1e-12);
        CHECK(std::abs(psi_kernel(-t, 2.5) - std::conj(psi_kernel(t, 2.5))) == 0.0);
    }
    CHECK_THROWS_AS(psi_kernel(1.0, 0.0), DomainError);
}

TEST_CASE("psi kernel matches the sampled CF of an inverse exponential") {
    // X ~ Exp(mean 1); empirical (1/S) sum exp(j t / X)
    const long long samples = 1000000;
    for (const double t : {0.1, 1.0, 10.0}) {
        SplitMix64 rng(777 + static_cast<std::uint64_t>(t * 10));
        cplx acc{0.0, 0.0};
        for (long long i = 0; i < samples; ++i) {
            const double arg = t / rng.next_exp(1.0);
            acc += cplx{std::cos(arg), std::sin(arg)};
        }
        acc /= static_cast<double>(samples);
        CHECK(std::abs(acc - psi_kernel(t, 1.0)) < 0.005);
    }
}

TEST_CASE("cf_theta: single group reduces to one kernel, t=0 gives 1") {
    const CfSpec spec{{64}, 1.0};
    CHECK(cf_theta(0.0, spec) == cplx{1.0, 0.0});
    for (const double t : {0.01, 0.5, 3.0}) {
        CHECK(std::abs(cf_theta(t, spec) - psi_kernel(64.0 * t, 1.0)) < 1e-14);
    }
}

TEST_CASE("cf_theta matches the sampled CF of the independent-group model") {
    const CfSpec spec{{2, 5, 9}, 0.8};
    const long long samples = 1000000;
    for (const double t : {0.01, 0.1, 1.0}) {
        SplitMix64 rng(4242 + static_cast<std::uint64_t>(t * 1000));
        cplx acc{0.0, 0.0};
        for (long long i = 0; i < samples; ++i) {
            double theta_sample = 0.0;
            for (const int c : spec.multiplicities) {
                theta_sample += c / rng.next_exp(spec.omega);
            }
            const double arg = t * theta_sample;
            acc += cplx{std::cos(arg), std::sin(arg)};
        }
        acc /= static_cast<double>(samples);
        CHECK(std::abs(acc - cf_theta(t, spec)) < 0.01);
    }
}

TEST_CASE("gil_pelaez_cdf matches the exponential closed form for one group") {
    // Theta = NM/X with X ~ Exp(mean omega): CDF(z) = exp(-NM/(omega z))
    const int nm = 64;
    const double omega = 1.0;
    const CfSpec spec{{nm}, omega};
    double sup = 0.0;
    for (const double q : {1e-4, 1e-3, 0.01, 0.05, 0.2, 0.5, 0.8, 0.95, 0.99, 0.999}) {
        const double z = -nm / (omega * std::log(q));
        sup = std::max(sup, std::abs(gil_pelaez_cdf(z, spec) - q));
    }
    CHECK(sup < 0.005);
}

TEST_CASE("gil_pelaez_cdf limits") {
    const CfSpec spec{{64}, 1.0};
    CHECK(gil_pelaez_cdf(1e6 * 64.0, spec) > 0.99);
    CHECK(gil_pelaez_cdf(1.0, spec) < 0.01); // true CDF ~ e^-64
}

TEST_CASE("gil_pelaez_cdf is nondecreasing up to quadrature ripple") {
    const CfSpec spec{{8, 24, 32}, 1.3};
    double prev = -1.0;
    for (int i = 0; i < 50; ++i) {
        const double z = 4.0 * std::pow(1.25, i);
        const double v = gil_pelaez_cdf(z, spec);
        CHECK(v >= prev - 1e-3);
        prev = std::max(prev, v);
    }
}

TEST_CASE("auto_tune_inversion: refinement never worsens the exponential match") {
    const int nm = 64;
    const CfSpec spec{{nm}, 1.0};
    for (const double q : {0.02, 0.2, 0.5, 0.8, 0.98}) {
        const double z = -nm / std::log(q);
        const InversionParams tuned = auto_tune_inversion(spec, z);
        const double t_star = tuned.mu * static_cast<double>(tuned.terms);
        const double err_base = std::abs(gil_pelaez_cdf(z, tuned, spec) - q);
        InversionParams finer;
        finer.terms = tuned.terms * 2;
        finer.mu = t_star / static_cast<double>(finer.terms);
        const double err_fine = std::abs(gil_pelaez_cdf(z, finer, spec) - q);
        CHECK(err_fine <= err_base + 1e-4);
    }
}

TEST_CASE("auto_tune_inversion flags a non-decaying CF") {
    // omega -> infinity drives Theta to 0 and the CF to 1 everywhere
    const CfSpec degenerate{{64}, 1e30};
    CHECK_THROWS_AS(auto_tune_inversion(degenerate, 10.0), NonDecayingCf);
}

namespace {

OutageInputs reference_inputs() {
    OutageInputs in;
    in.alloc = PowerAllocation{0.1, 0.9};
    in.rho_s = 100.0;
    in.rho_r = 50.0;
    in.nm = 512;
    in.rates = RateTargets{1.8, 1.0, 1.0};
    return in;
}

} // namespace

TEST_CASE("outage thresholds and xi values") {
    const OutageInputs in = reference_inputs();
    CHECK(in.phi_xe() == doctest::Approx(3.0));
    CHECK(in.phi_xc() == doctest::Approx(11.125732532083186));
    CHECK(in.phi_xbarc() == doctest::Approx(3.0));
    CHECK(in.noma_feasible());
    // xi5 = max{3/60, 11.1257/10} -> the near-user stream's own threshold binds
    CHECK(in.xi5() == doctest::Approx(1.1125732532083186));
    CHECK(in.xi1() == doctest::Approx(512.0 * 0.1 * 100.0 / 11.125732532083186));
    CHECK(in.xi2() == doctest::Approx(512.0 * 0.6 * 100.0 / 3.0));
    CHECK(in.xi3() == doctest::Approx(512.0 * 50.0 / 3.0));
    CHECK(in.xi4() == doctest::Approx(512.0 * 100.0 / 3.0));
}

TEST_CASE("outage_special frozen example and limits") {
    const OutageInputs in = reference_inputs();
    const LinkOmegas omegas{1.0, 0.5, 1.0, 1.0};
    const OutageTriple p = outage_special(in, omegas);
    CHECK(p.xc == doctest::Approx(0.6712879874049326).epsilon(1e-12));
    OutageInputs in_b = in;
    in_b.rho_r = 1.0; // isolate the xbarc expression at rho_s = 100
    CHECK(outage_special(in_b, omegas).xbarc == doctest::Approx(0.029554466451491845));

    // omega -> infinity: all outages vanish
    const OutageTriple p_inf = outage_special(in, LinkOmegas{1e12, 1e12, 1e12, 1e12});
    CHECK(p_inf.xc < 1e-9);
    CHECK(p_inf.xe < 1e-9);
    CHECK(p_inf.xbarc < 1e-9);
}

TEST_CASE("degenerate power split forces the first-phase outages to one") {
    OutageInputs in = reference_inputs();
    in.rates.r_xe = 1.7; // phi_xe = 2^3.4 - 1 = 9.556 > alpha_e/alpha_c = 9
    CHECK_FALSE(in.noma_feasible());
    const OutageTriple p = outage_special(in, LinkOmegas{1.0, 0.5, 1.0, 1.0});
    CHECK(p.xc == 1.0);
    CHECK(p.xe == 1.0);
    CHECK(p.xbarc < 1.0);
    const CfSpec cf{{512}, 1.0};
    CHECK(outage_xc_general(in, cf) == 1.0);
    CHECK(outage_xe_general(in, cf, cf) == 1.0);
}

TEST_CASE("general pipeline reduces to the closed forms when G = 1") {
    const LinkOmegas omegas{1.0, 0.5, 1.0, 1.0};
    const CfSpec cf_sc1{{512}, omegas.sc1};
    const CfSpec cf_sr1{{512}, omegas.sr1};
    const CfSpec cf_sc2{{512}, omegas.sc2};
    const CfSpec cf_re2{{512}, omegas.re2};
    for (int db = 0; db <= 36; db += 6) {
        OutageInputs in = reference_inputs();
        in.rho_s = std::pow(10.0, db / 10.0);
        in.rho_r = 0.5 * in.rho_s;
        const OutageTriple special = outage_special(in, omegas);
        CHECK(std::abs(outage_xc_general(in, cf_sc1) - special.xc) < 1e-3);
        CHECK(std::abs(outage_xe_general(in, cf_sr1, cf_re2) - special.xe) < 1e-3);
        CHECK(std::abs(outage_xbarc_general(in, cf_sc2) - special.xbarc) < 1e-3);
    }
}

TEST_CASE("outage probabilities vanish at high SNR") {
    OutageInputs in = reference_inputs();
    in.rho_s = 1e8;
    in.rho_r = 0.5e8;
    const CfSpec cf{{512}, 1.0};
    CHECK(outage_xc_general(in, cf) < 1e-3);
    CHECK(outage_xbarc_general(in, cf) < 1e-3);
    const OutageTriple p = outage_special(in, LinkOmegas{1.0, 0.5, 1.0, 1.0});
    CHECK(p.xc < 1e-3);
    CHECK(p.xe < 1e-3);
    CHECK(p.xbarc < 1e-3);
}

TEST_CASE("outage outputs stay inside [0,1] under fuzzing") {
    SplitMix64 rng(31337);
    for (int i = 0; i < 10000; ++i) {
        OutageInputs in;
        const double ac = 0.01 + 0.48 * rng.next_unit();
        in.alloc = PowerAllocation{ac, 1.0 - ac};
        in.rho_s = std::pow(10.0, 6.0 * rng.next_unit() - 1.0);
        in.rho_r = in.rho_s * (0.1 + rng.next_unit());
        in.nm = 1 << (rng.next_u64() % 11);
        in.rates = RateTargets{0.1 + 3.0 * rng.next_unit(), 0.1 + 3.0 * rng.next_unit(),
                               0.1 + 3.0 * rng.next_unit()};
        const LinkOmegas omegas{0.1 + 3.0 * rng.next_unit(), 0.05 + 0.2 * rng.next_unit(),
                                0.1 + 3.0 * rng.next_unit(), 0.1 + 3.0 * rng.next_unit()};
        const OutageTriple p = outage_special(in, omegas);
        for (const double v : {p.xc, p.xe, p.xbarc}) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
        const OutageTriple q = outage_oma_special(in, omegas);
        for (const double v : {q.xc, q.xe, q.xbarc}) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
    }
    // a few dozen through the inversion pipeline as well
    for (int i = 0; i < 24; ++i) {
        OutageInputs in;
        const double ac = 0.05 + 0.3 * rng.next_unit();
        in.alloc = PowerAllocation{ac, 1.0 - ac};
        in.rho_s = std::pow(10.0, 4.0 * rng.next_unit());
        in.rho_r = 0.5 * in.rho_s;
        in.nm = 64;
        in.rates = RateTargets{0.2 + 2.0 * rng.next_unit(), 0.2 + 2.0 * rng.next_unit(),
                               0.2 + 2.0 * rng.next_unit()};
        const CfSpec cf{{16, 16, 16, 16}, 0.5 + rng.next_unit()};
        for (const double v : {outage_xc_general(in, cf), outage_xe_general(in, cf, cf),
                               outage_xbarc_general(in, cf)}) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
    }
}

TEST_CASE("outage_sum_rate: ceiling, floor, and baseline variants") {
    const RateTargets rates{1.8, 1.0, 1.0};
    CHECK(outage_sum_rate(OutageTriple{0, 0, 0}, rates) == doctest::Approx(1.9));
    CHECK(outage_sum_rate(OutageTriple{1, 1, 1}, rates) == doctest::Approx(0.0));
    CHECK(outage_sum_rate_ncdrt(OutageTriple{0, 0, 1}, rates) == doctest::Approx(1.4));
    CHECK(outage_sum_rate_oma(OutageTriple{0, 0, 0}, rates) == doctest::Approx(0.95));
    // the relay-only baseline is the proposed rate minus the xbarc term
    const OutageTriple p{0.25, 0.5, 0.125};
    CHECK(outage_sum_rate_ncdrt(p, rates) ==
          doctest::Approx(outage_sum_rate(p, rates) - (1.0 - p.xbarc) * rates.r_xbarc / 2.0));
    CHECK_THROWS_AS(outage_sum_rate(OutageTriple{-0.1, 0, 0}, rates), DomainError);
}
