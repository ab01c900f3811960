// Independent test oracles: brute-force routes that never share code with the
// implementation paths they check.
#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "otfs/channel.hpp"
#include "otfs/frame.hpp"
#include "otfs/modem.hpp"

namespace oracle {

using otfs::cplx;

// ---- quadrature oracle for K1 ----
// K1(z) = integral_0^inf exp(-z cosh t) cosh t dt, Re z > 0, evaluated with
// composite Gauss-Legendre panels.

struct GaussRule {
    std::vector<double> nodes;   // on (-1, 1)
    std::vector<double> weights;
};

inline GaussRule gauss_legendre(int n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Newton from the Chebyshev initial guess
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        rule.nodes[i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
    return rule;
}

inline cplx k1_integral(cplx z) {
    static const GaussRule rule = gauss_legendre(32);
    // choose T so the tail beyond it is ~1e-24 relative to K1 ~ e^{-Re z}
    const double re = z.real();
    double cosh_t = (56.0 + re) / re;
    for (int i = 0; i < 4; ++i) {
        cosh_t = (56.0 + re + std::log(cosh_t)) / re;
    }
    const double T = std::acosh(std::max(1.0 + 1e-12, cosh_t));
    const int panels = std::max(8, static_cast<int>(std::ceil(T / 0.25)));
    const double h = T / panels;
    cplx sum{0.0, 0.0};
    for (int p = 0; p < panels; ++p) {
        const double a = p * h;
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            const double t = a + 0.5 * h * (rule.nodes[q] + 1.0);
            const double ch = std::cosh(t);
            sum += rule.weights[q] * std::exp(-z * ch) * ch;
        }
    }
    return 0.5 * h * sum;
}

// ---- dense-matrix oracles ----

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

inline CMat dense_effective_matrix(const otfs::ChannelRealization& real,
                                   const otfs::FrameParams& frame) {
    const int nm = frame.grid_size();
    const std::vector<cplx> flat = otfs::build_effective_matrix(real, frame);
    CMat mat(nm, nm);
    for (int r = 0; r < nm; ++r) {
        for (int c = 0; c < nm; ++c) {
            mat(r, c) = flat[static_cast<std::size_t>(r) * nm + c];
        }
    }
    return mat;
}

inline std::vector<cplx> dense_eigenvalues(const CMat& mat) {
    Eigen::ComplexEigenSolver<CMat> solver(mat, false);
    std::vector<cplx> out(solver.eigenvalues().data(),
                          solver.eigenvalues().data() + solver.eigenvalues().size());
    return out;
}

// max over a greedy nearest-neighbor matching of two complex multisets;
// robust against near-ties that a lexicographic sort would mispair
inline double multiset_distance(const std::vector<cplx>& a, std::vector<cplx> b) {
    double worst = 0.0;
    std::vector<bool> used(b.size(), false);
    for (const cplx& v : a) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_idx = 0;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (!used[j] && std::abs(v - b[j]) < best) {
                best = std::abs(v - b[j]);
                best_idx = j;
            }
        }
        used[best_idx] = true;
        worst = std::max(worst, best);
    }
    return worst;
}

// direct evaluation of the twisted-convolution sum, no matrix involved
inline otfs::DdGrid direct_channel_sum(const otfs::ChannelRealization& real,
                                       const otfs::DdGrid& x, const otfs::FrameParams& frame) {
    otfs::DdGrid y;
    y.values.assign(x.values.size(), cplx{0.0, 0.0});
    for (int k = 0; k < frame.N; ++k) {
        for (int l = 0; l < frame.M; ++l) {
            cplx acc{0.0, 0.0};
            for (std::size_t w = 0; w < real.profile.paths.size(); ++w) {
                const int kp = ((k - real.profile.paths[w].doppler) % frame.N + frame.N) % frame.N;
                const int lp = ((l - real.profile.paths[w].delay) % frame.M + frame.M) % frame.M;
                acc += real.gains[w] * x.values[static_cast<std::size_t>(lp) * frame.N + kp];
            }
            y.values[static_cast<std::size_t>(l) * frame.N + k] = acc;
        }
    }
    return y;
}

inline CVec to_eigen(const std::vector<cplx>& v) {
    CVec out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
        out(static_cast<Eigen::Index>(i)) = v[i];
    }
    return out;
}

inline std::vector<cplx> from_eigen(const CVec& v) {
    return std::vector<cplx>(v.data(), v.data() + v.size());
}

// (H^H H)^{-1} H^H y
inline std::vector<cplx> dense_zf(const CMat& h, const std::vector<cplx>& y) {
    const CMat gram = h.adjoint() * h;
    const CVec rhs = h.adjoint() * to_eigen(y);
    return from_eigen(gram.fullPivLu().solve(rhs));
}

// chi-square(15) upper 1% critical value
inline constexpr double kChiSq15_99 = 30.5779;

} // namespace oracle
