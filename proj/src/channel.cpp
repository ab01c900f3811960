#include "otfs/channel.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace otfs {

const char* link_name(LinkId link) {
    switch (link) {
        case LinkId::sc_t1: return "sc_t1";
        case LinkId::sr_t1: return "sr_t1";
        case LinkId::sc_t2: return "sc_t2";
        case LinkId::rc_t2: return "rc_t2";
        case LinkId::re_t2: return "re_t2";
    }
    return "?";
}

void check_profile(const ChannelProfile& profile, const FrameParams& frame) {
    check_frame(frame);
    if (profile.paths.empty()) {
        throw ConfigError("channel: profile needs at least one path");
    }
    if (!(profile.omega_total > 0.0)) {
        throw ConfigError("channel: omega_total must be positive");
    }
    for (std::size_t a = 0; a < profile.paths.size(); ++a) {
        const PathTap& tap = profile.paths[a];
        if (tap.doppler < 0 || tap.doppler >= frame.N || tap.delay < 0 || tap.delay >= frame.M) {
            std::ostringstream msg;
            msg << "channel: tap (k=" << tap.doppler << ", l=" << tap.delay
                << ") outside the " << frame.N << "x" << frame.M << " grid on link "
                << link_name(profile.link);
            throw ConfigError(msg.str());
        }
        for (std::size_t b = a + 1; b < profile.paths.size(); ++b) {
            if (profile.paths[b].doppler == tap.doppler && profile.paths[b].delay == tap.delay) {
                throw ConfigError("channel: duplicate tap pair; paths must be resolvable");
            }
        }
    }
}

ChannelRealization draw_realization(const ChannelProfile& profile, SplitMix64& rng) {
    const double per_path_var = profile.omega_total / static_cast<double>(profile.paths.size());
    ChannelRealization real;
    real.profile = profile;
    real.gains.reserve(profile.paths.size());
    for (std::size_t w = 0; w < profile.paths.size(); ++w) {
        real.gains.push_back(rng.next_cgauss(per_path_var));
    }
    return real;
}

namespace {

// exp(+j*2*pi*(n*k/N - m*l/M)) via the common denominator NM
cplx path_phase(int n, int m, int k_tap, int l_tap, const FrameParams& frame) {
    const long long nm = static_cast<long long>(frame.N) * frame.M;
    long long e = (static_cast<long long>(n) * k_tap * frame.M -
                   static_cast<long long>(m) * l_tap * frame.N) % nm;
    if (e < 0) e += nm;
    const double angle = 2.0 * M_PI * static_cast<double>(e) / static_cast<double>(nm);
    return {std::cos(angle), std::sin(angle)};
}

} // namespace

EigenSpectrum eigen_spectrum(const ChannelRealization& real, const FrameParams& frame) {
    check_profile(real.profile, frame);
    EigenSpectrum spec;
    spec.N = frame.N;
    spec.M = frame.M;
    spec.lambdas.assign(frame.grid_size(), cplx{0.0, 0.0});
    for (std::size_t w = 0; w < real.profile.paths.size(); ++w) {
        const PathTap& tap = real.profile.paths[w];
        const cplx gain = real.gains[w];
        for (int m = 0; m < frame.M; ++m) {
            for (int n = 0; n < frame.N; ++n) {
                spec.lambdas[static_cast<std::size_t>(m) * frame.N + n] +=
                    gain * path_phase(n, m, tap.doppler, tap.delay, frame);
            }
        }
    }
    return spec;
}

std::vector<cplx> build_effective_matrix(const ChannelRealization& real, const FrameParams& frame) {
    check_profile(real.profile, frame);
    const int nm = frame.grid_size();
    if (nm > 4096) {
        throw ConfigError("build_effective_matrix: NM > 4096; dense assembly is for oracles only");
    }
    std::vector<cplx> mat(static_cast<std::size_t>(nm) * nm, cplx{0.0, 0.0});
    for (int l = 0; l < frame.M; ++l) {
        for (int k = 0; k < frame.N; ++k) {
            const int row = l * frame.N + k;
            for (std::size_t w = 0; w < real.profile.paths.size(); ++w) {
                const PathTap& tap = real.profile.paths[w];
                const int kp = ((k - tap.doppler) % frame.N + frame.N) % frame.N;
                const int lp = ((l - tap.delay) % frame.M + frame.M) % frame.M;
                const int col = lp * frame.N + kp;
                mat[static_cast<std::size_t>(row) * nm + col] += real.gains[w];
            }
        }
    }
    return mat;
}

GroupStructure group_structure(const ChannelProfile& profile, const FrameParams& frame) {
    check_profile(profile, frame);
    const long long nm = frame.grid_size();
    const std::size_t P = profile.paths.size();
    // Two grid points share a group when their per-path phase vectors agree up
    // to one common rotation; then their eigenvalues have equal magnitude for
    // every realization (the rotation is the first path's phase). Exact
    // integer arithmetic on the phase exponents modulo NM.
    std::map<std::vector<long long>, int> seen; // normalized exponent vector -> group id
    GroupStructure out;
    std::vector<long long> key(P);
    for (int m = 0; m < frame.M; ++m) {
        for (int n = 0; n < frame.N; ++n) {
            for (std::size_t w = 0; w < P; ++w) {
                long long e =
                    (static_cast<long long>(n) *
                         (profile.paths[w].doppler - profile.paths[0].doppler) * frame.M -
                     static_cast<long long>(m) *
                         (profile.paths[w].delay - profile.paths[0].delay) * frame.N) %
                    nm;
                if (e < 0) e += nm;
                key[w] = e;
            }
            auto [it, inserted] = seen.emplace(key, out.G);
            if (inserted) {
                out.G++;
                out.multiplicities.push_back(1);
                out.representatives.push_back(EigenIndex{n, m});
            } else {
                out.multiplicities[static_cast<std::size_t>(it->second)]++;
            }
        }
    }
    return out;
}

double theta(const EigenSpectrum& spec) {
    double mean_sq = 0.0;
    for (const cplx& lam : spec.lambdas) {
        mean_sq += std::norm(lam);
    }
    mean_sq /= static_cast<double>(spec.lambdas.size());
    const double floor_sq = kSingularRelThreshold * mean_sq;
    double sum = 0.0;
    for (const cplx& lam : spec.lambdas) {
        const double sq = std::norm(lam);
        if (sq < floor_sq || sq == 0.0) {
            return std::numeric_limits<double>::infinity();
        }
        sum += 1.0 / sq;
    }
    return sum;
}

LinkSampler::LinkSampler(const ChannelProfile& profile, const FrameParams& frame)
    : profile_(profile), groups_(group_structure(profile, frame)), nm_(frame.grid_size()) {
    const std::size_t P = profile_.paths.size();
    rep_phases_.resize(static_cast<std::size_t>(groups_.G) * P);
    for (int g = 0; g < groups_.G; ++g) {
        const EigenIndex rep = groups_.representatives[static_cast<std::size_t>(g)];
        for (std::size_t w = 0; w < P; ++w) {
            rep_phases_[static_cast<std::size_t>(g) * P + w] =
                path_phase(rep.n, rep.m, profile_.paths[w].doppler, profile_.paths[w].delay, frame);
        }
    }
}

double LinkSampler::draw_theta(SplitMix64& rng) const {
    const std::size_t P = profile_.paths.size();
    const double per_path_var = profile_.omega_total / static_cast<double>(P);
    std::vector<cplx> gains(P);
    for (std::size_t w = 0; w < P; ++w) {
        gains[w] = rng.next_cgauss(per_path_var);
    }
    return theta_from_gains(gains);
}

double LinkSampler::theta_from_gains(const std::vector<cplx>& gains) const {
    const std::size_t P = profile_.paths.size();
    double mean_sq = 0.0;
    double sum = 0.0;
    double min_sq = std::numeric_limits<double>::infinity();
    for (int g = 0; g < groups_.G; ++g) {
        cplx lam{0.0, 0.0};
        for (std::size_t w = 0; w < P; ++w) {
            lam += gains[w] * rep_phases_[static_cast<std::size_t>(g) * P + w];
        }
        const double sq = std::norm(lam);
        const double count = groups_.multiplicities[static_cast<std::size_t>(g)];
        mean_sq += count * sq;
        min_sq = std::min(min_sq, sq);
        if (sq > 0.0) {
            sum += count / sq;
        }
    }
    mean_sq /= static_cast<double>(nm_);
    if (min_sq < kSingularRelThreshold * mean_sq || min_sq == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return sum;
}

} // namespace otfs
