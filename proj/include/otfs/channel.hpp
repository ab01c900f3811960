#pragma once

#include <complex>
#include <string>
#include <vector>

#include "otfs/frame.hpp"
#include "otfs/rng.hpp"

namespace otfs {

using cplx = std::complex<double>;

/// Which link (and phase) a channel profile describes.
enum class LinkId { sc_t1, sr_t1, sc_t2, rc_t2, re_t2 };

const char* link_name(LinkId link);

/// One resolvable propagation path: integer Doppler and delay taps.
struct PathTap {
    int doppler = 0; // k tap, in [0, N)
    int delay = 0;   // l tap, in [0, M)
};

/**
 * Static description of one link: the resolvable paths and the total average
 * power Omega shared across them. Path taps must be distinct; per-path power
 * is Omega/P.
 */
struct ChannelProfile {
    std::vector<PathTap> paths;
    double omega_total = 1.0;
    LinkId link = LinkId::sc_t1;
};

/// Throws ConfigError on empty/duplicate taps, taps outside the grid, or
/// nonpositive power.
void check_profile(const ChannelProfile& profile, const FrameParams& frame);

/// A drawn fading state: one complex gain per path, CN(0, Omega/P) each.
/// The delay-Doppler phase rotation is absorbed into the gains at draw time.
struct ChannelRealization {
    ChannelProfile profile;
    std::vector<cplx> gains;
};

ChannelRealization draw_realization(const ChannelProfile& profile, SplitMix64& rng);

/**
 * The NM eigenvalues of the effective delay-Doppler channel matrix,
 * lambda(n, m) = sum_w gain_w * exp(+j2*pi*(n*k_w/N - m*l_w/M)),
 * stored at index m*N + n (same vectorization as the DD grids).
 */
struct EigenSpectrum {
    int N = 0;
    int M = 0;
    std::vector<cplx> lambdas;
};

EigenSpectrum eigen_spectrum(const ChannelRealization& real, const FrameParams& frame);

/**
 * Dense NM x NM effective channel matrix (row-major): row l*N+k, column
 * l'*N+k' carries the sum of gains over paths with k' = (k - k_w) mod N and
 * l' = (l - l_w) mod M. Oracle/testing only; guarded to NM <= 4096.
 */
std::vector<cplx> build_effective_matrix(const ChannelRealization& real, const FrameParams& frame);

/// Eigen-grid point (Doppler index n, delay index m).
struct EigenIndex {
    int n = 0;
    int m = 0;
};

/**
 * Partition of the NM grid points into classes whose per-path phase vectors
 * agree up to one common rotation, so their eigenvalue magnitudes coincide
 * for every realization of the profile (a single path always collapses to
 * G = 1). Computed with exact integer arithmetic on the phase exponents
 * (n*k_w*M - m*l_w*N) mod NM, never with floating comparisons.
 */
struct GroupStructure {
    int G = 0;
    std::vector<int> multiplicities;       // class sizes, sum = NM
    std::vector<EigenIndex> representatives; // one grid point per class
};

GroupStructure group_structure(const ChannelProfile& profile, const FrameParams& frame);

/**
 * Theta = sum_w |lambda_w|^-2, the post-ZF noise enhancement. Returns
 * +infinity when any |lambda_w|^2 falls below 1e-12 times the mean squared
 * magnitude (the realization then counts as an outage downstream instead of
 * poisoning the arithmetic).
 */
double theta(const EigenSpectrum& spec);

inline constexpr double kSingularRelThreshold = 1e-12;

/**
 * Per-link sampler: precomputes the group structure and the per-group path
 * phases for one (profile, frame) pair so a Monte Carlo trial only has to
 * draw P gains and evaluate G representative eigenvalues.
 */
class LinkSampler {
public:
    LinkSampler(const ChannelProfile& profile, const FrameParams& frame);

    /// Draws a fresh realization and returns its Theta (or +inf sentinel).
    double draw_theta(SplitMix64& rng) const;

    /// Theta for an already-drawn set of path gains.
    double theta_from_gains(const std::vector<cplx>& gains) const;

    const GroupStructure& groups() const { return groups_; }
    const ChannelProfile& profile() const { return profile_; }

private:
    ChannelProfile profile_;
    GroupStructure groups_;
    int nm_ = 0;
    // rep_phases_[g*P + w]: phase factor of path w at the representative of group g
    std::vector<cplx> rep_phases_;
};

} // namespace otfs
