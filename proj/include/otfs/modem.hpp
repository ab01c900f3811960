#pragma once

#include <vector>

#include "otfs/channel.hpp"
#include "otfs/frame.hpp"
#include "otfs/rng.hpp"

namespace otfs {

/// Delay-Doppler grid of NM symbols, values[l*N + k] = x[k, l].
struct DdGrid {
    std::vector<cplx> values;
};

/// Time-frequency grid of NM symbols, values[m*N + n] = X[n, m].
struct TfGrid {
    std::vector<cplx> values;
};

/// Power split between the near-user and far-user streams. Requires
/// alpha_c + alpha_e = 1 and 0 < alpha_c < alpha_e.
struct PowerAllocation {
    PowerAllocation(double alpha_c_, double alpha_e_);
    double alpha_c;
    double alpha_e;
};

/**
 * DD -> TF transform of the transmit chain:
 * X[n,m] = (1/NM) * sum_{k,l} x[k,l] * exp(+j2*pi*(nk/N - ml/M)).
 * Its inverse sfft carries no normalization factor, so the pair is identity.
 */
TfGrid isfft(const DdGrid& dd, const FrameParams& frame);

/// TF -> DD: x[k,l] = sum_{n,m} X[n,m] * exp(-j2*pi*(nk/N - ml/M)).
DdGrid sfft(const TfGrid& tf, const FrameParams& frame);

/// Elementwise sqrt(alpha_c)*x_c + sqrt(alpha_e)*x_e.
DdGrid superpose(const DdGrid& x_c, const DdGrid& x_e, const PowerAllocation& alloc);

/// Twisted circular convolution of the channel with the DD grid:
/// y[k,l] = sum_w gain_w * x[(k - k_w) mod N, (l - l_w) mod M]. Noiseless;
/// the caller adds noise.
DdGrid apply_dd_channel(const ChannelRealization& real, const DdGrid& x, const FrameParams& frame);

/**
 * Zero-forcing equalization in the eigen domain: transform to TF, divide by
 * the eigenvalue at each grid point, transform back. Throws SingularChannel
 * when the spectrum has a (near-)zero eigenvalue.
 */
DdGrid zf_equalize(const DdGrid& y, const EigenSpectrum& spec);

/// Payload constellations for the simulated symbol chain. Outage metrics
/// depend only on SINR, so the choice is observable only in debug runs.
enum class Payload { qpsk, gaussian };

/// NM unit-average-energy random symbols.
DdGrid random_payload(Payload kind, int nm, SplitMix64& rng);

/// Adds CN(0, variance) noise to every symbol in place.
void add_noise(DdGrid& grid, double variance, SplitMix64& rng);

} // namespace otfs
