#pragma once

#include "otfs/errors.hpp"

namespace otfs {

inline constexpr double kSpeedOfLight = 299792458.0; // m/s

/**
 * OTFS grid geometry: M subcarriers spaced delta_f apart, N time slots of
 * duration T = 1/delta_f. The frame spans bandwidth M*delta_f and duration
 * N*T, giving delay resolution 1/(M*delta_f) and Doppler resolution 1/(N*T).
 */
struct FrameParams {
    int M = 32;                 // frequency subcarriers (delay bins)
    int N = 16;                 // time slots (Doppler bins)
    double delta_f_hz = 3750.0; // subcarrier spacing
    double carrier_hz = 4.0e9;  // metadata only

    double slot_duration_s() const { return 1.0 / delta_f_hz; }
    double delay_resolution_s() const { return 1.0 / (M * delta_f_hz); }
    double doppler_resolution_hz() const { return delta_f_hz / N; }
    int grid_size() const { return M * N; }
};

/// Throws ConfigError unless M >= 1, N >= 1, delta_f > 0.
void check_frame(const FrameParams& params);

/// Point on the delay-Doppler grid: Doppler bin k in [0,N), delay bin l in [0,M).
struct DdIndex {
    int k = 0;
    int l = 0;
};

struct ValidatedFrame {
    FrameParams params;
    double delay_resolution_s = 0.0;
    double doppler_resolution_hz = 0.0;
};

/**
 * Checks that the grid can carry the channel: slot duration T >= tau_max and
 * subcarrier spacing delta_f >= v_max. Throws FrameTooSmall naming the
 * violated bound.
 */
ValidatedFrame validate_frame(const FrameParams& params, double tau_max_s, double v_max_hz);

/// Vectorization index l*N + k. All grids, matrices, and spectra in this
/// library use this convention.
int linear_index(const DdIndex& idx, const FrameParams& params);

/// Inverse of linear_index.
DdIndex dd_index_of(int w, const FrameParams& params);

/// Maximum Doppler shift speed*carrier/c for a mobile at `speed_mps`.
double max_doppler_hz(double speed_mps, double carrier_hz);

} // namespace otfs
