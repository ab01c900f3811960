#include "otfs/frame.hpp"

#include <sstream>

namespace otfs {

void check_frame(const FrameParams& params) {
    if (params.M < 1 || params.N < 1) {
        throw ConfigError("frame: M and N must be >= 1");
    }
    if (!(params.delta_f_hz > 0.0)) {
        throw ConfigError("frame: delta_f must be positive");
    }
}

ValidatedFrame validate_frame(const FrameParams& params, double tau_max_s, double v_max_hz) {
    check_frame(params);
    if (tau_max_s < 0.0 || v_max_hz < 0.0) {
        throw ConfigError("frame: channel spreads must be nonnegative");
    }
    const double T = params.slot_duration_s();
    if (T < tau_max_s) {
        std::ostringstream msg;
        msg << "frame: slot duration " << T << " s is below the delay spread " << tau_max_s
            << " s (delay bound violated)";
        throw FrameTooSmall(msg.str());
    }
    if (params.delta_f_hz < v_max_hz) {
        std::ostringstream msg;
        msg << "frame: subcarrier spacing " << params.delta_f_hz
            << " Hz is below the Doppler spread " << v_max_hz << " Hz (Doppler bound violated)";
        throw FrameTooSmall(msg.str());
    }
    return ValidatedFrame{params, params.delay_resolution_s(), params.doppler_resolution_hz()};
}

int linear_index(const DdIndex& idx, const FrameParams& params) {
    if (idx.k < 0 || idx.k >= params.N || idx.l < 0 || idx.l >= params.M) {
        throw ConfigError("linear_index: delay-Doppler index out of range");
    }
    return idx.l * params.N + idx.k;
}

DdIndex dd_index_of(int w, const FrameParams& params) {
    if (w < 0 || w >= params.grid_size()) {
        throw ConfigError("dd_index_of: linear index out of range");
    }
    return DdIndex{w % params.N, w / params.N};
}

double max_doppler_hz(double speed_mps, double carrier_hz) {
    if (speed_mps < 0.0 || carrier_hz < 0.0) {
        throw ConfigError("max_doppler_hz: inputs must be nonnegative");
    }
    return speed_mps * carrier_hz / kSpeedOfLight;
}

} // namespace otfs
