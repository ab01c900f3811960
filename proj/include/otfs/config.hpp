#pragma once

#include <string>
#include <vector>

#include "otfs/montecarlo.hpp"
#include "otfs/protocol.hpp"

namespace otfs {

/**
 * One sweep description: a scenario template (SNR filled per grid point),
 * the SNR grid, the relay-to-source power ratio, the schemes to run, and the
 * Monte Carlo budget.
 */
struct SweepConfig {
    Scenario scenario;               // rho_s/rho_r placeholders; set per point
    std::vector<double> snr_grid_db; // rho_s grid in dB
    double pr_over_ps = 0.5;
    std::vector<Scheme> schemes;
    McConfig mc;
};

/// Built-in defaults: 32x16 grid at 3.75 kHz / 4 GHz, alpha = (0.1, 0.9),
/// three-path taps k = [0,1,2], l = [0,2,3] on every link, omegas
/// (1, 0.5, 1, 1, 1), rates (1.8, 1, 1), grid 0..40 dB in 2 dB steps.
SweepConfig default_sweep_config();

/// Loads a JSON config file over the defaults (every field optional).
/// Throws ConfigError with line/field diagnostics.
SweepConfig load_sweep_config(const std::string& path);

/// Parses config text (same schema as the file loader).
SweepConfig parse_sweep_config(const std::string& text, const std::string& origin);

/// Scenario for one grid point: linear SNRs filled from snr_db and
/// pr_over_ps, scheme set.
Scenario scenario_at(const SweepConfig& cfg, double snr_db, Scheme scheme);

double db_to_linear(double db);

} // namespace otfs
