#pragma once

#include <string>

namespace otfs {

/**
 * Renders a sweep CSV (either schema) into SVG line charts under out_dir:
 * outage CSVs get a log-y chart per signal series, sum-rate CSVs a linear
 * chart. Pure rendering; throws ConfigError for empty or unrecognized CSVs.
 * Returns the number of files written.
 */
int plot_csv(const std::string& csv_path, const std::string& out_dir);

} // namespace otfs
