#pragma once

#include <string>
#include <vector>

#include "roughcp/change_stats.hpp"

namespace roughcp {

// Shortest decimal string that round-trips to the same double; non-finite
// values format as the empty string.
std::string format_number(double v);

// Matrix CSV: corner cell "angle_deg", header row of delays, one row per
// angle with the angle at fixed 6-decimal precision. UTF-8, comma, LF.
void write_csv(const RoughnessMatrix& matrix, const std::string& path, bool as_hurst = false);

// Inverse of write_csv (empty cells back to NaN).
RoughnessMatrix read_csv(const std::string& path);

// Generic table writer used by the experiment reports. A non-empty comment
// becomes a leading '#' line (provenance such as the RNG identifier).
void write_table_csv(const std::string& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows,
                     const std::string& comment = "");

}  // namespace roughcp
