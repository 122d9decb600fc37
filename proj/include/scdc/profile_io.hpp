#pragma once

#include <string>

#include "scdc/profile.hpp"

namespace scdc {

// Shortest 17-significant-digit representation; round-trips 64-bit floats.
std::string format_g17(double x);

// CSV format: comment lines "# left_tail=..." / "# right_tail=...", header
// "z,p", then one row per grid point at 17 significant digits.
void write_profile_csv(const Profile& pr, const std::string& path);
Profile read_profile_csv(const std::string& path);

}  // namespace scdc
