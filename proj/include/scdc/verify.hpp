#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scdc/profile.hpp"
#include "scdc/rng.hpp"

namespace scdc {

struct PropertyResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<PropertyResult> results;

  bool all_pass() const;
  std::string to_text() const;  // deterministic, one line per property
};

// Property batteries over the truncation / rearrangement / bound / transport /
// kernel claims. suite "lemmas" runs the functional-inequality set; "all" adds
// the kernel scans and the continuum-limit check.
VerifyReport run_verify(const std::string& suite, std::uint64_t seed, int threads = 0);

// Random profile families used by the batteries (exposed for tests).
// Increasing, boundary-clean on the standard window; optional exact flats.
Profile random_increasing_profile(Rng& rng, const Grid& grid, double p_map, bool allow_flats);
// Strictly increasing and pinned at the origin.
Profile random_pinned_profile(Rng& rng, const Grid& grid, double p_map);
// Interior dips: class S, values in [0, p_map].
Profile random_nonmonotone_profile(Rng& rng, const Grid& grid, double p_map);
// Exceeds p_map on an interior set of measure > h (for truncation checks).
Profile random_exceeding_profile(Rng& rng, const Grid& grid, double p_map);

}  // namespace scdc
