#pragma once

#include <stdexcept>
#include <string>

namespace scdc {

// Profile boundary values deviate from the declared tails; the potential
// integral would not converge on such a profile.
struct TailMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operation requires an (at least) increasing profile.
struct NotMonotone : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Profile never crosses the pinning level p_map/2 inside the window.
struct NoCrossing : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Kernel distances out of the ordered sector 0 <= d_12 <= ... <= d_1l.
struct SectorViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Equal-minima solve has no nontrivial root (cycle codes l=2, or no bracket).
struct NoNontrivialRoot : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Descent iteration increased the potential beyond tolerance.
struct SolverDivergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace scdc
