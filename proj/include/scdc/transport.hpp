#pragma once

#include <utility>
#include <vector>

#include "scdc/ensemble.hpp"
#include "scdc/potential.hpp"
#include "scdc/profile.hpp"

namespace scdc {

// Displacement path between two increasing profiles with the same p_map:
// linear interpolation of the quantile functions, z_lambda = (1-l) z_0 + l z_1.
struct InterpolationPath {
  Profile p0;
  Profile p1;
  int m = 2000;                 // quantile resolution (midpoint levels)
  std::vector<double> lambdas;  // sampling for probes; default 21 uniform

  static std::vector<double> uniform_lambdas(int count = 21);
};

struct ConvexityReport {
  std::vector<double> lambdas;
  std::vector<PotentialBreakdown> values;
  std::vector<double> second_differences;  // raw W(l-)-2W(l)+W(l+) on the uniform grid
  double min_second_difference = 0.0;
  double single_linearity_defect = 0.0;    // max |W_single(lambda) - chord|
};

// Interpolated profile at lambda, reconstructed on p0's grid. Endpoints must
// be at least increasing (NotMonotone otherwise) and share p_map. If both
// endpoints are pinned and strictly increasing the result is returned pinned.
Profile displacement_interpolate(const InterpolationPath& path, double lambda);

// Evaluates W, W_single, W_int along the path. lambda = 0 and 1 are evaluated
// on the input profiles themselves; interior lambdas go through the quantile
// reconstruction. Fills second differences of W and the linearity defect of
// W_single.
ConvexityReport convexity_probe(const Ensemble& ens, const InterpolationPath& path, double p_map);

// Noise floor of the probe: max |second difference| along a path with
// identical endpoints, where W(lambda) is constant. Strict-convexity checks
// use 3x this floor as their threshold.
double convexity_noise_floor(const Ensemble& ens, const Profile& p, int m, int n_lambdas,
                             double p_map);

// Residual-descent demonstration of the direct method: p <- pin(clamp(p -
// step_size * r)) with r the DE residual, re-sorted if monotonicity is lost.
// The potential trace must be non-increasing; two consecutive increases beyond
// 1e-6 throw SolverDivergence. Returns the final profile and its potential.
std::pair<Profile, PotentialBreakdown> displacement_descent(const Ensemble& ens,
                                                            const Profile& start, int steps,
                                                            double step_size);

}  // namespace scdc
