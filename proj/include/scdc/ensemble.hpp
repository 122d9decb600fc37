#pragma once

#include <vector>

namespace scdc {

// (l,r)-regular Gallager ensemble on the BEC with erasure probability epsilon.
struct Ensemble {
  int l;           // variable-node degree, >= 2
  int r;           // check-node degree, >= 2
  double epsilon;  // channel erasure probability, in (0,1)

  Ensemble(int l_, int r_, double epsilon_);
};

// Solution of the equal-minima condition W_s(p) = W_s'(p) = 0 at p > 0.
struct ThresholdResult {
  double epsilon_map = 0.0;
  double p_map = 0.0;
  double residual = 0.0;  // max(|W_s(p_map)|, |W_s'(p_map)|) at the solution
};

// Single system potential
//   W_s(p) = (1 - 1/r)(1-p)^{r/(r-1)} - (1-p) + 1/r - (eps/l) p^l,
// the integrand of the uncoupled part of the coupled potential. Throws
// std::domain_error for p outside [0,1].
double single_potential(const Ensemble& ens, double p);

// dW_s/dp = 1 - (1-p)^{1/(r-1)} - eps p^{l-1}. Zeros are exactly the fixed
// points of uncoupled density evolution in the check-erasure variable.
double single_potential_deriv(const Ensemble& ens, double p);

// Equal-minima (Maxwell) solve: returns epsilon and the p > 0 at which W_s and
// W_s' vanish simultaneously. Nested bisection: the inner stage locates the
// largest stationary point p*(eps) by sign-change scan + bisection, the outer
// stage bisects eps on the sign of W_s(p*(eps)). Throws NoNontrivialRoot for
// l = 2 (cycle codes have p_map = 0) or when no bracket exists.
ThresholdResult map_threshold(int l, int r);

// All roots of W_s'(p) = 0 in [0,1], ascending. p = 0 is always a root and is
// always included. Dense sign-change scan (step 1e-4) refined by bisection.
std::vector<double> uncoupled_de_fixed_points(const Ensemble& ens);

}  // namespace scdc
