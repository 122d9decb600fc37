#pragma once

#include <span>
#include <utility>
#include <vector>

#include "scdc/ensemble.hpp"
#include "scdc/profile.hpp"

namespace scdc {

// Spatially coupled chain: positions -L..L, coupling window w.
struct CoupledSystem {
  Ensemble ens;
  int L;  // half-length
  int w;  // coupling window size

  CoupledSystem(Ensemble ens_, int L_, int w_);
};

struct PotentialBreakdown {
  double w_single = 0.0;
  double w_int = 0.0;
  double w_total = 0.0;  // w_single + w_int, by construction
};

// DE residual r(z) = 1 - (1-p(z))^{1/(r-1)} - eps Int_0^1 dv (Int_0^1 du p(z+u-v))^{l-1}.
struct Residual {
  std::vector<double> values;
  double sup_norm = 0.0;
  double l2_norm = 0.0;  // sqrt(h * sum r_i^2)
};

// Discrete coupled potential, evaluated exactly as written:
//   (1/w) sum_z { -x_z(1-x_z)^{r-1} + 1/r - (1/r)(1-x_z)^r
//                 - (eps/l) ((1/w) sum_{u=0}^{w-1} (1-(1-x_{z+u})^{r-1}))^l }.
// Window sums reaching outside [-L, L] read x = 0 on the left and x_L on the
// right (terminated chain on one side, free continuation on the other).
double discrete_potential(const CoupledSystem& sys, std::span<const double> x);

// Continuum potential split into the single-system part Int W_s(p(z)) dz and
// the interaction part (eps/l) Int { p^l - (Int_0^1 p(z+u) du)^l } dz.
// Composite trapezoid over the window; the inner unit integral reuses the grid
// (h must divide 1). Tail contributions are identically zero for constant
// tails (interaction) and taken as zero for the single part (W_s vanishes at
// 0 and p_map when eps = eps_map). Throws TailMismatch when boundary values
// stray from the declared tails by more than kTailTol.
PotentialBreakdown continuum_potential(const Ensemble& ens, const Profile& pr, double p_map);

Residual de_residual(const Ensemble& ens, const Profile& pr);

// Quadrature of nu(z) * r(z) with r recomputed internally; kept deliberately
// independent of de_residual so the two can cross-check each other.
double directional_derivative(const Ensemble& ens, const Profile& pr, std::span<const double> nu);

// Riemann-sum consistency: samples pr at spacing 1/w (converted to the
// variable-node erasure x = 1-(1-p)^{1/(r-1)}), evaluates the discrete
// potential on positions -L..L for each w, and returns (w, value) pairs.
std::vector<std::pair<int, double>> continuum_limit_check(const Ensemble& ens, const Profile& pr,
                                                          const std::vector<int>& w_list, int L);

}  // namespace scdc
