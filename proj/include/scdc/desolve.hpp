#pragma once

#include <utility>
#include <vector>

#include "scdc/potential.hpp"
#include "scdc/profile.hpp"

namespace scdc {

struct SolveConfig {
  int max_iters = 200000;
  double tol = 1e-10;       // sup-norm of the damped iterate change
  double damping = 0.5;     // in (0, 1]
  bool pin_each_iter = true;
  bool record_trace = true;
};

struct DiscreteSolveResult {
  std::vector<double> x;
  int iterations = 0;
  double final_residual = 0.0;  // last sup-norm change
  bool converged = false;
  std::vector<double> potential_trace;  // discrete potential per iteration
};

struct ContinuumSolveResult {
  Profile profile;
  int iterations = 0;
  double final_residual = 0.0;  // last sup-norm change
  bool converged = false;
  std::vector<double> potential_trace;  // W per iteration (solver fast path)
};

// Damped Jacobi iteration of the coupled FP map
//   x_z <- eps/w sum_{k=0}^{w-1} (1 - (1/w) sum_{i=0}^{w-1} (1-x_{z-k+i})^{r-1})^{l-1}
// with the boundary convention of discrete_potential (x = 0 left of -L,
// x = x_L right of L). Non-convergence is reported via the flag.
DiscreteSolveResult discrete_de_solve(const CoupledSystem& sys, std::vector<double> x0,
                                      const SolveConfig& cfg);

// Damped iteration of the continuum DE in explicit form,
//   p(z) <- 1 - (1 - eps Int_0^1 dv (Int_0^1 du p(z+u-v))^{l-1})^{r-1},
// clamped to [0, p_map], re-pinned each iteration when requested. Any fixed
// point solves the DE exactly; the damping and pinning only shape the path.
ContinuumSolveResult continuum_de_solve(const Ensemble& ens, const Profile& p0,
                                        const SolveConfig& cfg, double p_map);

// Maximal intervals of length > 2h on which consecutive differences stay
// below tol while the value sits strictly inside (tol, p_map - tol). A
// converged DE solution must return the empty list.
std::vector<std::pair<double, double>> flat_spot_check(const Profile& pr, double tol);

// Tightness bound M_delta = 2 eps (l-1) p_map^{l-2} / (l (l+1) C delta^2) with
// C the quadratic-lower-bound constant of W_s near its minima, computed as
//   C = min_{p in [delta p_map/2, p_map - delta p_map/2]} W_s(p) / (p_map^2 delta^2 / 4).
// Converged solutions must satisfy p(M) - p(-M) > (1-delta) p_map.
double tightness_bound(const Ensemble& ens, double p_map, double delta);

}  // namespace scdc
