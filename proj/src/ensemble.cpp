#include "scdc/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "scdc/errors.hpp"

namespace scdc {

namespace {

constexpr double kScanStep = 1e-4;

double ws(int l, int r, double eps, double p) {
  double one_m_p = 1.0 - p;
  double rr = static_cast<double>(r);
  return (1.0 - 1.0 / rr) * std::pow(one_m_p, rr / (rr - 1.0)) - one_m_p + 1.0 / rr -
         (eps / static_cast<double>(l)) * std::pow(p, static_cast<double>(l));
}

double ws_deriv(int l, int r, double eps, double p) {
  double rr = static_cast<double>(r);
  return 1.0 - std::pow(1.0 - p, 1.0 / (rr - 1.0)) - eps * std::pow(p, static_cast<double>(l - 1));
}

// Bisection on the sign of W_s' inside a bracketing interval.
double refine_root(int l, int r, double eps, double lo, double hi) {
  double flo = ws_deriv(l, r, eps, lo);
  for (int it = 0; it < 100 && hi - lo > 1e-15; ++it) {
    double mid = 0.5 * (lo + hi);
    double fmid = ws_deriv(l, r, eps, mid);
    if ((flo <= 0.0) == (fmid <= 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Largest stationary point of W_s in (0, 1], if any. Scans at step 1e-4 for a
// sign change of W_s' and refines the rightmost bracket.
std::optional<double> largest_stationary_point(int l, int r, double eps) {
  const int steps = static_cast<int>(std::lround(1.0 / kScanStep));
  double prev_p = kScanStep;
  double prev_f = ws_deriv(l, r, eps, prev_p);
  std::optional<double> best;
  for (int k = 2; k <= steps; ++k) {
    double p = kScanStep * static_cast<double>(k);
    if (p > 1.0) p = 1.0;
    double f = ws_deriv(l, r, eps, p);
    if ((prev_f <= 0.0) != (f <= 0.0)) best = refine_root(l, r, eps, prev_p, p);
    prev_p = p;
    prev_f = f;
  }
  return best;
}

}  // namespace

Ensemble::Ensemble(int l_, int r_, double epsilon_) : l(l_), r(r_), epsilon(epsilon_) {
  if (l < 2) throw std::invalid_argument("Ensemble: l must be >= 2");
  if (r < 2) throw std::invalid_argument("Ensemble: r must be >= 2");
  if (!(epsilon > 0.0) || !(epsilon < 1.0))
    throw std::invalid_argument("Ensemble: epsilon must lie in (0,1)");
}

double single_potential(const Ensemble& ens, double p) {
  if (p < 0.0 || p > 1.0) throw std::domain_error("single_potential: p outside [0,1]");
  return ws(ens.l, ens.r, ens.epsilon, p);
}

double single_potential_deriv(const Ensemble& ens, double p) {
  if (p < 0.0 || p > 1.0) throw std::domain_error("single_potential_deriv: p outside [0,1]");
  return ws_deriv(ens.l, ens.r, ens.epsilon, p);
}

ThresholdResult map_threshold(int l, int r) {
  if (l == 2) throw NoNontrivialRoot("map_threshold: cycle codes (l=2) have p_map = 0");
  if (l < 2 || r < 2) throw std::invalid_argument("map_threshold: degrees must be >= 2");

  // Value of W_s at the largest stationary point; positive when no nontrivial
  // stationary point exists (below threshold the only minimum is p = 0).
  auto min_value = [&](double eps) -> double {
    auto p = largest_stationary_point(l, r, eps);
    if (!p) return 1.0;
    return ws(l, r, eps, *p);
  };

  // Bracket in eps: min_value is decreasing in eps.
  double eps_lo = 1e-6;
  double eps_hi = 1.0 - 1e-9;
  if (min_value(eps_lo) <= 0.0 || min_value(eps_hi) >= 0.0)
    throw NoNontrivialRoot("map_threshold: equal-minima condition has no bracket in (0,1)");

  for (int it = 0; it < 100 && eps_hi - eps_lo > 1e-13; ++it) {
    double mid = 0.5 * (eps_lo + eps_hi);
    if (min_value(mid) > 0.0)
      eps_lo = mid;
    else
      eps_hi = mid;
  }

  double eps_map = 0.5 * (eps_lo + eps_hi);
  auto p_map = largest_stationary_point(l, r, eps_map);
  if (!p_map) throw NoNontrivialRoot("map_threshold: lost the stationary point at the solution");

  ThresholdResult res;
  res.epsilon_map = eps_map;
  res.p_map = *p_map;
  res.residual = std::max(std::fabs(ws(l, r, eps_map, *p_map)),
                          std::fabs(ws_deriv(l, r, eps_map, *p_map)));
  return res;
}

std::vector<double> uncoupled_de_fixed_points(const Ensemble& ens) {
  std::vector<double> roots{0.0};
  const int steps = static_cast<int>(std::lround(1.0 / kScanStep));
  double prev_p = kScanStep;
  double prev_f = ws_deriv(ens.l, ens.r, ens.epsilon, prev_p);
  if (prev_f == 0.0) roots.push_back(prev_p);
  for (int k = 2; k <= steps; ++k) {
    double p = std::min(1.0, kScanStep * static_cast<double>(k));
    double f = ws_deriv(ens.l, ens.r, ens.epsilon, p);
    if ((prev_f <= 0.0) != (f <= 0.0))
      roots.push_back(refine_root(ens.l, ens.r, ens.epsilon, prev_p, p));
    else if (f == 0.0)
      roots.push_back(p);
    prev_p = p;
    prev_f = f;
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](double a, double b) { return std::fabs(a - b) < 1e-9; }),
              roots.end());
  return roots;
}

}  // namespace scdc
