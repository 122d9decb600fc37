#include "scdc/potential.hpp"

#include <cmath>
#include <stdexcept>

#include "scdc/errors.hpp"

namespace scdc {

namespace {

double pow_int(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

// Steps per unit for the inner integrals; the grid must subdivide [0,1].
int steps_per_unit(const Grid& grid) {
  double h = grid.h();
  int k = static_cast<int>(std::lround(1.0 / h));
  if (k < 1 || std::fabs(static_cast<double>(k) * h - 1.0) > 1e-9)
    throw std::invalid_argument("grid spacing must divide the unit coupling window");
  return k;
}

double trapz(const std::vector<double>& f, double h) {
  double acc = 0.5 * (f.front() + f.back());
  for (std::size_t i = 1; i + 1 < f.size(); ++i) acc += f[i];
  return acc * h;
}

void check_unit_range(const Profile& pr, const char* who) {
  for (double v : pr.values)
    if (!(v >= 0.0) || !(v <= 1.0)) throw std::domain_error(std::string(who) + ": values outside [0,1]");
}

void check_tails(const Profile& pr, const char* who) {
  if (std::fabs(pr.values.front() - pr.left_tail) > kTailTol ||
      std::fabs(pr.values.back() - pr.right_tail) > kTailTol)
    throw TailMismatch(std::string(who) + ": boundary values deviate from declared tails");
}

}  // namespace

CoupledSystem::CoupledSystem(Ensemble ens_, int L_, int w_) : ens(ens_), L(L_), w(w_) {
  if (L < 1) throw std::invalid_argument("CoupledSystem: L must be >= 1");
  if (w < 1) throw std::invalid_argument("CoupledSystem: w must be >= 1");
  if (w > 2 * L + 1) throw std::invalid_argument("CoupledSystem: need w <= 2L+1");
}

double discrete_potential(const CoupledSystem& sys, std::span<const double> x) {
  const int L = sys.L, w = sys.w;
  const int l = sys.ens.l, r = sys.ens.r;
  const double eps = sys.ens.epsilon;
  if (x.size() != static_cast<std::size_t>(2 * L + 1))
    throw std::invalid_argument("discrete_potential: x must have 2L+1 entries");
  for (double xi : x)
    if (!(xi >= 0.0) || !(xi <= 1.0))
      throw std::domain_error("discrete_potential: x outside [0,1]");

  // Out-of-range positions: perfect information left of -L, clamp right of L.
  auto x_at = [&](int z) -> double {
    if (z < -L) return 0.0;
    if (z > L) return x[static_cast<std::size_t>(2 * L)];
    return x[static_cast<std::size_t>(z + L)];
  };

  const double inv_r = 1.0 / static_cast<double>(r);
  double sum = 0.0;
  for (int z = -L; z <= L; ++z) {
    double xz = x_at(z);
    double om = 1.0 - xz;
    double s = -xz * pow_int(om, r - 1) + inv_r - inv_r * pow_int(om, r);
    double q = 0.0;
    for (int u = 0; u < w; ++u) q += 1.0 - pow_int(1.0 - x_at(z + u), r - 1);
    q /= static_cast<double>(w);
    sum += s - (eps / static_cast<double>(l)) * pow_int(q, l);
  }
  return sum / static_cast<double>(w);
}

PotentialBreakdown continuum_potential(const Ensemble& ens, const Profile& pr, double p_map) {
  (void)p_map;  // tails are the profile's own declaration; p_map documents intent
  check_unit_range(pr, "continuum_potential");
  check_tails(pr, "continuum_potential");
  const int K = steps_per_unit(pr.grid);
  const int n = pr.n();
  const double h = pr.grid.h();
  const int l = ens.l, r = ens.r;
  const double eps = ens.epsilon;

  std::vector<double> single(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    single[static_cast<std::size_t>(i)] = single_potential(ens, pr.values[static_cast<std::size_t>(i)]);

  // Interaction integrand p^l - A^l with A the unit window average of p.
  std::vector<double> inter(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double acc = 0.5 * pr.value_ext(i);
    for (int k = 1; k < K; ++k) acc += pr.value_ext(i + k);
    acc += 0.5 * pr.value_ext(i + K);
    double a = h * acc;
    inter[static_cast<std::size_t>(i)] =
        pow_int(pr.values[static_cast<std::size_t>(i)], l) - pow_int(a, l);
  }

  PotentialBreakdown out;
  out.w_single = trapz(single, h);
  out.w_int = (eps / static_cast<double>(l)) * trapz(inter, h);
  out.w_total = out.w_single + out.w_int;
  return out;
}

Residual de_residual(const Ensemble& ens, const Profile& pr) {
  check_unit_range(pr, "de_residual");
  const int K = steps_per_unit(pr.grid);
  const int n = pr.n();
  const double h = pr.grid.h();
  const int l = ens.l, r = ens.r;
  const double eps = ens.epsilon;
  const double inv_rm1 = 1.0 / static_cast<double>(r - 1);

  // A(z) = Int_0^1 p(z+u) du on the extended index range [-K, n-1].
  std::vector<double> a(static_cast<std::size_t>(n + K));
  for (int j = -K; j < n; ++j) {
    double acc = 0.5 * pr.value_ext(j);
    for (int k = 1; k < K; ++k) acc += pr.value_ext(j + k);
    acc += 0.5 * pr.value_ext(j + K);
    a[static_cast<std::size_t>(j + K)] = h * acc;
  }

  Residual res;
  res.values.resize(static_cast<std::size_t>(n));
  double sup = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    // B(z) = Int_0^1 dv A(z-v)^{l-1}
    double acc = 0.5 * pow_int(a[static_cast<std::size_t>(i + K)], l - 1);
    for (int k = 1; k < K; ++k) acc += pow_int(a[static_cast<std::size_t>(i + K - k)], l - 1);
    acc += 0.5 * pow_int(a[static_cast<std::size_t>(i)], l - 1);
    double b = h * acc;
    double p = pr.values[static_cast<std::size_t>(i)];
    double ri = 1.0 - std::pow(1.0 - p, inv_rm1) - eps * b;
    res.values[static_cast<std::size_t>(i)] = ri;
    sup = std::max(sup, std::fabs(ri));
    sq += ri * ri;
  }
  res.sup_norm = sup;
  res.l2_norm = std::sqrt(h * sq);
  return res;
}

double directional_derivative(const Ensemble& ens, const Profile& pr, std::span<const double> nu) {
  check_unit_range(pr, "directional_derivative");
  if (nu.size() != static_cast<std::size_t>(pr.n()))
    throw std::invalid_argument("directional_derivative: nu must match the grid");
  const int K = steps_per_unit(pr.grid);
  const int n = pr.n();
  const double h = pr.grid.h();
  const int l = ens.l, r = ens.r;
  const double eps = ens.epsilon;
  const double inv_rm1 = 1.0 / static_cast<double>(r - 1);

  // Independent evaluation of Int nu(z) { 1 - (1-p)^{1/(r-1)} - eps D(z) } dz
  // with D recomputed per point as a direct double quadrature (same trapezoid
  // weights as de_residual, separate code path).
  std::vector<double> integrand(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double d_acc = 0.0;
    for (int k2 = 0; k2 <= K; ++k2) {
      double acc = 0.5 * pr.value_ext(i - k2);
      for (int k = 1; k < K; ++k) acc += pr.value_ext(i - k2 + k);
      acc += 0.5 * pr.value_ext(i - k2 + K);
      double term = pow_int(h * acc, l - 1);
      d_acc += (k2 == 0 || k2 == K) ? 0.5 * term : term;
    }
    double d = h * d_acc;
    double p = pr.values[static_cast<std::size_t>(i)];
    integrand[static_cast<std::size_t>(i)] =
        nu[static_cast<std::size_t>(i)] * (1.0 - std::pow(1.0 - p, inv_rm1) - eps * d);
  }
  return trapz(integrand, h);
}

std::vector<std::pair<int, double>> continuum_limit_check(const Ensemble& ens, const Profile& pr,
                                                          const std::vector<int>& w_list, int L) {
  const double span = std::max(-pr.grid.z_min, pr.grid.z_max);
  const double inv_rm1 = 1.0 / static_cast<double>(ens.r - 1);
  std::vector<std::pair<int, double>> out;
  out.reserve(w_list.size());
  for (int w : w_list) {
    if (w < 1) throw std::invalid_argument("continuum_limit_check: w must be >= 1");
    if (static_cast<double>(L) < static_cast<double>(w) * span)
      throw std::invalid_argument("continuum_limit_check: window too small for requested w");
    std::vector<double> x(static_cast<std::size_t>(2 * L + 1));
    for (int z = -L; z <= L; ++z) {
      double p = pr.interp(static_cast<double>(z) / static_cast<double>(w));
      x[static_cast<std::size_t>(z + L)] = 1.0 - std::pow(1.0 - p, inv_rm1);
    }
    CoupledSystem sys(ens, L, w);
    out.emplace_back(w, discrete_potential(sys, x));
  }
  return out;
}

}  // namespace scdc
