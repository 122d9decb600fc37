#include "scdc/desolve.hpp"

#include <algorithm>
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

void validate_config(const SolveConfig& cfg) {
  if (cfg.max_iters < 0) throw std::invalid_argument("SolveConfig: max_iters must be >= 0");
  if (!(cfg.tol > 0.0)) throw std::invalid_argument("SolveConfig: tol must be > 0");
  if (!(cfg.damping > 0.0) || cfg.damping > 1.0)
    throw std::invalid_argument("SolveConfig: damping must lie in (0,1]");
}

}  // namespace

DiscreteSolveResult discrete_de_solve(const CoupledSystem& sys, std::vector<double> x0,
                                      const SolveConfig& cfg) {
  validate_config(cfg);
  const int L = sys.L, w = sys.w;
  const int l = sys.ens.l, r = sys.ens.r;
  const double eps = sys.ens.epsilon;
  const int n = 2 * L + 1;
  if (x0.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("discrete_de_solve: x0 must have 2L+1 entries");
  for (double xi : x0)
    if (!(xi >= 0.0) || !(xi <= 1.0)) throw std::domain_error("discrete_de_solve: x0 outside [0,1]");

  DiscreteSolveResult res;
  res.x = std::move(x0);

  auto x_at = [&](const std::vector<double>& x, int z) -> double {
    if (z < -L) return 0.0;
    if (z > L) return x[static_cast<std::size_t>(n - 1)];
    return x[static_cast<std::size_t>(z + L)];
  };

  std::vector<double> g(static_cast<std::size_t>(n + w - 1));  // positions -L-w+1 .. L
  std::vector<double> next(static_cast<std::size_t>(n));
  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    for (int y = -L - w + 1; y <= L; ++y) {
      double s = 0.0;
      for (int i = 0; i < w; ++i) s += pow_int(1.0 - x_at(res.x, y + i), r - 1);
      g[static_cast<std::size_t>(y + L + w - 1)] = 1.0 - s / static_cast<double>(w);
    }
    double change = 0.0;
    for (int z = -L; z <= L; ++z) {
      double f = 0.0;
      for (int k = 0; k < w; ++k)
        f += pow_int(g[static_cast<std::size_t>(z - k + L + w - 1)], l - 1);
      f *= eps / static_cast<double>(w);
      std::size_t j = static_cast<std::size_t>(z + L);
      double updated = (1.0 - cfg.damping) * res.x[j] + cfg.damping * f;
      change = std::max(change, std::fabs(updated - res.x[j]));
      next[j] = updated;
    }
    res.x.swap(next);
    res.iterations = iter;
    res.final_residual = change;
    if (cfg.record_trace) res.potential_trace.push_back(discrete_potential(sys, res.x));
    if (change <= cfg.tol) {
      res.converged = true;
      break;
    }
  }
  return res;
}

ContinuumSolveResult continuum_de_solve(const Ensemble& ens, const Profile& p0,
                                        const SolveConfig& cfg, double p_map) {
  validate_config(cfg);
  if (std::fabs(p0.left_tail) > kTailTol || std::fabs(p0.right_tail - p_map) > kTailTol)
    throw TailMismatch("continuum_de_solve: start must declare tails 0 / p_map");
  const Grid grid = p0.grid;
  const double h = grid.h();
  const int K = static_cast<int>(std::lround(1.0 / h));
  if (K < 1 || std::fabs(static_cast<double>(K) * h - 1.0) > 1e-9)
    throw std::invalid_argument("continuum_de_solve: grid spacing must divide 1");
  const int n = grid.n;
  const int l = ens.l, r = ens.r;
  const double eps = ens.epsilon;

  ContinuumSolveResult res;
  res.profile = p0;
  res.profile.left_tail = 0.0;
  res.profile.right_tail = p_map;
  for (double& v : res.profile.values) v = std::clamp(v, 0.0, p_map);

  // Work arrays: values extended by K on both sides (constant tails), unit
  // window averages A on [-K, n-1], then B and the explicit update
  // p = 1 - (1 - eps B)^{r-1}. Prefix sums keep each sweep O(n).
  const int next_size = n + 2 * K;
  std::vector<double> ext(static_cast<std::size_t>(next_size));
  std::vector<double> s1(static_cast<std::size_t>(next_size) + 1);
  std::vector<double> a(static_cast<std::size_t>(n + K));   // A_j at j in [-K, n-1]
  std::vector<double> pl(static_cast<std::size_t>(n + K));  // A_j^{l-1}
  std::vector<double> s2(static_cast<std::size_t>(n + K) + 1);
  std::vector<double> updated(static_cast<std::size_t>(n));

  auto w_single_of = [&](const std::vector<double>& v) {
    double acc = 0.5 * (single_potential(ens, v.front()) + single_potential(ens, v.back()));
    for (int i = 1; i + 1 < n; ++i) acc += single_potential(ens, v[static_cast<std::size_t>(i)]);
    return acc * h;
  };

  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    const std::vector<double>& v = res.profile.values;
    for (int t = 0; t < next_size; ++t) {
      int i = t - K;
      ext[static_cast<std::size_t>(t)] =
          i < 0 ? 0.0 : (i >= n ? p_map : v[static_cast<std::size_t>(i)]);
    }
    s1[0] = 0.0;
    for (int t = 0; t < next_size; ++t)
      s1[static_cast<std::size_t>(t) + 1] = s1[static_cast<std::size_t>(t)] + ext[static_cast<std::size_t>(t)];
    for (int j = -K; j < n; ++j) {
      int t0 = j + K;  // ext index of grid index j
      double total = s1[static_cast<std::size_t>(t0 + K) + 1] - s1[static_cast<std::size_t>(t0)];
      double aj = h * (total - 0.5 * ext[static_cast<std::size_t>(t0)] -
                       0.5 * ext[static_cast<std::size_t>(t0 + K)]);
      a[static_cast<std::size_t>(j + K)] = aj;
      pl[static_cast<std::size_t>(j + K)] = pow_int(aj, l - 1);
    }
    s2[0] = 0.0;
    for (int t = 0; t < n + K; ++t)
      s2[static_cast<std::size_t>(t) + 1] = s2[static_cast<std::size_t>(t)] + pl[static_cast<std::size_t>(t)];

    if (cfg.record_trace) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) {
        double gi = pow_int(v[static_cast<std::size_t>(i)], l) -
                    pow_int(a[static_cast<std::size_t>(i + K)], l);
        acc += (i == 0 || i == n - 1) ? 0.5 * gi : gi;
      }
      res.potential_trace.push_back(w_single_of(v) + (eps / static_cast<double>(l)) * acc * h);
    }

    for (int i = 0; i < n; ++i) {
      double total = s2[static_cast<std::size_t>(i + K) + 1] - s2[static_cast<std::size_t>(i)];
      double b = h * (total - 0.5 * pl[static_cast<std::size_t>(i)] -
                      0.5 * pl[static_cast<std::size_t>(i + K)]);
      double gmap = 1.0 - pow_int(1.0 - eps * b, r - 1);
      double u = (1.0 - cfg.damping) * v[static_cast<std::size_t>(i)] + cfg.damping * gmap;
      updated[static_cast<std::size_t>(i)] = std::clamp(u, 0.0, p_map);
    }

    Profile candidate = res.profile;
    candidate.values = updated;
    candidate.monotone_flag = detect_monotone(candidate.values);
    if (cfg.pin_each_iter) candidate = pin(candidate, p_map);

    double change = 0.0;
    for (int i = 0; i < n; ++i)
      change = std::max(change, std::fabs(candidate.values[static_cast<std::size_t>(i)] -
                                          res.profile.values[static_cast<std::size_t>(i)]));
    res.profile = std::move(candidate);
    res.iterations = iter;
    res.final_residual = change;
    if (change <= cfg.tol) {
      res.converged = true;
      break;
    }
  }
  res.profile.monotone_flag = detect_monotone(res.profile.values);
  return res;
}

std::vector<std::pair<double, double>> flat_spot_check(const Profile& pr, double tol) {
  const double p_map = pr.right_tail;
  const double h = pr.grid.h();
  std::vector<std::pair<double, double>> out;
  int run_start = -1;
  auto close_run = [&](int run_end) {
    if (run_start < 0) return;
    // steps run_start..run_end-1 flat; interval [z(run_start), z(run_end)]
    double len = h * static_cast<double>(run_end - run_start);
    if (len > 2.0 * h) {
      double vmin = pr.values[static_cast<std::size_t>(run_start)];
      double vmax = pr.values[static_cast<std::size_t>(run_end)];
      if (vmin > tol && vmax < p_map - tol)
        out.emplace_back(pr.grid.z(run_start), pr.grid.z(run_end));
    }
    run_start = -1;
  };
  for (int i = 0; i + 1 < pr.n(); ++i) {
    bool flat = std::fabs(pr.values[static_cast<std::size_t>(i + 1)] -
                          pr.values[static_cast<std::size_t>(i)]) < tol;
    if (flat && run_start < 0) run_start = i;
    if (!flat) close_run(i);
  }
  close_run(pr.n() - 1);
  return out;
}

double tightness_bound(const Ensemble& ens, double p_map, double delta) {
  if (!(delta > 0.0) || !(delta < 1.0))
    throw std::invalid_argument("tightness_bound: delta must lie in (0,1)");
  const double lo = 0.5 * delta * p_map;
  const double hi = p_map - 0.5 * delta * p_map;
  const int samples = 20001;
  double min_ws = single_potential(ens, lo);
  for (int i = 1; i < samples; ++i) {
    double p = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(samples - 1);
    min_ws = std::min(min_ws, single_potential(ens, p));
  }
  if (!(min_ws > 0.0))
    throw std::domain_error("tightness_bound: W_s must be positive on the interior band "
                            "(evaluate at eps = eps_map)");
  double c = min_ws / (p_map * p_map * delta * delta / 4.0);
  double l = static_cast<double>(ens.l);
  return 2.0 * ens.epsilon * (l - 1.0) / (l * (l + 1.0)) *
         std::pow(p_map, static_cast<double>(ens.l - 2)) / (c * delta * delta);
}

}  // namespace scdc
