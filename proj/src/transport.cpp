#include "scdc/transport.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "scdc/errors.hpp"
#include "scdc/potential.hpp"

namespace scdc {

namespace {

void require_increasing(const Profile& pr, const char* who) {
  if (pr.monotone_flag == Monotone::general || detect_monotone(pr.values) == Monotone::general)
    throw NotMonotone(std::string(who) + ": endpoints must be increasing");
}

bool pinned_and_strict(const Profile& pr, double p_map) {
  return detect_monotone(pr.values) == Monotone::strictly_increasing &&
         std::fabs(pr.interp(0.0) - 0.5 * p_map) <= kTailTol;
}

Profile interpolate_views(const QuantileView& qv0, const QuantileView& qv1, double lambda,
                          const Grid& grid, double p_map, bool pin_result) {
  QuantileView mix;
  mix.p_levels = qv0.p_levels;
  mix.z_of_p.resize(qv0.z_of_p.size());
  for (std::size_t k = 0; k < mix.z_of_p.size(); ++k)
    mix.z_of_p[k] = (1.0 - lambda) * qv0.z_of_p[k] + lambda * qv1.z_of_p[k];
  Profile out = profile_from_quantiles(mix, grid, p_map);
  if (pin_result) out = pin(out, p_map);
  return out;
}

}  // namespace

std::vector<double> InterpolationPath::uniform_lambdas(int count) {
  if (count < 2) throw std::invalid_argument("uniform_lambdas: need at least 2 samples");
  std::vector<double> ls(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    ls[static_cast<std::size_t>(i)] = static_cast<double>(i) / static_cast<double>(count - 1);
  return ls;
}

Profile displacement_interpolate(const InterpolationPath& path, double lambda) {
  if (!(lambda >= 0.0) || !(lambda <= 1.0))
    throw std::invalid_argument("displacement_interpolate: lambda must lie in [0,1]");
  require_increasing(path.p0, "displacement_interpolate");
  require_increasing(path.p1, "displacement_interpolate");
  double p_map = path.p0.right_tail;
  if (std::fabs(path.p1.right_tail - p_map) > 1e-12)
    throw std::invalid_argument("displacement_interpolate: endpoints must share p_map");

  QuantileView qv0 = quantile_view(path.p0, path.m);
  QuantileView qv1 = quantile_view(path.p1, path.m);
  bool keep_pinned = pinned_and_strict(path.p0, p_map) && pinned_and_strict(path.p1, p_map);
  return interpolate_views(qv0, qv1, lambda, path.p0.grid, p_map, keep_pinned);
}

ConvexityReport convexity_probe(const Ensemble& ens, const InterpolationPath& path, double p_map) {
  require_increasing(path.p0, "convexity_probe");
  require_increasing(path.p1, "convexity_probe");
  std::vector<double> lambdas =
      path.lambdas.empty() ? InterpolationPath::uniform_lambdas() : path.lambdas;

  QuantileView qv0 = quantile_view(path.p0, path.m);
  QuantileView qv1 = quantile_view(path.p1, path.m);
  bool keep_pinned = pinned_and_strict(path.p0, p_map) && pinned_and_strict(path.p1, p_map);

  ConvexityReport rep;
  rep.lambdas = lambdas;
  rep.values.reserve(lambdas.size());
  // lambda = 0 and 1 are the input profiles themselves; interior lambdas go
  // through the quantile reconstruction.
  for (double lam : lambdas) {
    if (lam == 0.0) {
      rep.values.push_back(continuum_potential(ens, path.p0, p_map));
    } else if (lam == 1.0) {
      rep.values.push_back(continuum_potential(ens, path.p1, p_map));
    } else {
      Profile pl = interpolate_views(qv0, qv1, lam, path.p0.grid, p_map, keep_pinned);
      rep.values.push_back(continuum_potential(ens, pl, p_map));
    }
  }

  std::size_t nl = lambdas.size();
  if (nl >= 3) {
    rep.second_differences.resize(nl - 2);
    for (std::size_t i = 1; i + 1 < nl; ++i)
      rep.second_differences[i - 1] =
          rep.values[i + 1].w_total - 2.0 * rep.values[i].w_total + rep.values[i - 1].w_total;
    rep.min_second_difference =
        *std::min_element(rep.second_differences.begin(), rep.second_differences.end());
  }

  double ws0 = rep.values.front().w_single;
  double ws1 = rep.values.back().w_single;
  rep.single_linearity_defect = 0.0;
  for (std::size_t i = 0; i < nl; ++i) {
    double chord = (1.0 - lambdas[i]) * ws0 + lambdas[i] * ws1;
    rep.single_linearity_defect =
        std::max(rep.single_linearity_defect, std::fabs(rep.values[i].w_single - chord));
  }
  return rep;
}

double convexity_noise_floor(const Ensemble& ens, const Profile& p, int m, int n_lambdas,
                             double p_map) {
  InterpolationPath path;
  path.p0 = p;
  path.p1 = p;
  path.m = m;
  path.lambdas = InterpolationPath::uniform_lambdas(n_lambdas);
  ConvexityReport rep = convexity_probe(ens, path, p_map);
  double floor = 0.0;
  for (double sd : rep.second_differences) floor = std::max(floor, std::fabs(sd));
  return floor;
}

std::pair<Profile, PotentialBreakdown> displacement_descent(const Ensemble& ens,
                                                            const Profile& start, int steps,
                                                            double step_size) {
  if (steps < 0) throw std::invalid_argument("displacement_descent: steps must be >= 0");
  if (!(step_size > 0.0)) throw std::invalid_argument("displacement_descent: step_size must be > 0");
  require_increasing(start, "displacement_descent");
  double p_map = start.right_tail;
  if (std::fabs(start.interp(0.0) - 0.5 * p_map) > kTailTol)
    throw std::invalid_argument("displacement_descent: start must be pinned at p_map/2");

  Profile p = start;
  PotentialBreakdown w = continuum_potential(ens, p, p_map);
  int increase_streak = 0;
  for (int it = 0; it < steps; ++it) {
    Residual res = de_residual(ens, p);
    if (res.sup_norm * step_size < 1e-15) break;  // fixed point
    for (int i = 0; i < p.n(); ++i) {
      double v = p.values[static_cast<std::size_t>(i)] -
                 step_size * res.values[static_cast<std::size_t>(i)];
      p.values[static_cast<std::size_t>(i)] = std::clamp(v, 0.0, p_map);
    }
    if (detect_monotone(p.values) == Monotone::general) p = increasing_rearrangement(p);
    p.monotone_flag = detect_monotone(p.values);
    p = pin(p, p_map);
    PotentialBreakdown w_new = continuum_potential(ens, p, p_map);
    if (w_new.w_total > w.w_total + 1e-6) {
      if (++increase_streak >= 2)
        throw SolverDivergence("displacement_descent: potential increased on consecutive steps");
    } else {
      increase_streak = 0;
    }
    w = w_new;
  }
  return {p, w};
}

}  // namespace scdc
