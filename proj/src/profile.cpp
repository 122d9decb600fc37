#include "scdc/profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "scdc/errors.hpp"

namespace scdc {

double Profile::interp(double z) const {
  if (z <= grid.z_min) return z < grid.z_min ? left_tail : values.front();
  if (z >= grid.z_max) return z > grid.z_max ? right_tail : values.back();
  double h = grid.h();
  double t = (z - grid.z_min) / h;
  int i = static_cast<int>(t);
  if (i >= n() - 1) i = n() - 2;
  double frac = t - static_cast<double>(i);
  return values[static_cast<std::size_t>(i)] * (1.0 - frac) +
         values[static_cast<std::size_t>(i) + 1] * frac;
}

Monotone detect_monotone(const std::vector<double>& values, double tie_tol) {
  bool increasing = true;
  bool strict = true;
  for (std::size_t i = 1; i < values.size(); ++i) {
    double diff = values[i] - values[i - 1];
    if (diff < 0.0) {
      increasing = false;
      break;
    }
    if (diff < tie_tol) strict = false;
  }
  if (!increasing) return Monotone::general;
  return strict ? Monotone::strictly_increasing : Monotone::increasing;
}

ProfileClass classify(const Profile& pr, double p_map, double tol) {
  if (pr.values.empty()) return ProfileClass::invalid;
  for (double v : pr.values)
    if (!std::isfinite(v) || v < 0.0) return ProfileClass::invalid;
  // S-membership: declared tails 0 / p_map and boundary values next to them.
  if (std::fabs(pr.left_tail) > kTailTol) return ProfileClass::invalid;
  if (std::fabs(pr.right_tail - p_map) > kTailTol) return ProfileClass::invalid;
  if (std::fabs(pr.values.front() - pr.left_tail) > kTailTol) return ProfileClass::invalid;
  if (std::fabs(pr.values.back() - pr.right_tail) > kTailTol) return ProfileClass::invalid;

  Monotone m = detect_monotone(pr.values);
  if (m == Monotone::general) return ProfileClass::S;
  if (m == Monotone::increasing) return ProfileClass::S_prime;
  if (std::fabs(pr.interp(0.0) - 0.5 * p_map) <= tol) return ProfileClass::S_dprime_0;
  return ProfileClass::S_dprime;
}

Profile truncate(const Profile& pr, double p_map) {
  Profile out = pr;
  for (double& v : out.values) v = std::min(v, p_map);
  out.left_tail = std::min(out.left_tail, p_map);
  out.right_tail = std::min(out.right_tail, p_map);
  out.monotone_flag = detect_monotone(out.values);
  return out;
}

Profile increasing_rearrangement(const Profile& pr) {
  double p_map = pr.right_tail;
  if (std::fabs(pr.left_tail) > kTailTol)
    throw std::domain_error("increasing_rearrangement: left tail must be 0");
  for (double v : pr.values)
    if (v < -kStrictTieTol || v > p_map + kStrictTieTol)
      throw std::domain_error("increasing_rearrangement: values must lie in [0, p_map]");
  Profile out = pr;
  std::sort(out.values.begin(), out.values.end());
  out.monotone_flag = detect_monotone(out.values);
  return out;
}

namespace {

// First interpolated crossing of `level` from below; the crossing of a grid
// jump lands mid-jump by linearity.
double crossing_point(const Profile& pr, double level) {
  const auto& v = pr.values;
  if (v.front() >= level)
    throw NoCrossing("pin: level already exceeded at the left window edge");
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] >= level) {
      double frac = (level - v[i - 1]) / (v[i] - v[i - 1]);
      return pr.grid.z(static_cast<int>(i - 1)) + pr.grid.h() * frac;
    }
  }
  throw NoCrossing("pin: profile never reaches p_map/2 inside the window");
}

}  // namespace

Profile translate(const Profile& pr, double tau) {
  Profile out = pr;
  for (int i = 0; i < pr.n(); ++i)
    out.values[static_cast<std::size_t>(i)] = pr.interp(pr.grid.z(i) - tau);
  out.monotone_flag = detect_monotone(out.values);
  return out;
}

Profile pin(const Profile& pr, double p_map) {
  if (detect_monotone(pr.values) == Monotone::general)
    throw NotMonotone("pin: profile must be increasing");
  double z_cross = crossing_point(pr, 0.5 * p_map);
  if (z_cross == 0.0) return pr;
  return translate(pr, -z_cross);
}

QuantileView quantile_view(const Profile& pr, int m) {
  if (m < 1) throw std::invalid_argument("quantile_view: m must be >= 1");
  if (pr.monotone_flag == Monotone::general || detect_monotone(pr.values) == Monotone::general)
    throw NotMonotone("quantile_view: profile must be increasing");
  double p_map = pr.right_tail;
  QuantileView qv;
  qv.p_levels.resize(static_cast<std::size_t>(m));
  qv.z_of_p.resize(static_cast<std::size_t>(m));
  const auto& v = pr.values;
  int i = 0;  // first index with v[i] > level; levels ascend, so i only moves right
  for (int k = 0; k < m; ++k) {
    double level = (static_cast<double>(k) + 0.5) * p_map / static_cast<double>(m);
    while (i < pr.n() && v[static_cast<std::size_t>(i)] <= level) ++i;
    double z;
    if (i == 0) {
      z = pr.grid.z_min;
    } else if (i == pr.n()) {
      z = pr.grid.z_max;
    } else {
      double lo = v[static_cast<std::size_t>(i - 1)];
      double hi = v[static_cast<std::size_t>(i)];
      z = pr.grid.z(i - 1) + pr.grid.h() * ((level - lo) / (hi - lo));
    }
    qv.p_levels[static_cast<std::size_t>(k)] = level;
    qv.z_of_p[static_cast<std::size_t>(k)] = z;
  }
  return qv;
}

Profile profile_from_quantiles(const QuantileView& qv, const Grid& grid, double p_map) {
  std::size_t m = qv.z_of_p.size();
  if (m == 0 || qv.p_levels.size() != m)
    throw std::invalid_argument("profile_from_quantiles: empty or inconsistent view");
  for (std::size_t k = 1; k < m; ++k)
    if (qv.z_of_p[k] < qv.z_of_p[k - 1])
      throw std::invalid_argument("profile_from_quantiles: z_of_p must be non-decreasing");

  Profile out;
  out.grid = grid;
  out.values.resize(static_cast<std::size_t>(grid.n));
  out.left_tail = 0.0;
  out.right_tail = p_map;

  // inf{p : z(p) > z_j}: below the first sample the profile is 0, at or past
  // the last it is p_map; in between, interpolate from the largest sample with
  // z_k <= z_j (which skips to the top of any jump in p, i.e. flat z run).
  std::size_t k = 0;
  for (int j = 0; j < grid.n; ++j) {
    double zj = grid.z(j);
    double p;
    if (zj < qv.z_of_p.front()) {
      p = 0.0;
    } else if (zj >= qv.z_of_p.back()) {
      p = p_map;
    } else {
      while (k + 1 < m && qv.z_of_p[k + 1] <= zj) ++k;
      double z0 = qv.z_of_p[k], z1 = qv.z_of_p[k + 1];
      double p0 = qv.p_levels[k], p1 = qv.p_levels[k + 1];
      p = p0 + (p1 - p0) * ((zj - z0) / (z1 - z0));
    }
    out.values[static_cast<std::size_t>(j)] = std::clamp(p, 0.0, p_map);
  }
  out.monotone_flag = detect_monotone(out.values);
  return out;
}

Profile make_step(const Grid& grid, double z0, double p_map) {
  Profile out;
  out.grid = grid;
  out.values.resize(static_cast<std::size_t>(grid.n));
  for (int i = 0; i < grid.n; ++i)
    out.values[static_cast<std::size_t>(i)] = grid.z(i) <= z0 ? 0.0 : p_map;
  out.left_tail = 0.0;
  out.right_tail = p_map;
  out.monotone_flag = Monotone::increasing;
  return out;
}

Profile make_logistic(const Grid& grid, double center, double scale, double p_map) {
  Profile out;
  out.grid = grid;
  out.values.resize(static_cast<std::size_t>(grid.n));
  for (int i = 0; i < grid.n; ++i) {
    double t = (grid.z(i) - center) / scale;
    out.values[static_cast<std::size_t>(i)] = p_map / (1.0 + std::exp(-t));
  }
  out.left_tail = 0.0;
  out.right_tail = p_map;
  out.monotone_flag = detect_monotone(out.values);
  return out;
}

Profile make_tanh_front(const Grid& grid, double center, double width, double p_map) {
  Profile out;
  out.grid = grid;
  out.values.resize(static_cast<std::size_t>(grid.n));
  for (int i = 0; i < grid.n; ++i) {
    double t = (grid.z(i) - center) / width;
    out.values[static_cast<std::size_t>(i)] = 0.5 * p_map * (1.0 + std::tanh(t));
  }
  out.left_tail = 0.0;
  out.right_tail = p_map;
  out.monotone_flag = detect_monotone(out.values);
  return out;
}

}  // namespace scdc
