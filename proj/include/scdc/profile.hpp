#pragma once

#include <cstddef>
#include <vector>

namespace scdc {

// Uniform grid on [z_min, z_max] with n points, spacing h = (z_max-z_min)/(n-1).
struct Grid {
  double z_min = -10.0;
  double z_max = 10.0;
  int n = 2001;

  double h() const { return (z_max - z_min) / static_cast<double>(n - 1); }
  double z(int i) const { return z_min + h() * static_cast<double>(i); }

  // Default window [-10, 10] at h = 0.01. Wide enough that every test profile
  // is at its tail values to double precision at the boundary.
  static Grid standard() { return Grid{-10.0, 10.0, 2001}; }
};

enum class Monotone { general, increasing, strictly_increasing };

enum class ProfileClass { invalid, S, S_prime, S_dprime, S_dprime_0 };

// Discretized profile p(z) with declared constant tails outside the window.
// Increasing profiles double as cdfs of measures with total mass right_tail.
struct Profile {
  Grid grid;
  std::vector<double> values;
  double left_tail = 0.0;
  double right_tail = 0.0;
  Monotone monotone_flag = Monotone::general;

  int n() const { return static_cast<int>(values.size()); }

  // Grid value with tail extension for out-of-range indices.
  double value_ext(int i) const {
    if (i < 0) return left_tail;
    if (i >= n()) return right_tail;
    return values[static_cast<std::size_t>(i)];
  }

  // Piecewise-linear interpolant with tail extension outside the window.
  double interp(double z) const;
};

// Generalized inverse z(p) of an increasing profile, sampled at midpoint
// levels p_k = (k + 1/2) p_map / m.
struct QuantileView {
  std::vector<double> p_levels;
  std::vector<double> z_of_p;
};

// Consecutive values differing by less than this are ties: floating-point
// flats must not pass as strict increase.
inline constexpr double kStrictTieTol = 1e-12;

// Boundary values must sit this close to the declared tails for a profile to
// be a member of the S spaces (the z p(z) -> 0 decay itself is not checkable
// on a finite window).
inline constexpr double kTailTol = 1e-6;

Monotone detect_monotone(const std::vector<double>& values, double tie_tol = kStrictTieTol);

// Finest matching class. S_dprime_0 additionally requires the interpolated
// value at z = 0 to equal p_map/2 within tol.
ProfileClass classify(const Profile& pr, double p_map, double tol);

// Pointwise min with p_map (range restriction the existence argument uses).
Profile truncate(const Profile& pr, double p_map);

// Increasing rearrangement: sorts the grid values ascending. On a uniform
// grid this is the layer-cake rearrangement (equimeasurable by construction).
// Requires values in [0, p_map] (p_map = right_tail) and tails 0 / p_map.
Profile increasing_rearrangement(const Profile& pr);

// Translate so the interpolated crossing of p_map/2 sits at z = 0. Resamples
// onto the same grid window. Throws NoCrossing if the level is not crossed
// strictly inside the window.
Profile pin(const Profile& pr, double p_map);

// p_new(z) = p_old(z - tau): shifts the profile right by tau, resampling onto
// the same window (grid-aligned tau copies values exactly).
Profile translate(const Profile& pr, double tau);

// Sample the inverse z(p) = inf{z : p(z) > p} at m midpoint levels. Flat
// stretches at exactly a sampled level resolve to the right end of the flat,
// which is the inf rule for the piecewise-linear interpolant. Throws
// NotMonotone if the profile is class-general.
QuantileView quantile_view(const Profile& pr, int m);

// Invert a quantile view by p(z) = inf{p : z(p) > z} with linear interpolation
// between sampled levels; below the first sample the profile is 0, at or above
// the last it is p_map. Output is increasing with tails 0 / p_map.
Profile profile_from_quantiles(const QuantileView& qv, const Grid& grid, double p_map);

// Reference shapes.
Profile make_step(const Grid& grid, double z0, double p_map);                       // 0 for z <= z0, p_map after
Profile make_logistic(const Grid& grid, double center, double scale, double p_map); // p_map * sigma((z-c)/s)
Profile make_tanh_front(const Grid& grid, double center, double width, double p_map);

}  // namespace scdc
