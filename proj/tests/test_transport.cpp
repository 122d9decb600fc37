#include <doctest.h>

#include <cmath>

#include "scdc/desolve.hpp"
#include "scdc/ensemble.hpp"
#include "scdc/errors.hpp"
#include "scdc/rng.hpp"
#include "scdc/transport.hpp"
#include "scdc/verify.hpp"

using namespace scdc;

namespace {

const ThresholdResult kTh = map_threshold(3, 6);
const double kPmap = kTh.p_map;
const Ensemble kEns(3, 6, kTh.epsilon_map);

double sup_diff(const Profile& a, const Profile& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    s = std::max(s, std::fabs(a.values[i] - b.values[i]));
  return s;
}

}  // namespace

TEST_CASE("displacement interpolation endpoints and translates") {
  Grid grid = Grid::standard();
  InterpolationPath path;
  path.p0 = make_logistic(grid, -0.5, 0.8, kPmap);
  path.p1 = make_logistic(grid, 0.7, 1.2, kPmap);

  SUBCASE("endpoint identity within O(h + p_map/m)") {
    double tol = grid.h() + kPmap / path.m;
    CHECK(sup_diff(displacement_interpolate(path, 0.0), path.p0) < tol);
    CHECK(sup_diff(displacement_interpolate(path, 1.0), path.p1) < tol);
  }

  SUBCASE("translated endpoint moves linearly in lambda") {
    double tau = 1.5;
    InterpolationPath tp;
    tp.p0 = make_tanh_front(grid, 0.0, 0.9, kPmap);
    tp.p1 = translate(tp.p0, tau);
    for (double lam : {0.25, 0.5, 0.75}) {
      Profile pl = displacement_interpolate(tp, lam);
      Profile expect = translate(tp.p0, lam * tau);
      CHECK(sup_diff(pl, expect) < grid.h() + kPmap / tp.m);
    }
  }

  SUBCASE("midpoint quantiles are the arithmetic mean of the endpoint quantiles") {
    QuantileView q0 = quantile_view(path.p0, 200);
    QuantileView q1 = quantile_view(path.p1, 200);
    InterpolationPath p2 = path;
    p2.m = 200;
    Profile mid = displacement_interpolate(p2, 0.5);
    QuantileView qm = quantile_view(mid, 200);
    // reconstruction + re-inversion stays within the sampling resolution
    for (std::size_t k = 20; k + 20 < qm.z_of_p.size(); ++k) {
      double expect = 0.5 * (q0.z_of_p[k] + q1.z_of_p[k]);
      CHECK(std::fabs(qm.z_of_p[k] - expect) < 0.02);
    }
  }

  SUBCASE("lambda out of range / class-general endpoints are rejected") {
    CHECK_THROWS_AS(displacement_interpolate(path, 1.5), std::invalid_argument);
    Rng rng(3);
    InterpolationPath bad;
    bad.p0 = random_nonmonotone_profile(rng, grid, kPmap);
    bad.p1 = path.p1;
    CHECK_THROWS_AS(displacement_interpolate(bad, 0.5), NotMonotone);
  }
}

TEST_CASE("class closure along the path") {
  Grid grid = Grid::standard();

  SUBCASE("pinned strict endpoints give pinned strict interpolants") {
    InterpolationPath path;
    path.p0 = make_logistic(grid, 0.0, 1.0, kPmap);
    path.p1 = make_logistic(grid, 0.0, 1.6, kPmap);
    for (double lam : {0.2, 0.5, 0.8}) {
      Profile pl = displacement_interpolate(path, lam);
      CHECK(classify(pl, kPmap, 1e-6) == ProfileClass::S_dprime_0);
    }
  }

  SUBCASE("increasing endpoints give at least increasing interpolants") {
    Rng rng(13);
    InterpolationPath path;
    path.p0 = random_increasing_profile(rng, grid, kPmap, true);
    path.p1 = random_increasing_profile(rng, grid, kPmap, true);
    for (double lam : {0.3, 0.6}) {
      Profile pl = displacement_interpolate(path, lam);
      auto cls = classify(pl, kPmap, 1e-6);
      CHECK(cls != ProfileClass::S);
      CHECK(cls != ProfileClass::invalid);
    }
  }
}

TEST_CASE("convexity probe") {
  Grid grid = Grid::standard();

  SUBCASE("endpoint consistency to 1e-8") {
    InterpolationPath path;
    path.p0 = make_logistic(grid, -0.4, 0.9, kPmap);
    path.p1 = make_tanh_front(grid, 0.5, 0.7, kPmap);
    ConvexityReport rep = convexity_probe(kEns, path, kPmap);
    double w0 = continuum_potential(kEns, path.p0, kPmap).w_total;
    double w1 = continuum_potential(kEns, path.p1, kPmap).w_total;
    CHECK(std::fabs(rep.values.front().w_total - w0) < 1e-8);
    CHECK(std::fabs(rep.values.back().w_total - w1) < 1e-8);
  }

  SUBCASE("single part is linear; chord inequality holds") {
    Rng rng(17);
    for (int k = 0; k < 5; ++k) {
      InterpolationPath path;
      path.p0 = random_increasing_profile(rng, grid, kPmap, true);
      path.p1 = random_increasing_profile(rng, grid, kPmap, true);
      ConvexityReport rep = convexity_probe(kEns, path, kPmap);
      CHECK(rep.single_linearity_defect < 1e-5);
      CHECK(rep.min_second_difference >= -1e-5);
      double w0 = rep.values.front().w_total, w1 = rep.values.back().w_total;
      for (std::size_t i = 0; i < rep.lambdas.size(); ++i) {
        double chord = (1.0 - rep.lambdas[i]) * w0 + rep.lambdas[i] * w1;
        CHECK(rep.values[i].w_total <= chord + 1e-5);
      }
    }
  }

  SUBCASE("translation path: W is constant in lambda") {
    InterpolationPath path;
    path.p0 = make_tanh_front(grid, -0.7, 0.8, kPmap);
    path.p1 = translate(path.p0, 1.4);
    ConvexityReport rep = convexity_probe(kEns, path, kPmap);
    double w0 = rep.values.front().w_total;
    for (const auto& v : rep.values) CHECK(std::fabs(v.w_total - w0) < 1e-5);
  }

  SUBCASE("strict convexity on distinct pinned pairs clears the noise floor") {
    Profile ref = make_logistic(grid, 0.0, 1.0, kPmap);
    double floor = convexity_noise_floor(kEns, ref, 2000, 21, kPmap);
    InterpolationPath path;
    path.p0 = make_logistic(grid, 0.0, 0.7, kPmap);
    path.p1 = make_logistic(grid, 0.0, 1.5, kPmap);
    ConvexityReport rep = convexity_probe(kEns, path, kPmap);
    CHECK(rep.min_second_difference > 3.0 * floor);
    CHECK(rep.min_second_difference > 0.0);
  }

  SUBCASE("identical endpoints: flat within the floor") {
    Profile p = make_logistic(grid, 0.0, 1.0, kPmap);
    InterpolationPath path;
    path.p0 = p;
    path.p1 = p;
    ConvexityReport rep = convexity_probe(kEns, path, kPmap);
    double w0 = rep.values.front().w_total;
    for (const auto& v : rep.values) CHECK(std::fabs(v.w_total - w0) < 1e-6);
  }
}

TEST_CASE("displacement descent") {
  Grid grid = Grid::standard();

  SUBCASE("fixed point stays put") {
    SolveConfig cfg;
    Profile start = pin(make_tanh_front(grid, 0.0, 1.0, kPmap), kPmap);
    ContinuumSolveResult sol = continuum_de_solve(kEns, start, cfg, kPmap);
    REQUIRE(sol.converged);
    auto [pd, wd] = displacement_descent(kEns, sol.profile, 50, 0.5);
    CHECK(sup_diff(pd, sol.profile) < 1e-6);
  }

  SUBCASE("smoothed step descends") {
    Profile start = pin(make_tanh_front(grid, 0.0, 0.5, kPmap), kPmap);
    double w0 = continuum_potential(kEns, start, kPmap).w_total;
    auto [pd, wd] = displacement_descent(kEns, start, 400, 0.5);
    CHECK(wd.w_total <= w0);
    CHECK(wd.w_total < w0 - 1e-6);  // strictly away from the fixed point initially
  }

  SUBCASE("two starts approach the same minimizer") {
    Profile s0 = pin(make_tanh_front(grid, 0.0, 0.6, kPmap), kPmap);
    Profile s1 = pin(make_logistic(grid, 0.0, 1.3, kPmap), kPmap);
    auto [p0, w0] = displacement_descent(kEns, s0, 3000, 0.8);
    auto [p1, w1] = displacement_descent(kEns, s1, 3000, 0.8);
    CHECK(sup_diff(pin(p0, kPmap), pin(p1, kPmap)) < 1e-3);
  }

  SUBCASE("unpinned start is rejected") {
    Profile off = make_logistic(grid, 2.0, 1.0, kPmap);
    CHECK_THROWS_AS(displacement_descent(kEns, off, 10, 0.5), std::invalid_argument);
  }
}
