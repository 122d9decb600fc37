#include <doctest.h>

#include <cmath>

#include "scdc/ensemble.hpp"
#include "scdc/errors.hpp"
#include "scdc/profile.hpp"
#include "scdc/rng.hpp"
#include "scdc/verify.hpp"

using namespace scdc;

namespace {
const ThresholdResult kTh = map_threshold(3, 6);
const double kPmap = kTh.p_map;
}  // namespace

TEST_CASE("classification of the reference shapes") {
  Grid grid = Grid::standard();

  SUBCASE("step is increasing but not strict") {
    Profile step = make_step(grid, 0.0, kPmap);
    CHECK(classify(step, kPmap, 1e-9) == ProfileClass::S_prime);
  }

  SUBCASE("centered logistic is pinned and strict") {
    Profile lg = make_logistic(grid, 0.0, 1.0, kPmap);
    CHECK(classify(lg, kPmap, 1e-9) == ProfileClass::S_dprime_0);
  }

  SUBCASE("off-center logistic is strict but not pinned") {
    Profile lg = make_logistic(grid, 1.0, 1.0, kPmap);
    CHECK(classify(lg, kPmap, 1e-9) == ProfileClass::S_dprime);
  }

  SUBCASE("interior dip lands in S") {
    Profile lg = make_logistic(grid, 0.0, 1.0, kPmap);
    for (int i = 0; i < grid.n; ++i) {
      double z = grid.z(i);
      lg.values[static_cast<std::size_t>(i)] =
          std::max(0.0, lg.values[static_cast<std::size_t>(i)] - 0.1 * kPmap * std::exp(-z * z));
    }
    lg.monotone_flag = detect_monotone(lg.values);
    CHECK(classify(lg, kPmap, 1e-9) == ProfileClass::S);
  }

  SUBCASE("negative values or tail inconsistency are invalid") {
    Profile lg = make_logistic(grid, 0.0, 1.0, kPmap);
    lg.values[1000] = -0.1;
    CHECK(classify(lg, kPmap, 1e-9) == ProfileClass::invalid);

    Profile bad_tail = make_logistic(grid, 0.0, 1.0, kPmap);
    bad_tail.right_tail = kPmap * 0.9;
    CHECK(classify(bad_tail, kPmap, 1e-9) == ProfileClass::invalid);
  }
}

TEST_CASE("truncation") {
  Grid grid = Grid::standard();
  Profile lg = make_logistic(grid, 0.0, 1.0, kPmap);

  SUBCASE("identity below p_map") {
    Profile tr = truncate(lg, kPmap);
    CHECK(tr.values == lg.values);
  }

  SUBCASE("constant above p_map becomes constant p_map") {
    Profile c = lg;
    for (double& v : c.values) v = 1.2 * kPmap;
    Profile tr = truncate(c, kPmap);
    for (double v : tr.values) CHECK(v == kPmap);
  }

  SUBCASE("idempotent") {
    Rng rng(3);
    Profile pr = random_exceeding_profile(rng, grid, kPmap);
    Profile once = truncate(pr, kPmap);
    Profile twice = truncate(once, kPmap);
    CHECK(once.values == twice.values);
  }
}

TEST_CASE("increasing rearrangement") {
  Grid grid = Grid::standard();

  SUBCASE("monotone input is untouched") {
    Profile lg = make_logistic(grid, 0.0, 1.0, kPmap);
    Profile re = increasing_rearrangement(lg);
    CHECK(re.values == lg.values);
  }

  SUBCASE("sorting preserves the multiset of values") {
    Rng rng(11);
    Profile pr = random_nonmonotone_profile(rng, grid, kPmap);
    Profile re = increasing_rearrangement(pr);
    auto sorted = pr.values;
    std::sort(sorted.begin(), sorted.end());
    CHECK(re.values == sorted);
    CHECK(re.monotone_flag != Monotone::general);
  }

  SUBCASE("range violation is rejected") {
    Profile pr = make_logistic(grid, 0.0, 1.0, kPmap);
    pr.values[1500] = 1.5 * kPmap;
    CHECK_THROWS_AS(increasing_rearrangement(pr), std::domain_error);
  }
}

TEST_CASE("pin") {
  Grid grid = Grid::standard();

  SUBCASE("already pinned: no change") {
    Profile lg = make_logistic(grid, 0.0, 1.0, kPmap);
    Profile pd = pin(lg, kPmap);
    double sup = 0.0;
    for (int i = 0; i < grid.n; ++i)
      sup = std::max(sup, std::fabs(pd.values[static_cast<std::size_t>(i)] -
                                    lg.values[static_cast<std::size_t>(i)]));
    CHECK(sup < 1e-12);
  }

  SUBCASE("translate then pin recovers the original within h") {
    Profile lg = make_logistic(grid, 0.0, 0.8, kPmap);
    Profile moved = translate(lg, 3.7);
    Profile back = pin(moved, kPmap);
    double sup = 0.0;
    for (int i = 0; i < grid.n; ++i)
      sup = std::max(sup, std::fabs(back.values[static_cast<std::size_t>(i)] -
                                    lg.values[static_cast<std::size_t>(i)]));
    CHECK(sup < grid.h());
    CHECK(std::fabs(back.interp(0.0) - 0.5 * kPmap) < 1e-12);
  }

  SUBCASE("grid step pins at the midpoint of the jump") {
    Profile step = make_step(grid, 1.0, kPmap);
    Profile pd = pin(step, kPmap);
    // The linear crossing of the jump between z=1 and z=1+h sits at 1+h/2, so
    // the pinned step has its jump centered on the origin.
    CHECK(std::fabs(pd.interp(0.0) - 0.5 * kPmap) < 1e-12);
    CHECK(pd.interp(-2.0 * grid.h()) < 0.05 * kPmap);
    CHECK(pd.interp(2.0 * grid.h()) > 0.95 * kPmap);
  }

  SUBCASE("never crossing: error") {
    Profile low = make_logistic(grid, 0.0, 1.0, 0.4 * kPmap);
    low.right_tail = 0.4 * kPmap;
    CHECK_THROWS_AS(pin(low, kPmap), NoCrossing);
  }

  SUBCASE("non-monotone input: error") {
    Rng rng(5);
    Profile pr = random_nonmonotone_profile(rng, grid, kPmap);
    CHECK_THROWS_AS(pin(pr, kPmap), NotMonotone);
  }
}

TEST_CASE("quantile view") {
  Grid grid = Grid::standard();

  SUBCASE("logistic: z(p_map/2) is the pin point") {
    Profile lg = make_logistic(grid, 0.0, 1.0, kPmap);
    QuantileView qv = quantile_view(lg, 2000);
    // level nearest p_map/2
    std::size_t k = 1000;
    CHECK(std::fabs(qv.z_of_p[k - 1]) < 2e-3);
    // strictly increasing inverse of a strict profile
    for (std::size_t i = 1; i < qv.z_of_p.size(); ++i) CHECK(qv.z_of_p[i] >= qv.z_of_p[i - 1]);
  }

  SUBCASE("grid step maps every level into the jump cell") {
    Profile step = make_step(grid, 0.0, kPmap);
    QuantileView qv = quantile_view(step, 100);
    for (double z : qv.z_of_p) {
      CHECK(z >= 0.0);
      CHECK(z <= grid.h());
    }
  }

  SUBCASE("round trip on an analytic strictly increasing profile") {
    Profile lg = make_logistic(grid, 0.3, 1.2, kPmap);
    int m = 2000;
    QuantileView qv = quantile_view(lg, m);
    Profile back = profile_from_quantiles(qv, grid, kPmap);
    double tol = grid.h() + kPmap / m;
    double sup = 0.0;
    for (int i = 0; i < grid.n; ++i)
      sup = std::max(sup, std::fabs(back.values[static_cast<std::size_t>(i)] -
                                    lg.values[static_cast<std::size_t>(i)]));
    CHECK(sup < tol);
  }

  SUBCASE("general profile is rejected") {
    Rng rng(9);
    Profile pr = random_nonmonotone_profile(rng, grid, kPmap);
    CHECK_THROWS_AS(quantile_view(pr, 100), NotMonotone);
  }
}

TEST_CASE("profile from quantiles: degenerate and flat cases") {
  Grid grid = Grid::standard();

  SUBCASE("constant z reconstructs a step") {
    QuantileView qv;
    int m = 50;
    for (int k = 0; k < m; ++k) {
      qv.p_levels.push_back((k + 0.5) * kPmap / m);
      qv.z_of_p.push_back(1.5);
    }
    Profile pr = profile_from_quantiles(qv, grid, kPmap);
    CHECK(pr.interp(1.4) == 0.0);
    CHECK(pr.interp(1.6) == kPmap);
  }

  SUBCASE("step quantiles reconstruct the step") {
    Profile step = make_step(grid, 0.0, kPmap);
    Profile back = profile_from_quantiles(quantile_view(step, 500), grid, kPmap);
    double sup = 0.0;
    for (int i = 0; i < grid.n; ++i)
      sup = std::max(sup, std::fabs(back.values[static_cast<std::size_t>(i)] -
                                    step.values[static_cast<std::size_t>(i)]));
    CHECK(sup <= kPmap / 500.0 + 1e-12);
  }

  SUBCASE("a jump in z produces an exact flat") {
    Profile lg = make_logistic(grid, 0.0, 0.8, kPmap);
    QuantileView qv = quantile_view(lg, 2000);
    for (std::size_t k = 0; k < qv.p_levels.size(); ++k)
      if (qv.p_levels[k] > 0.5 * kPmap) qv.z_of_p[k] += 1.0;
    Profile flat = profile_from_quantiles(qv, grid, kPmap);
    CHECK(detect_monotone(flat.values) == Monotone::increasing);
    CHECK(classify(flat, kPmap, 1e-9) == ProfileClass::S_prime);
  }
}

TEST_CASE("pin/translate quotient: pin(translate(pin(p))) = pin(p)") {
  Grid grid = Grid::standard();
  Rng rng(21);
  for (int k = 0; k < 5; ++k) {
    Profile pr = random_pinned_profile(rng, grid, kPmap);
    double tau = rng.uniform(-2.0, 2.0);
    Profile again = pin(translate(pr, tau), kPmap);
    double sup = 0.0;
    for (int i = 0; i < grid.n; ++i)
      sup = std::max(sup, std::fabs(again.values[static_cast<std::size_t>(i)] -
                                    pr.values[static_cast<std::size_t>(i)]));
    CHECK(sup < 5e-4);  // two lerp resamples of an O(1)-curvature profile
  }
}
