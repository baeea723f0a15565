#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "rit/bounds.hpp"

namespace {

// High-precision references computed independently with 50-digit arithmetic.
struct ErfRef {
  double x;
  double value;
};
const ErfRef kErfTable[] = {
    {0.1, 0.112462916018284892203},
    {0.5, 0.520499877813046537683},
    {1.0, 0.842700792949714869341},
    {1.5, 0.966105146475310727067},
    {2.0, 0.995322265018952734162},
    {3.0, 0.999977909503001414558},
    {6.0, 0.999999999999999978480},
};

}  // namespace

TEST_CASE("closed forms reproduce the reference values") {
  CHECK(rit::upper_bound(5.0, 0.2, 3.0) ==
        doctest::Approx(0.552790639154136766824).epsilon(1e-13));
  CHECK(rit::travel_time_lower_bound(5.0, 0.2, 3.0) ==
        doctest::Approx(0.361800627279133829681).epsilon(1e-13));
  CHECK(rit::fcfs_lower_bound(1.0, 3.0) ==
        doctest::Approx(1.0 / 7.0).epsilon(1e-15));
  // The library's own erf enters here, so the tolerance is its 1.5e-7 cap
  // scaled through the formula (the sensitivity is ~3e-8 absolute).
  CHECK(rit::la_lower_bound(1.0, 3.0) ==
        doctest::Approx(0.183776172356441047277).epsilon(1e-6));
  CHECK(rit::la_relative_factor(0.8, 3.0, 20.0) ==
        doctest::Approx(0.556481037140264483982).epsilon(1e-14));
  CHECK(rit::rmhp_lower_bound(100.0, 0.04, 3.0) ==
        doctest::Approx(0.0298142396999971959521).epsilon(1e-13));
  CHECK(rit::few_bound(50, 2.0) == 23.5);  // dyadic, exact
  CHECK(rit::kRmhpAlpha ==
        doctest::Approx(6.0 * std::sqrt(2.0)).epsilon(1e-15));
  CHECK(rit::kRmhpAlphaImproved ==
        doctest::Approx(3.988 / std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("ceiling saturates exactly at the critical rate") {
  // The unsaturated expression crosses 1 at lambda = 2 (1+v)^2 / (v pi rho),
  // about 1.5279 for v = 0.2, rho = 3.
  CHECK(rit::upper_bound(1.5, 0.2, 3.0) == 1.0);
  CHECK(rit::upper_bound(1.6, 0.2, 3.0) < 1.0);
  CHECK(rit::upper_bound(0.0, 0.2, 3.0) == 1.0);
  CHECK(rit::upper_bound(5.0, 0.0, 3.0) == 1.0);
  // The batched-tour guarantee saturates for tiny rates too.
  CHECK(rit::rmhp_lower_bound(0.001, 0.04, 3.0) == 1.0);
}

TEST_CASE("rate times travel floor times ceiling is one when unsaturated") {
  for (double lambda : {2.0, 5.0, 10.0, 100.0}) {
    double prod = lambda * rit::travel_time_lower_bound(lambda, 0.2, 3.0) *
                  rit::upper_bound(lambda, 0.2, 3.0);
    CHECK(std::fabs(prod - 1.0) <= 1e-12);
  }
}

TEST_CASE("all rate bounds decrease in lambda") {
  const std::vector<double> grid = {1.6, 2.0, 3.0, 5.0, 10.0, 30.0, 100.0};
  for (std::size_t i = 1; i < grid.size(); ++i) {
    CHECK(rit::upper_bound(grid[i], 0.2, 3.0) <
          rit::upper_bound(grid[i - 1], 0.2, 3.0));
    CHECK(rit::fcfs_lower_bound(grid[i], 3.0) <
          rit::fcfs_lower_bound(grid[i - 1], 3.0));
    CHECK(rit::la_lower_bound(grid[i], 3.0) <
          rit::la_lower_bound(grid[i - 1], 3.0));
    CHECK(rit::rmhp_lower_bound(grid[i], 0.04, 3.0) <
          rit::rmhp_lower_bound(grid[i - 1], 0.04, 3.0));
    CHECK(rit::travel_time_lower_bound(grid[i], 0.2, 3.0) <
          rit::travel_time_lower_bound(grid[i - 1], 0.2, 3.0));
  }
}

TEST_CASE("lower bounds stay below the ceiling") {
  for (double lambda : {0.25, 0.5, 1.0, 2.0, 4.0, 10.0, 50.0}) {
    CHECK(rit::fcfs_lower_bound(lambda, 3.0) <=
          rit::upper_bound(lambda, 0.2, 3.0));
    CHECK(rit::la_lower_bound(lambda, 3.0) <=
          rit::upper_bound(lambda, 0.8, 3.0));
    CHECK(rit::rmhp_lower_bound(lambda, 0.04, 3.0) <=
          rit::upper_bound(lambda, 0.04, 3.0));
  }
}

TEST_CASE("error function meets its advertised accuracy") {
  CHECK(rit::erf(0.0) == 0.0);
  for (const ErfRef& ref : kErfTable) {
    CHECK(std::fabs(rit::erf(ref.x) - ref.value) <= 1.5e-7);
    // reflection makes oddness exact, not approximate
    CHECK(rit::erf(-ref.x) == -rit::erf(ref.x));
  }
  CHECK(rit::erf(30.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("optimality gap approaches its small-speed limits") {
  const double kRatioLimit = 6.77027500257307544338;     // 12 / sqrt(pi)
  const double kImprovedLimit = 2.24998805918845207235;  // 3.988 / sqrt(pi)
  rit::OptimalityRatio far = rit::optimality_ratio(1e8, 1e-6, 3.0);
  REQUIRE(far.informative);
  CHECK(far.ratio == doctest::Approx(kRatioLimit).epsilon(1e-3));
  CHECK(far.improved_ratio == doctest::Approx(kImprovedLimit).epsilon(1e-3));

  rit::OptimalityRatio closer = rit::optimality_ratio(1e10, 1e-8, 3.0);
  REQUIRE(closer.informative);
  CHECK(closer.ratio == doctest::Approx(kRatioLimit).epsilon(1e-4));
  CHECK(closer.improved_ratio == doctest::Approx(kImprovedLimit).epsilon(1e-4));

  // Saturated sides make the ratio meaningless and it must say so.
  CHECK_FALSE(rit::optimality_ratio(0.1, 0.2, 3.0).informative);
}

TEST_CASE("bound report wires everything together") {
  rit::BoundReport rep = rit::evaluate_bounds(5.0, 0.2, 3.0, 20.0);
  CHECK_FALSE(rep.degenerate);
  CHECK(rep.upper == rit::upper_bound(5.0, 0.2, 3.0));
  CHECK(rep.fcfs_lower == rit::fcfs_lower_bound(5.0, 3.0));
  CHECK(rep.la_lower == rit::la_lower_bound(5.0, 3.0));
  CHECK(rep.rmhp_lower == rit::rmhp_lower_bound(5.0, 0.2, 3.0));
  CHECK(rep.travel_time == rit::travel_time_lower_bound(5.0, 0.2, 3.0));
  CHECK(rep.la_applicable == rit::la_relative_applicable(0.2, 3.0, 20.0));

  CHECK(rit::la_relative_applicable(0.8, 3.0, 20.0));
  CHECK_FALSE(rit::la_relative_applicable(0.9, 3.0, 10.0));

  rit::BoundReport zero = rit::evaluate_bounds(0.0, 0.2, 3.0, 20.0);
  CHECK(zero.degenerate);
  CHECK(zero.upper == 1.0);
  CHECK(std::isinf(zero.travel_time));

  rit::BoundReport still_v = rit::evaluate_bounds(5.0, 0.0, 3.0, 20.0);
  CHECK(still_v.degenerate);
  CHECK(still_v.upper == 1.0);
}
