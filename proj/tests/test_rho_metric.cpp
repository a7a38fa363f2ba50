#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "wpi/rho_metric.hpp"
#include "wpi/rigidity.hpp"

using namespace wpi;
using namespace wpi_test;

TEST_CASE("Hardy rho-distance is logarithmic") {
  WeightProfile w = hardy_weight(4);  // sqrt(rho) = 1/r
  RhoDistanceTable t = build_rho_distance(w, 1.0, log_grid(0.5, 1e5, 1500));
  for (double r : {2.0, std::exp(1.0), 10.0, 1000.0}) {
    CHECK(t.signed_distance(r) == doctest::Approx(std::log(r)).epsilon(1e-9));
  }
  CHECK(t.signed_distance(0.5) == doctest::Approx(std::log(0.5)).epsilon(1e-9));

  WeightProfile w6 = hardy_weight(6);  // sqrt(rho) = 2/r
  RhoDistanceTable t6 = build_rho_distance(w6, 1.0, log_grid(0.5, 100.0, 800));
  CHECK(t6.signed_distance(std::exp(1.0)) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("constant weight gives a linear rho-distance") {
  const double a = 1.7;
  WeightProfile w = user_weight(profile_constant(a * a, Interval::ray(0.0, 1e9)));
  GridSpec g{400, GridSpec::Grading::uniform, 1.0, Interval::closed(0.0, 50.0)};
  RhoDistanceTable t = build_rho_distance(w, 0.0, g);
  for (double r : {1.0, 7.5, 42.0}) {
    CHECK(t.signed_distance(r) == doctest::Approx(a * r).epsilon(1e-12));
  }
}

TEST_CASE("inverse round trip and monotonicity") {
  WeightProfile w = hardy_weight(4);
  RhoDistanceTable t = build_rho_distance(w, 1.0, log_grid(0.5, 1e4, 1200));
  for (int i = 0; i <= 100; ++i) {
    const double R = t.min_signed() + (t.max_signed() - t.min_signed()) * i / 100.0;
    CHECK(std::abs(t.signed_distance(t.inverse(R)) - R) <= 1e-8);
  }
  double prev = t.signed_distance(0.5);
  for (int i = 1; i <= 300; ++i) {
    const double r = 0.5 * std::pow(2e4, i / 300.0);
    const double cur = t.signed_distance(std::min(r, 1e4));
    CHECK(cur >= prev - 1e-14);
    prev = cur;
  }
  CHECK_THROWS_AS(t.inverse(t.max_signed() + 1.0), std::out_of_range);
}

TEST_CASE("table derivative squared equals rho at the nodes") {
  WeightProfile w = hardy_weight(4);
  RhoDistanceTable t = build_rho_distance(w, 1.0, log_grid(0.5, 100.0, 600));
  const auto& grid = t.grid();
  for (std::size_t i = 1; i + 1 < grid.size(); i += 7) {
    const double r = grid[i];
    const double d = t.distance_derivative(r);
    const double rho = w.rho(r);
    CHECK(std::abs(d * d - rho) <= 1e-6 * (1.0 + rho));
  }
}

TEST_CASE("completeness verdicts") {
  CHECK(completeness_check(hardy_weight(3), EndSelector::upper).status ==
        CompletenessVerdict::Status::complete);
  CHECK(completeness_check(hardy_weight(5), EndSelector::upper).status ==
        CompletenessVerdict::Status::complete);
  WeightProfile fast = user_weight(profile_power(1.0, -4.0));
  CHECK(completeness_check(fast, EndSelector::upper).status ==
        CompletenessVerdict::Status::incomplete);
  WeightProfile one = user_weight(profile_constant(1.0, Interval::ray(0.0, 1e9)));
  CHECK(completeness_check(one, EndSelector::upper).status ==
        CompletenessVerdict::Status::complete);
}

TEST_CASE("sup sqrt(rho) over rho-balls") {
  const double a = 1.3;
  WeightProfile w = user_weight(profile_constant(a * a, Interval::ray(0.0, 1e9)));
  GridSpec g{400, GridSpec::Grading::uniform, 1.0, Interval::closed(0.0, 50.0)};
  RhoDistanceTable t = build_rho_distance(w, 0.0, g);
  for (double R : {0.5, 3.0, 20.0}) {
    CHECK(sup_sqrt_rho(t, w, R) == doctest::Approx(a).epsilon(1e-10));
  }

  WeightProfile hardy = hardy_weight(4);
  RhoDistanceTable th = build_rho_distance(hardy, 1.0, log_grid(1.0, 1e4, 1000));
  for (double R : {0.5, 2.0, 6.0}) {
    CHECK(sup_sqrt_rho(th, hardy, R) == doctest::Approx(1.0).epsilon(1e-9));
  }

  WeightProfile nat = natural_weight(cosh_model(4));
  GridSpec gn{400, GridSpec::Grading::uniform, 1.0, Interval::closed(-15.0, 15.0)};
  RhoDistanceTable tn = build_rho_distance(nat, 0.0, gn);
  CHECK(sup_sqrt_rho(tn, nat, 3.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-8));

  CHECK_THROWS_AS(sup_sqrt_rho(t, w, 1e9), std::out_of_range);
}

TEST_CASE("growth criterion: constant weight is satisfied for n = 4") {
  WeightProfile one = user_weight(profile_constant(1.0, Interval::ray(0.0, 1e9)));
  GridSpec g{600, GridSpec::Grading::uniform, 1.0, Interval::closed(0.0, 30.0)};
  RhoDistanceTable t = build_rho_distance(one, 0.0, g);
  CriterionReport rep = growth_criterion(t, one, 4, 25.0);
  CHECK(rep.satisfied_on_horizon);
  // ratio = exp(-R/2) exactly
  CHECK(rep.ratios.back() == doctest::Approx(std::exp(-12.5)).epsilon(1e-6));
}

TEST_CASE("growth criterion: exponential weight fails at n = 3") {
  // sqrt(rho) = e^r makes r_rho = e^r - e^{r0}, so S(R) = R + e^{r0} and the
  // n = 3 gauge F(R) = R leaves the ratio pinned near 1.
  WeightProfile w = user_weight(ScalarProfile::analytic(
      Interval::ray(0.0, 1e9), [](double r) { return std::exp(2.0 * r); },
      [](double r) { return 2.0 * std::exp(2.0 * r); },
      [](double r) { return 4.0 * std::exp(2.0 * r); }));
  GridSpec g{1200, GridSpec::Grading::uniform, 1.0, Interval::closed(0.0, 6.0)};
  RhoDistanceTable t = build_rho_distance(w, 0.0, g);
  CriterionReport rep = growth_criterion(t, w, 3, 300.0);
  CHECK_FALSE(rep.satisfied_on_horizon);
  CHECK(rep.running_min > 0.5);
}

TEST_CASE("growth criterion: the cosh-power warping weight decays to 0 on the horizon") {
  // rho ~ 8 t^2 while r_rho ~ sqrt(2) t^2, so S(R)/exp(R/2) -> 0
  CoshPowerWarping ex = cosh_power_warping(2.0, 1.0, 0.0, 4, 60.0);
  GridSpec g{1600, GridSpec::Grading::uniform, 1.0, Interval::closed(-50.0, 50.0)};
  RhoDistanceTable t = build_rho_distance(ex.weight, 0.0, g);
  const double R_max = 0.8 * t.max_signed();
  CriterionReport rep = growth_criterion(t, ex.weight, 4, R_max);
  CHECK(rep.satisfied_on_horizon);
  for (std::size_t i = 1; i < rep.ratios.size(); ++i) {
    CHECK(rep.ratios[i] <= rep.ratios[i - 1] * 1.05);
  }
}

TEST_CASE("growth criterion: polynomial weights keep decreasing for n = 4") {
  for (double p : {0.0, 1.0, 2.0}) {
    WeightProfile w = user_weight(ScalarProfile::analytic(
        Interval::ray(0.0, 1e9), [p](double r) { return std::pow(1.0 + r, p); },
        [p](double r) { return p * std::pow(1.0 + r, p - 1.0); },
        [p](double r) { return p * (p - 1.0) * std::pow(1.0 + r, p - 2.0); }));
    GridSpec g{900, GridSpec::Grading::uniform, 1.0, Interval::closed(0.0, 60.0)};
    RhoDistanceTable t = build_rho_distance(w, 0.0, g);
    const double R_max = 0.8 * t.max_signed();
    CriterionReport rep = growth_criterion(t, w, 4, R_max);
    // running minimum strictly decreases along the horizon
    CHECK(rep.ratios.back() == doctest::Approx(rep.running_min));
    CHECK(rep.running_min < 0.5 * rep.ratios.front());
  }
}

TEST_CASE("radius_for_rho_distance inverts the Hardy distance") {
  WeightProfile w = hardy_weight(4);
  const double r = radius_for_rho_distance(w, 1.0, 3.0);
  CHECK(r == doctest::Approx(std::exp(3.0)).epsilon(1e-8));
}
