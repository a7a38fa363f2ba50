#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "wpi/errors.hpp"
#include "wpi/rigidity.hpp"

using namespace wpi;
using namespace wpi_test;

namespace {

ScalarProfile tau_quadratic() {
  return ScalarProfile::analytic(
      Interval::closed(0.0, 5.0), [](double t) { return 1.0 + t * t; },
      [](double t) { return 2.0 * t; }, [](double) { return 2.0; });
}

}  // namespace

TEST_CASE("warp ODE closed forms") {
  {
    WarpBuilder b;
    b.tau = profile_constant(1.0, Interval::closed(0.0, 5.0));
    b.domain = Interval::closed(0.0, 5.0);
    ScalarProfile eta = integrate_warp(b);
    double sup = 0.0;
    for (int i = 0; i <= 500; ++i) {
      const double t = 5.0 * i / 500.0;
      sup = std::max(sup, std::abs(eval(eta, t) - std::cosh(t)));
    }
    CHECK(sup <= 1e-8);
  }
  {
    WarpBuilder b;
    b.tau = profile_constant(0.0, Interval::closed(0.0, 5.0));
    b.deta0 = 2.0;
    b.domain = Interval::closed(0.0, 5.0);
    ScalarProfile eta = integrate_warp(b);
    CHECK(eval(eta, 3.0) == doctest::Approx(7.0).epsilon(1e-10));
  }
  {
    const double a = 1.5;
    WarpBuilder b;
    b.tau = profile_constant(a * a, Interval::closed(0.0, 5.0));
    b.deta0 = a;
    b.domain = Interval::closed(0.0, 5.0);
    ScalarProfile eta = integrate_warp(b);
    for (double t : {1.0, 3.0, 5.0}) {
      CHECK(eval(eta, t) == doctest::Approx(std::exp(a * t)).epsilon(1e-8));
    }
  }
}

TEST_CASE("warp ODE zero crossing reports the location") {
  WarpBuilder b;
  b.tau = profile_constant(-1.0, Interval::closed(0.0, 5.0));  // eta = cos t
  b.domain = Interval::closed(0.0, 5.0);
  try {
    integrate_warp(b);
    FAIL("expected ZeroCrossingError");
  } catch (const ZeroCrossingError& e) {
    CHECK(std::abs(e.location - M_PI / 2.0) < 0.01);
  }
}

TEST_CASE("round trip: natural weight of the integrated warp recovers tau") {
  WarpBuilder b;
  b.tau = tau_quadratic();
  b.domain = Interval::closed(0.0, 5.0);
  ScalarProfile eta = integrate_warp(b);
  WarpedModel m = make_warped_model(3, DomainKind::full_line, eta, FiberData{});
  WeightProfile nat = natural_weight(m);
  double worst = 0.0;
  for (int i = 1; i < 200; ++i) {
    const double t = 0.02 + (4.96 - 0.02) * i / 199.0;
    worst = std::max(worst, std::abs(nat.rho(t) / (m.n - 2) - eval(b.tau, t)));
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("round trip: Bochner residual vanishes for the integrated warp") {
  WarpBuilder b;
  b.tau = tau_quadratic();
  b.domain = Interval::closed(0.0, 5.0);
  ScalarProfile eta = integrate_warp(b);
  WarpedModel m = make_warped_model(3, DomainKind::full_line, eta, FiberData{});
  double worst = 0.0;
  for (int i = 1; i < 100; ++i) {
    const double t = 0.05 + (4.9 - 0.05) * i / 99.0;
    worst = std::max(worst, std::abs(bochner_residual(m, b.tau, t)));
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("condition check: cosh passes with the Ricci identity, flat fails") {
  WarpedModel cm = cosh_model(4);
  RigidityReport rep = condition_check(cm);
  CHECK(rep.convexity_condition.holds);
  CHECK(rep.fiber_ricci_condition.holds);
  REQUIRE(rep.residuals.count("ricci_identity_max") == 1);
  CHECK(rep.residuals.at("ricci_identity_max") <= 1e-10);

  WarpedModel flat = euclidean_model(4);
  RigidityReport bad = condition_check(flat);
  CHECK_FALSE(bad.convexity_condition.holds);
}

TEST_CASE("cosh-power warping: generation, asymptotics, antisymmetry") {
  for (double alpha : {1.5, 2.0, 3.0}) {
    CoshPowerWarping ex = cosh_power_warping(alpha, 1.0, 0.0, 4);
    const double rel =
        std::abs(ex.fitted_exponent - ex.expected_exponent) / ex.expected_exponent;
    CHECK(rel <= 0.02);
    CHECK(ex.report.convexity_condition.holds);
    CHECK(ex.report.fiber_ricci_condition.holds);
    CHECK(ex.report.residuals.at("u_second_min_positive_half") >= -1e-12);
    CHECK(ex.report.residuals.at("u_prime_minus_bound_min") > 0.0);
  }
  // alpha = 1 with c1 = 2: rho -> (n-2) c1^2 = 8 for n = 4
  CoshPowerWarping lin = cosh_power_warping(1.0, 2.0, 0.0, 4);
  CHECK(lin.weight.rho(50.0) == doctest::Approx(8.0).epsilon(1e-9));

  CoshPowerWarping ex = cosh_power_warping(2.0, 1.0, 0.0, 4);
  for (double t : {0.3, 1.0, 7.7, 40.0}) {
    CHECK(eval(ex.u, -t) == doctest::Approx(-eval(ex.u, t)).epsilon(1e-12));
    CHECK(ex.weight.rho(-t) == doctest::Approx(ex.weight.rho(t)).epsilon(1e-10));
  }

  // nontrivial fiber bound: C = 1, C1 = 1.5, n = 4
  CoshPowerWarping fib = cosh_power_warping(2.0, 1.5, 1.0, 4);
  CHECK(fib.report.convexity_condition.holds);
  CHECK(fib.report.fiber_ricci_condition.holds);

  // boundary case C = (n-2) C1^2 violates the strict inequality
  CHECK_THROWS_AS(cosh_power_warping(2.0, 1.0, 2.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(cosh_power_warping(0.5, 1.0, 0.0, 4), std::invalid_argument);
}

TEST_CASE("liminf of the natural weight stays positive for growing warps") {
  CoshPowerWarping ex = cosh_power_warping(2.0, 1.0, 0.0, 4);
  LiminfReport rep = end_liminf_check(ex.model, ex.weight);
  CHECK(rep.conditions_ok);
  CHECK(rep.nonparabolic);
  CHECK(rep.positive_margin);
  CHECK_FALSE(rep.t_rho_integrable);
  CHECK(rep.rho_metric_complete == CompletenessVerdict::Status::complete);

  WarpedModel em = exp_model(4, 1.3, 40.0);
  WeightProfile nat = natural_weight(em);
  LiminfReport r2 = end_liminf_check(em, nat);
  CHECK(r2.positive_margin);
  CHECK(r2.liminf_estimate == doctest::Approx(2.0 * 1.69).epsilon(1e-6));
}

TEST_CASE("integrable eta'' triggers the rho-metric incompleteness branch") {
  // eta'' = (1+t)^-3, eta'(0) = 1/2: eta' -> 1, eta ~ t, rho ~ (n-2)(1+t)^-3/eta
  auto eta_d2 = [](double t) { return std::pow(1.0 + std::abs(t), -3.0); };
  auto eta_d1 = [](double t) {
    const double s = 0.5 * (1.0 - std::pow(1.0 + std::abs(t), -2.0));
    return t >= 0.0 ? 0.5 + s : 0.5 - s;
  };
  auto eta_val = [](double t) {
    const double a = std::abs(t);
    // integral of 0.5 + (1 - (1+s)^-2)/2 from 0 to a, extended evenly-ish
    const double core = 0.5 * a + 0.5 * (a - 1.0 + 1.0 / (1.0 + a));
    return t >= 0.0 ? 1.0 + core : 1.0 - t * 0.5 + 0.5 * (-t - 1.0 + 1.0 / (1.0 - t));
  };
  ScalarProfile eta = ScalarProfile::analytic(Interval::line(-200.0, 200.0), eta_val, eta_d1,
                                              eta_d2);
  FiberData fiber;
  fiber.ricci_lower = 2.4;  // (n-2) sup(eta'^2 - eta eta'') with margin
  WarpedModel m = make_warped_model(4, DomainKind::full_line, eta, fiber);
  WeightProfile nat = natural_weight(m);
  LiminfReport rep = end_liminf_check(m, nat);
  CHECK(rep.conditions_ok);
  CHECK(rep.nonparabolic);
  CHECK(rep.t_rho_integrable);
  CHECK(rep.sqrt_rho_tail_converges);
  CHECK(rep.rho_metric_complete == CompletenessVerdict::Status::incomplete);
  CHECK_FALSE(rep.positive_margin);
}

TEST_CASE("comparison-function boundedness check") {
  WeightProfile one = user_weight(profile_constant(1.0, Interval::ray(0.0, 1e9)));
  RhoDistanceTable t1 = build_rho_distance(one, 1.0, log_grid(1.0, 150.0, 600));
  ComparisonReport r1 = comparison_function_check(one, 4, 1.0, t1);
  CHECK(r1.hypothesis_ok);
  CHECK(r1.inequality_ok);
  CHECK(std::abs(r1.inequality_margin) <= 1e-10);
  CHECK(std::abs(r1.inequality_max) <= 1e-10);
  CHECK(r1.consistent);

  WeightProfile dec = user_weight(ScalarProfile::analytic(
      Interval::ray(0.0, 1e9), [](double r) { return std::pow(1.0 + r, -4.0); },
      [](double r) { return -4.0 * std::pow(1.0 + r, -5.0); },
      [](double r) { return 20.0 * std::pow(1.0 + r, -6.0); }));
  RhoDistanceTable t2 = build_rho_distance(dec, 1.0, log_grid(1.0, 120.0, 600));
  ComparisonReport r2 = comparison_function_check(dec, 4, 1.0, t2);
  CHECK(r2.hypothesis_ok);
  CHECK(r2.inequality_ok);
  CHECK(r2.rho_bounded_trend);
  CHECK_FALSE(r2.nonexistence_flag);

  WeightProfile grow = user_weight(profile_exp(1.0, 1.0, Interval::ray(0.0, 1e9)));
  RhoDistanceTable t3 = build_rho_distance(grow, 1.0,
                                           GridSpec{600, GridSpec::Grading::uniform, 1.0,
                                                    Interval::closed(1.0, 40.0)});
  ComparisonReport r3 = comparison_function_check(grow, 4, 1.0, t3);
  CHECK(r3.hypothesis_ok);  // (e^-r/4)'' = e^-r/4 / 16 >= 0
  CHECK(r3.nonexistence_flag);
  CHECK_FALSE(r3.consistent);

  CHECK_THROWS_AS(comparison_function_check(one, 3, 1.0, t1), std::invalid_argument);
}

TEST_CASE("rigid-case residual: exponential warp vs cosh") {
  const int n = 4;
  const double c = 0.5;
  WarpedModel m = make_warped_model(n, DomainKind::full_line,
                                    profile_exp(c, 1.0, Interval::line(-10.0, 10.0)),
                                    FiberData{});
  const double rho_c = 0.25 * (n - 1) * (n - 1) * c * c;
  WeightProfile w = user_weight(profile_constant(rho_c, Interval::line(-10.0, 10.0)));
  ResidualReport rep = rigid_case_residual(m, w);
  CHECK(rep.identity_max <= 1e-8);
  CHECK(rep.residual_max <= 1e-8);
  CHECK(rep.rho_constant);
  CHECK(rep.log_eta_affine);
  CHECK(rep.log_eta_slope == doctest::Approx(c).epsilon(1e-10));
  CHECK(rep.rigid_case);

  WarpedModel cm = cosh_model(4, 10.0);
  ResidualReport bad = rigid_case_residual(cm, natural_weight(cm));
  CHECK(bad.identity_max <= 1e-8);  // the radial identity holds for every warp
  CHECK_FALSE(bad.rigid_case);
  CHECK(bad.residual_max > 1e-3);

  // constant rho that mismatches (n-1)^2 c^2/4 is flagged
  WeightProfile wrong = user_weight(profile_constant(1.0, Interval::line(-10.0, 10.0)));
  ResidualReport mis = rigid_case_residual(m, wrong);
  CHECK_FALSE(mis.rigid_case);
  CHECK(mis.narrative.find("mismatch") != std::string::npos);
}
