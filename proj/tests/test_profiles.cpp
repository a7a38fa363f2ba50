#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "wpi/errors.hpp"
#include "wpi/profiles.hpp"

using namespace wpi;

namespace {

ScalarProfile square_profile() {
  return ScalarProfile::analytic(
      Interval::closed(-10.0, 10.0), [](double t) { return t * t; },
      [](double t) { return 2.0 * t; }, [](double) { return 2.0; });
}

}  // namespace

TEST_CASE("eval on closed forms and samples") {
  CHECK(eval(square_profile(), 3.0) == doctest::Approx(9.0));
  CHECK(eval(profile_cosh(), 0.0) == doctest::Approx(1.0));

  ScalarProfile s = ScalarProfile::from_samples({0.0, 1.0, 2.0}, {0.0, 1.0, 4.0});
  CHECK(eval(s, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(eval(s, 0.0) == doctest::Approx(0.0));
  CHECK(eval(s, 2.0) == doctest::Approx(4.0));

  CHECK_THROWS_AS(eval(square_profile(), 11.0), std::domain_error);
  // non-finite value inside the nominal domain is an eval error
  ScalarProfile bad = ScalarProfile::numeric(Interval::closed(0.0, 1.0),
                                             [](double t) { return 1.0 / t; });
  CHECK_THROWS_AS(eval(bad, 0.0), std::domain_error);
}

TEST_CASE("samples are reproduced exactly and monotone data stays monotone") {
  std::vector<double> t{0.0, 0.5, 1.0, 2.0, 3.5, 5.0};
  std::vector<double> v{1.0, 1.3, 1.31, 2.0, 4.0, 4.1};
  ScalarProfile s = ScalarProfile::from_samples(t, v);
  for (std::size_t i = 0; i < t.size(); ++i) {
    CHECK(eval(s, t[i]) == doctest::Approx(v[i]).epsilon(1e-14));
  }
  double prev = eval(s, 0.0);
  for (int i = 1; i <= 500; ++i) {
    const double x = 5.0 * i / 500.0;
    const double cur = eval(s, x);
    CHECK(cur >= prev - 1e-12);
    prev = cur;
  }
}

TEST_CASE("derivative: analytic and finite-difference") {
  CHECK(derivative(profile_cosh(), 0.0, 2) == doctest::Approx(1.0));
  ScalarProfile cube = ScalarProfile::analytic(
      Interval::closed(-5.0, 5.0), [](double t) { return t * t * t; },
      [](double t) { return 3.0 * t * t; }, [](double t) { return 6.0 * t; });
  CHECK(derivative(cube, 2.0, 1) == doctest::Approx(12.0));

  ScalarProfile e = ScalarProfile::numeric(Interval::closed(-3.0, 3.0),
                                           [](double t) { return std::exp(t); }, 1e-4);
  CHECK(e.derivative_mode() == DerivativeMode::finite_difference);
  CHECK(std::abs(derivative(e, 1.0, 2) - std::exp(1.0)) < 1e-6);

  // FD stencil requires a 2h margin from the boundary
  CHECK_THROWS_AS(derivative(e, 2.99999, 1), std::domain_error);
}

TEST_CASE("FD derivative is second order: halving the step quarters the error") {
  auto fd_error = [](double step, int order) {
    ScalarProfile p = ScalarProfile::numeric(Interval::closed(-3.0, 3.0),
                                             [](double t) { return std::sin(2.0 * t); }, step);
    const double t = 0.4;
    const double exact = order == 1 ? 2.0 * std::cos(2.0 * t) : -4.0 * std::sin(2.0 * t);
    return std::abs(derivative(p, t, order) - exact);
  };
  for (int order : {1, 2}) {
    const double e1 = fd_error(2e-3, order);
    const double e2 = fd_error(1e-3, order);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.25));
  }
}

TEST_CASE("integrate: closed forms") {
  CHECK(integrate(profile_identity(Interval::closed(0.0, 2.0)), 0.0, 1.0) ==
        doctest::Approx(0.5).epsilon(1e-12));
  ScalarProfile inv = ScalarProfile::analytic(
      Interval::ray(0.5, 1e9), [](double t) { return 1.0 / t; },
      [](double t) { return -1.0 / (t * t); }, [](double t) { return 2.0 / (t * t * t); });
  CHECK(std::abs(integrate(inv, 1.0, std::exp(1.0)) - 1.0) < 1e-10);
  ScalarProfile decay = profile_exp(-2.0, 1.0, Interval::ray(0.0, 100.0));
  CHECK(std::abs(integrate(decay, 0.0, 40.0) - 0.5) < 1e-10);
  // signed orientation
  CHECK(integrate(profile_identity(Interval::closed(0.0, 2.0)), 1.0, 0.0) ==
        doctest::Approx(-0.5));
}

TEST_CASE("integrate is linear within 2 tol on random polynomials") {
  std::mt19937 rng(20240811);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  const double tol = 1e-10;
  for (int trial = 0; trial < 25; ++trial) {
    double pc[6], qc[6];
    for (int i = 0; i < 6; ++i) {
      pc[i] = coeff(rng);
      qc[i] = coeff(rng);
    }
    const double alpha = coeff(rng), beta = coeff(rng);
    auto horner = [](const double* c, double t) {
      double v = 0.0;
      for (int i = 5; i >= 0; --i) v = v * t + c[i];
      return v;
    };
    Interval dom = Interval::closed(-2.0, 2.0);
    ScalarProfile p = ScalarProfile::numeric(dom, [&, pc](double t) { return horner(pc, t); });
    ScalarProfile q = ScalarProfile::numeric(dom, [&, qc](double t) { return horner(qc, t); });
    ScalarProfile combo = ScalarProfile::numeric(dom, [=](double t) {
      return alpha * horner(pc, t) + beta * horner(qc, t);
    });
    const double lhs = integrate(combo, -1.5, 1.7, tol);
    const double rhs = alpha * integrate(p, -1.5, 1.7, tol) + beta * integrate(q, -1.5, 1.7, tol);
    CHECK(std::abs(lhs - rhs) <= 2.0 * tol);
  }
}

TEST_CASE("integrate fails loudly on a non-integrable endpoint") {
  ScalarProfile bad = ScalarProfile::numeric(Interval::closed(0.0, 1.0),
                                             [](double t) { return 1.0 / t; });
  CHECK_THROWS_AS(integrate(bad, 0.0, 1.0), QuadratureError);
}

TEST_CASE("improper_tail: inverse square converges to 1") {
  ScalarProfile p = profile_power(1.0, -2.0);
  TailResult r = improper_tail(p, 1.0);
  CHECK(r.status == TailStatus::converges);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("improper_tail: harmonic tail diverges") {
  ScalarProfile p = profile_power(1.0, -1.0);
  TailResult r = improper_tail(p, 1.0);
  CHECK(r.status == TailStatus::diverges);
}

TEST_CASE("improper_tail: r^-1 log^-2 converges to 1/log 2 within policy tolerance") {
  ScalarProfile p = ScalarProfile::numeric(Interval::ray(1.5, 1e9), [](double r) {
    const double l = std::log(r);
    return 1.0 / (r * l * l);
  });
  TailPolicy policy;
  TailResult r = improper_tail(p, 2.0, policy);
  const double expected = 1.0 / std::log(2.0);  // antiderivative is -1/log r
  CHECK(r.status == TailStatus::converges);
  CHECK(std::abs(r.value - expected) <= policy.extrap_rel_tol * expected);
}

TEST_CASE("improper_tail never converges on r^-1 nor diverges on r^-2") {
  for (double a : {1.0, 3.0, 10.0}) {
    CHECK(improper_tail(profile_power(1.0, -1.0), a).status != TailStatus::converges);
    CHECK(improper_tail(profile_power(1.0, -2.0), a).status != TailStatus::diverges);
  }
}

TEST_CASE("improper_tail extrapolates through a short horizon cap") {
  TailPolicy tight;
  tight.horizon_cap = 2e4;  // only ~4 doublings, the last one clamped
  TailResult r = improper_tail(profile_power(1.0, -2.0), 1.0, tight);
  CHECK(r.status == TailStatus::converges);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("improper_tail on a finite-domain profile stays inconclusive") {
  ScalarProfile p = ScalarProfile::numeric(Interval::closed(1.0, 5e3),
                                           [](double t) { return 1.0 / t; });
  TailResult r = improper_tail(p, 1.0);
  CHECK(r.status == TailStatus::inconclusive);
}

TEST_CASE("make_grid: uniform, geometric, validation") {
  GridSpec u{5, GridSpec::Grading::uniform, 1.0, Interval::closed(0.0, 1.0)};
  auto nu = make_grid(u);
  REQUIRE(nu.size() == 5);
  CHECK(nu[1] == doctest::Approx(0.25));

  GridSpec g{4, GridSpec::Grading::geometric, 2.0, Interval::closed(0.0, 7.0)};
  auto ng = make_grid(g);
  REQUIRE(ng.size() == 4);
  CHECK(ng[1] == doctest::Approx(1.0));  // spacings 1, 2, 4
  CHECK(ng[2] == doctest::Approx(3.0));

  GridSpec bad{2, GridSpec::Grading::uniform, 1.0, Interval::closed(0.0, 1.0)};
  CHECK_THROWS_AS(make_grid(bad), std::invalid_argument);
  GridSpec bad2{5, GridSpec::Grading::geometric, -1.0, Interval::closed(0.0, 1.0)};
  CHECK_THROWS_AS(make_grid(bad2), std::invalid_argument);
  GridSpec bad3{5, GridSpec::Grading::uniform, 1.0, Interval::closed(1.0, 0.0)};
  CHECK_THROWS_AS(make_grid(bad3), std::invalid_argument);
}
