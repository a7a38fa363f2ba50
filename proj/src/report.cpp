#include "wpi/report.hpp"

#include <cmath>
#include <sstream>

#include "wpi/decay.hpp"
#include "wpi/ends.hpp"
#include "wpi/io.hpp"
#include "wpi/rho_metric.hpp"
#include "wpi/rigidity.hpp"
#include "wpi/spectral.hpp"

namespace wpi {

namespace {

WarpedModel euclidean_model(int n, double hi = 1e6) {
  return make_warped_model(n, DomainKind::pole_model, profile_identity(Interval::ray(0.0, hi)),
                           FiberData{});
}

WarpedModel hyperbolic_model(int n, double hi = 50.0) {
  FiberData fiber;
  fiber.sectional = 1.0;
  fiber.ricci_value = static_cast<double>(n - 2);
  return make_warped_model(n, DomainKind::pole_model, profile_sinh(Interval::ray(0.0, hi)),
                           fiber, profile_log_sinh(Interval::ray(0.0, hi)));
}

WarpedModel cylinder_model(int n, double hi = 50.0) {
  return make_warped_model(n, DomainKind::full_line,
                           profile_constant(1.0, Interval::line(-hi, hi)), FiberData{});
}

GridSpec log_grid(double a, double b, int nodes) {
  GridSpec g;
  g.node_count = nodes;
  g.interval = Interval::closed(a, b);
  g.grading = GridSpec::Grading::geometric;
  g.ratio = std::pow(b / a, 1.0 / (nodes - 1));
  return g;
}

std::string fmt(double v) { return format_double(v); }

CheckResult check_hardy_sharpness() {
  CheckResult c{"hardy sharpness (weighted Poincare, scaled-constant failure)", true, ""};
  std::ostringstream os;
  for (int n : {3, 4, 5}) {
    WeightProfile w = hardy_weight(n);
    WarpedModel m = euclidean_model(n);
    VerificationReport rep =
        verify_weighted_poincare(w, m, Interval::closed(0.01, 100.0), log_grid(0.01, 100.0, 2501));
    os << "n=" << n << " min=" << fmt(rep.minimum) << " ";
    c.pass = c.pass && rep.minimum >= -1e-8;
  }
  for (int n : {4, 5}) {
    WeightProfile w = hardy_weight(n);
    WeightProfile scaled = user_weight(ScalarProfile::analytic(
        w.rho.domain(), [w](double r) { return 1.2 * w.rho(r); },
        [w](double r) { return 1.2 * derivative(w.rho, r, 1); },
        [w](double r) { return 1.2 * derivative(w.rho, r, 2); }));
    WarpedModel m = euclidean_model(n);
    VerificationReport rep = verify_weighted_poincare(scaled, m, Interval::closed(0.01, 100.0),
                                                      log_grid(0.01, 100.0, 2501));
    os << "1.2x n=" << n << " min=" << fmt(rep.minimum) << " ";
    c.pass = c.pass && rep.minimum < 0.0;
  }
  c.detail = os.str();
  return c;
}

CheckResult check_decay_sharpness() {
  CheckResult c{"decay sharpness on the R^4 end", true, ""};
  WarpedModel m = euclidean_model(4, 1e7);
  WeightProfile w = hardy_weight(4);
  const double hi = std::exp(11.5);
  EndModel end = make_end_model(m, w, std::nullopt, 1.0, log_grid(1.0, hi, 1600));
  ScalarProfile f = solve_schrodinger_radial(end, BVSpec{});
  AnnulusSeries s = annulus_integrals(end, f, 10.0);
  double worst = 0.0;
  for (std::size_t i = 0; i < s.R_values.size(); ++i) {
    const double R = s.R_values[i];
    if (R < 1.0) continue;
    const double expected = (1.0 - std::exp(-2.0)) / 2.0 * std::exp(-2.0 * R);
    worst = std::max(worst, std::abs(s.integrals[i] - expected) / expected);
  }
  DecayFit fit = fit_decay_rate(s, 1.0, 10.0);
  c.pass = worst <= 1e-6 && std::abs(fit.rate + 2.0) <= 1e-4;
  c.detail = "max rel err " + fmt(worst) + ", rate " + fmt(fit.rate);
  return c;
}

CheckResult check_bottom_spectrum() {
  CheckResult c{"bottom of spectrum of the hyperbolic 3-model", true, ""};
  const double radii[] = {10.0, 20.0, 30.0};
  BottomSpectrumResult r = bottom_spectrum(hyperbolic_model(3), radii, 10000);
  c.pass = std::abs(r.estimate - 1.0) <= 0.01;
  c.detail = "extrapolated " + fmt(r.estimate);
  return c;
}

CheckResult check_green_equals_hardy() {
  CheckResult c{"Green's-function weight reproduces the Hardy weight", true, ""};
  double worst = 0.0;
  for (int n : {3, 4, 5}) {
    WarpedModel m = euclidean_model(n);
    WeightProfile g = green_weight_model(m);
    WeightProfile h = hardy_weight(n);
    for (double r : {0.5, 1.0, 10.0}) {
      worst = std::max(worst, std::abs(g.rho(r) - h.rho(r)) / h.rho(r));
    }
  }
  c.pass = worst <= 1e-8;
  c.detail = "max rel err " + fmt(worst);
  return c;
}

CheckResult check_curvature() {
  CheckResult c{"curvature identities on hyperbolic and flat models", true, ""};
  double worst = 0.0;
  for (int n : {3, 4, 5}) {
    WarpedModel hyp = hyperbolic_model(n);
    for (double t : {0.5, 1.0, 2.0}) {
      worst = std::max(worst, std::abs(sectional_radial(hyp, t) + 1.0));
      worst = std::max(worst, std::abs(sectional_fiber(hyp, t) + 1.0));
      worst = std::max(worst, std::abs(ricci_radial(hyp, t) + (n - 1.0)));
      worst = std::max(worst, std::abs(ricci_fiber(hyp, t) + (n - 1.0)));
    }
    FiberData flat_fiber;
    flat_fiber.sectional = 1.0;
    flat_fiber.ricci_value = static_cast<double>(n - 2);
    WarpedModel flat = make_warped_model(n, DomainKind::pole_model,
                                         profile_identity(Interval::ray(0.0, 1e6)), flat_fiber);
    for (double t : {0.5, 1.0, 2.0}) {
      worst = std::max(worst, std::abs(sectional_radial(flat, t)));
      worst = std::max(worst, std::abs(sectional_fiber(flat, t)));
      worst = std::max(worst, std::abs(ricci_radial(flat, t)));
      worst = std::max(worst, std::abs(ricci_fiber(flat, t)));
    }
  }
  c.pass = worst <= 1e-9;
  c.detail = "max abs err " + fmt(worst);
  return c;
}

CheckResult check_harmonic_flux() {
  CheckResult c{"harmonic profile and level-set flux", true, ""};
  double worst_lap = 0.0, worst_flux = 0.0;
  struct Case {
    WarpedModel m;
    double lo, hi, t0;
  };
  std::vector<Case> cases;
  cases.push_back({cylinder_model(3), -5.0, 5.0, 0.0});
  cases.push_back({euclidean_model(4), 0.5, 20.0, 1.0});
  cases.push_back({hyperbolic_model(3), 0.5, 10.0, 1.0});
  cases.push_back({make_warped_model(3, DomainKind::full_line,
                                     profile_exp(1.0, 1.0, Interval::line(-10.0, 10.0)),
                                     FiberData{}),
                   -5.0, 5.0, 0.0});
  cases.push_back({make_warped_model(4, DomainKind::full_line,
                                     profile_cosh(Interval::line(-10.0, 10.0)), FiberData{}),
                   -5.0, 5.0, 0.0});
  for (const auto& cs : cases) {
    ScalarProfile f = harmonic_profile(cs.m, cs.t0);
    for (int i = 0; i < 100; ++i) {
      const double t = cs.lo + (cs.hi - cs.lo) * i / 99.0;
      worst_lap = std::max(worst_lap, std::abs(radial_laplacian(cs.m, f, t)));
    }
  }
  WarpedModel flux_model = make_warped_model(
      4, DomainKind::full_line, profile_cosh(Interval::line(-10.0, 10.0)), FiberData{});
  double fmin = 1e300, fmax = -1e300;
  for (int i = 0; i < 50; ++i) {
    const double t = -5.0 + 10.0 * i / 49.0;
    const double v = level_flux(flux_model, t);
    fmin = std::min(fmin, v);
    fmax = std::max(fmax, v);
  }
  worst_flux = (fmax - fmin) / fmax;
  c.pass = worst_lap <= 1e-8 && worst_flux <= 1e-8;
  c.detail = "sup |lap| " + fmt(worst_lap) + ", flux variation " + fmt(worst_flux);
  return c;
}

CheckResult check_bochner() {
  CheckResult c{"improved Bochner equality at tau = eta''/eta", true, ""};
  double worst = 0.0;
  auto run_case = [&worst](const WarpedModel& m, const ScalarProfile& tau, double lo,
                           double hi) {
    for (int i = 0; i < 60; ++i) {
      const double t = lo + (hi - lo) * i / 59.0;
      worst = std::max(worst, std::abs(bochner_residual(m, tau, t)));
    }
  };
  {
    WarpedModel m = make_warped_model(4, DomainKind::full_line,
                                      profile_cosh(Interval::line(-8.0, 8.0)), FiberData{});
    run_case(m, profile_constant(1.0, Interval::line(-8.0, 8.0)), -4.0, 4.0);
  }
  {
    WarpedModel m = make_warped_model(3, DomainKind::full_line,
                                      profile_exp(1.0, 1.0, Interval::line(-8.0, 8.0)),
                                      FiberData{});
    run_case(m, profile_constant(1.0, Interval::line(-8.0, 8.0)), -4.0, 4.0);
  }
  {
    WarpBuilder b;
    b.tau = ScalarProfile::analytic(
        Interval::closed(0.0, 5.0), [](double t) { return 1.0 + t * t; },
        [](double t) { return 2.0 * t; }, [](double) { return 2.0; });
    b.domain = Interval::closed(0.0, 5.0);
    ScalarProfile eta = integrate_warp(b);
    WarpedModel m = make_warped_model(3, DomainKind::full_line, eta, FiberData{});
    run_case(m, b.tau, 0.05, 4.95);
  }
  c.pass = worst <= 1e-6;
  c.detail = "sup |residual| " + fmt(worst);
  return c;
}

CheckResult check_classification() {
  CheckResult c{"end classification table", true, ""};
  auto classify = [](ScalarProfile A, double r0) {
    EndProfile e{std::move(A), r0, ""};
    return classify_end(e).status;
  };
  const double two_pi = 2.0 * M_PI;
  bool ok = true;
  ok = ok && classify(profile_power(two_pi, 1.0), 1.0) == Classification::Status::parabolic;
  ok = ok && classify(profile_constant(two_pi), 1.0) == Classification::Status::parabolic;
  ok = ok && classify(profile_power(4.0 * M_PI, 2.0), 1.0) == Classification::Status::nonparabolic;
  ok = ok && classify(profile_power(1.0, 3.0), 1.0) == Classification::Status::nonparabolic;
  ok = ok &&
       classify(profile_exp(2.0, 1.0, Interval::ray(0.0, 1e9)), 1.0) ==
           Classification::Status::nonparabolic;
  c.pass = ok;
  c.detail = ok ? "R2, cylinder parabolic; R3, R4, H3 nonparabolic" : "misclassification";
  return c;
}

CheckResult check_weight_integral_growth() {
  CheckResult c{"exponential weight-integral growth on the R^4 end", true, ""};
  WeightProfile w = hardy_weight(4);
  const double hi = std::exp(10.5);
  RhoDistanceTable table = build_rho_distance(w, 1.0, log_grid(1.0, hi, 1200));
  EndProfile e{profile_power(1.0, 3.0, Interval::ray(0.0, 1e9)), 1.0, "R4"};
  ExponentialBoundsReport rep =
      weight_integral_bounds(e, w, table, Classification::Status::nonparabolic, 2.0, 8.0);
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < rep.J_values.size(); ++i) {
    const double ratio = rep.J_values[i + 1] / rep.J_values[i];
    worst = std::max(worst, std::abs(ratio - std::exp(2.0)) / std::exp(2.0));
  }
  c.pass = rep.pass && worst <= 0.01;
  c.detail = "slope " + fmt(rep.slope) + ", max ratio err " + fmt(worst);
  return c;
}

CheckResult check_warp_ode() {
  CheckResult c{"warp ODE against cosh and tau round-trip", true, ""};
  WarpBuilder b;
  b.tau = profile_constant(1.0, Interval::closed(0.0, 5.0));
  b.domain = Interval::closed(0.0, 5.0);
  ScalarProfile eta = integrate_warp(b);
  double worst = 0.0, worst_rt = 0.0;
  for (int i = 0; i <= 500; ++i) {
    const double t = 5.0 * i / 500.0;
    worst = std::max(worst, std::abs(eta(t) - std::cosh(t)));
  }
  WarpedModel m = make_warped_model(4, DomainKind::full_line, eta, FiberData{});
  WeightProfile nat = natural_weight(m);
  for (int i = 1; i < 500; ++i) {
    const double t = 5.0 * i / 500.0 * 0.99;
    worst_rt = std::max(worst_rt, std::abs(nat.rho(t) / (m.n - 2) - 1.0));
  }
  c.pass = worst <= 1e-8 && worst_rt <= 1e-6;
  c.detail = "sup |eta - cosh| " + fmt(worst) + ", tau recovery err " + fmt(worst_rt);
  return c;
}

CheckResult check_cosh_power() {
  CheckResult c{"cosh-power warping asymptotics", true, ""};
  std::ostringstream os;
  for (double alpha : {1.5, 2.0, 3.0}) {
    CoshPowerWarping ex = cosh_power_warping(alpha, 1.0, 0.0, 4);
    const double err = std::abs(ex.fitted_exponent - ex.expected_exponent) /
                       std::max(ex.expected_exponent, 1e-12);
    os << "alpha=" << alpha << " exponent=" << fmt(ex.fitted_exponent) << " ";
    c.pass = c.pass && err <= 0.02 && ex.report.convexity_condition.holds &&
             ex.report.fiber_ricci_condition.holds;
  }
  c.detail = os.str();
  return c;
}

CheckResult check_rigid_case() {
  CheckResult c{"rigid-case residual for exponential and cosh warpings", true, ""};
  const double rate = 0.5;
  const int n = 4;
  WarpedModel m = make_warped_model(
      n, DomainKind::full_line, profile_exp(rate, 1.0, Interval::line(-10.0, 10.0)),
      FiberData{});
  const double rho_c = 0.25 * (n - 1) * (n - 1) * rate * rate;
  WeightProfile w = user_weight(profile_constant(rho_c, Interval::line(-10.0, 10.0)));
  ResidualReport rigid = rigid_case_residual(m, w);
  WarpedModel mc = make_warped_model(n, DomainKind::full_line,
                                     profile_cosh(Interval::line(-10.0, 10.0)), FiberData{});
  ResidualReport non_rigid = rigid_case_residual(mc, natural_weight(mc));
  c.pass = rigid.rigid_case && rigid.residual_max <= 1e-8 && !non_rigid.rigid_case;
  c.detail = "exp residual " + fmt(rigid.residual_max) + ", cosh rigid=" +
             (non_rigid.rigid_case ? "true" : "false");
  return c;
}

CheckResult check_comparison_function() {
  CheckResult c{"comparison-function inequality", true, ""};
  WeightProfile one = user_weight(profile_constant(1.0, Interval::ray(0.0, 1e9)));
  RhoDistanceTable t1 = build_rho_distance(one, 1.0, log_grid(1.0, 120.0, 600));
  ComparisonReport r1 = comparison_function_check(one, 4, 1.0, t1);
  const bool equality = std::abs(r1.inequality_margin) <= 1e-10 &&
                        std::abs(r1.inequality_max) <= 1e-10 && r1.hypothesis_ok;

  WeightProfile decaying = user_weight(ScalarProfile::analytic(
      Interval::ray(0.0, 1e9), [](double r) { return std::pow(1.0 + r, -4.0); },
      [](double r) { return -4.0 * std::pow(1.0 + r, -5.0); },
      [](double r) { return 20.0 * std::pow(1.0 + r, -6.0); }));
  RhoDistanceTable t2 = build_rho_distance(decaying, 1.0, log_grid(1.0, 120.0, 600));
  ComparisonReport r2 = comparison_function_check(decaying, 4, 1.0, t2);
  c.pass = equality && r2.hypothesis_ok && r2.inequality_ok && r2.rho_bounded_trend;
  c.detail = "const-weight margin " + fmt(r1.inequality_margin) + ", decaying ok=" +
             (r2.inequality_ok ? "true" : "false");
  return c;
}

CheckResult check_honest_limits() {
  CheckResult c{"bounded-profile hyperbolic scenario stays O(R), no certificate", true, ""};
  const int n = 3;
  FiberData fiber;
  fiber.sectional = 1.0;
  fiber.ricci_value = static_cast<double>(n - 2);
  WarpedModel m = make_warped_model(n, DomainKind::pole_model,
                                    profile_sinh(Interval::ray(0.0, 80.0)), fiber);
  const double a = 0.5 * (n - 1);
  WeightProfile w = user_weight(profile_constant(a * a, Interval::ray(0.0, 1e9)));
  GridSpec grid;
  grid.node_count = 1200;
  grid.interval = Interval::closed(1.0, 60.0);
  EndModel end = make_end_model(m, w, std::nullopt, 1.0, grid);
  ScalarProfile f = profile_constant(1.0, Interval::ray(0.0, 1e9));
  GrowthReport rep = growth_condition_check(end, f, 50.0);
  c.pass = rep.verdict == GrowthReport::Verdict::boundary_theta && !rep.certificate_emitted;
  c.detail = "trend " + fmt(rep.trend) + ", certificate_emitted=" +
             (rep.certificate_emitted ? "true" : "false");
  return c;
}

}  // namespace

std::vector<CheckResult> run_reproduction() {
  std::vector<CheckResult> out;
  out.push_back(check_hardy_sharpness());
  out.push_back(check_decay_sharpness());
  out.push_back(check_bottom_spectrum());
  out.push_back(check_green_equals_hardy());
  out.push_back(check_curvature());
  out.push_back(check_harmonic_flux());
  out.push_back(check_bochner());
  out.push_back(check_classification());
  out.push_back(check_weight_integral_growth());
  out.push_back(check_warp_ode());
  out.push_back(check_cosh_power());
  out.push_back(check_rigid_case());
  out.push_back(check_comparison_function());
  out.push_back(check_honest_limits());
  return out;
}

}  // namespace wpi
