#include "wpi/ends.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wpi {

namespace {

ScalarProfile inverse_of(const ScalarProfile& p) {
  const ScalarProfile q = p;
  return ScalarProfile::numeric(p.domain(), [q](double t) { return 1.0 / q(t); });
}

}  // namespace

Classification classify_end(const EndProfile& e, const TailPolicy& policy) {
  Classification c;
  c.evidence = improper_tail(inverse_of(e.area), e.r0, policy);
  switch (c.evidence.status) {
    case TailStatus::converges:
      c.status = Classification::Status::nonparabolic;
      break;
    case TailStatus::diverges:
      c.status = Classification::Status::parabolic;
      break;
    case TailStatus::inconclusive:
      c.status = Classification::Status::inconclusive;
      break;
  }
  return c;
}

VolumeGrowthReport volume_growth_check(const EndProfile& e, double R_max, int samples) {
  if (!(R_max > e.r0)) throw std::invalid_argument("volume_growth_check: R_max <= r0");
  if (samples < 8) throw std::invalid_argument("volume_growth_check: too few samples");
  VolumeGrowthReport rep;
  const ScalarProfile& A = e.area;
  double V = 0.0;
  double r_prev = e.r0;
  for (int j = 1; j <= samples; ++j) {
    const double R = e.r0 + (R_max - e.r0) * j / samples;
    V += integrate_relative([&A](double r) { return A(r); }, r_prev, R, 1e-10);
    r_prev = R;
    rep.R_values.push_back(R);
    rep.ratios.push_back(V / (R * R));
  }
  rep.infimum = *std::min_element(rep.ratios.begin(), rep.ratios.end());
  // trend of V/R^2 over the outer samples, as a log-log exponent
  const std::size_t half = rep.R_values.size() / 2;
  std::vector<double> xs, ys;
  for (std::size_t i = half; i < rep.R_values.size(); ++i) {
    xs.push_back(std::log(rep.R_values[i]));
    ys.push_back(std::log(std::max(rep.ratios[i], 1e-300)));
  }
  rep.trend_exponent = fit_line(xs, ys).slope;
  rep.pass = rep.infimum > 0.0 && rep.trend_exponent > -0.05;
  return rep;
}

ExponentialBoundsReport weight_integral_bounds(const EndProfile& e, const WeightProfile& w,
                                         const RhoDistanceTable& table,
                                         Classification::Status status, double R_lo,
                                         double R_hi, double tol,
                                         const TailPolicy& policy) {
  if (status == Classification::Status::inconclusive) {
    throw std::invalid_argument("weight_integral_bounds: classification must be decided first");
  }
  if (!(R_lo < R_hi)) throw std::invalid_argument("weight_integral_bounds: bad R range");
  ExponentialBoundsReport rep;
  const ScalarProfile& A = e.area;
  const ScalarProfile& rho = w.rho;
  auto rho_area = [&](double r) { return rho(r) * A(r); };

  if (status == Classification::Status::nonparabolic) {
    rep.branch = "nonparabolic";
    std::vector<double> xs, ys;
    for (double R = R_lo; R <= R_hi + 1e-12; R += 1.0) {
      const double r_in = table.inverse(R);
      const double r_out = table.inverse(R + 1.0);
      const double J = integrate_relative(rho_area, r_in, r_out, 1e-10);
      rep.R_values.push_back(R);
      rep.J_values.push_back(J);
      if (J > 0.0) {
        xs.push_back(R);
        ys.push_back(std::log(J));
      }
    }
    if (xs.size() < 2) throw std::invalid_argument("weight_integral_bounds: no positive annuli");
    LineFit fit = fit_line(xs, ys);
    rep.slope = fit.slope;
    rep.C = std::exp(fit.intercept);
    rep.pass = fit.slope >= 2.0 - tol;
    return rep;
  }

  rep.branch = "parabolic";
  ScalarProfile rho_area_prof =
      ScalarProfile::numeric(A.domain(), [&rho, &A](double r) { return rho(r) * A(r); });
  TailResult total = improper_tail(rho_area_prof, e.r0, policy);
  rep.pass = total.status == TailStatus::converges;
  rep.total = rep.pass ? total.value : 0.0;
  if (!rep.pass) return rep;
  std::vector<double> xs, ys;
  for (double R = R_lo; R <= R_hi + 1e-12; R += 1.0) {
    const double r_at = table.inverse(R);
    TailResult tail = improper_tail(rho_area_prof, r_at, policy);
    if (tail.status != TailStatus::converges) continue;
    rep.R_values.push_back(R);
    rep.tail_values.push_back(tail.value);
    if (tail.value > 0.0) {
      xs.push_back(R);
      ys.push_back(std::log(tail.value));
    }
  }
  if (xs.size() < 2) {
    rep.pass = false;
    return rep;
  }
  rep.tail_slope = fit_line(xs, ys).slope;
  rep.pass = rep.tail_slope <= -2.0 + tol;
  return rep;
}

}  // namespace wpi
