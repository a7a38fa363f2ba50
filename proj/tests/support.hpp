#pragma once

#include <cmath>

#include "wpi/profiles.hpp"
#include "wpi/warped.hpp"

namespace wpi_test {

inline wpi::WarpedModel euclidean_model(int n, double hi = 1e6) {
  wpi::FiberData fiber;
  fiber.sectional = 1.0;
  fiber.ricci_value = static_cast<double>(n - 2);
  return wpi::make_warped_model(n, wpi::DomainKind::pole_model,
                                wpi::profile_identity(wpi::Interval::ray(0.0, hi)), fiber);
}

inline wpi::WarpedModel hyperbolic_model(int n, double hi = 50.0) {
  wpi::FiberData fiber;
  fiber.sectional = 1.0;
  fiber.ricci_value = static_cast<double>(n - 2);
  return wpi::make_warped_model(n, wpi::DomainKind::pole_model,
                                wpi::profile_sinh(wpi::Interval::ray(0.0, hi)), fiber,
                                wpi::profile_log_sinh(wpi::Interval::ray(0.0, hi)));
}

inline wpi::WarpedModel cylinder_model(int n, double hi = 50.0) {
  return wpi::make_warped_model(n, wpi::DomainKind::full_line,
                                wpi::profile_constant(1.0, wpi::Interval::line(-hi, hi)),
                                wpi::FiberData{});
}

inline wpi::WarpedModel exp_model(int n, double rate = 1.0, double hi = 20.0) {
  return wpi::make_warped_model(
      n, wpi::DomainKind::full_line,
      wpi::profile_exp(rate, 1.0, wpi::Interval::line(-hi, hi)), wpi::FiberData{},
      wpi::profile_linear(0.0, rate, wpi::Interval::line(-hi, hi)));
}

inline wpi::WarpedModel cosh_model(int n, double hi = 20.0) {
  return wpi::make_warped_model(n, wpi::DomainKind::full_line,
                                wpi::profile_cosh(wpi::Interval::line(-hi, hi)),
                                wpi::FiberData{},
                                wpi::profile_log_cosh(wpi::Interval::line(-hi, hi)));
}

inline wpi::GridSpec log_grid(double a, double b, int nodes) {
  wpi::GridSpec g;
  g.node_count = nodes;
  g.interval = wpi::Interval::closed(a, b);
  g.grading = wpi::GridSpec::Grading::geometric;
  g.ratio = std::pow(b / a, 1.0 / (nodes - 1));
  return g;
}

}  // namespace wpi_test
