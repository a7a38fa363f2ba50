#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wpi/errors.hpp"
#include "wpi/numerics.hpp"

namespace wpi {

enum class EndpointKind { finite, truncated_infinite };

/// One-dimensional domain. A truncated_infinite endpoint marks a numerical
/// truncation of an infinite end: evaluation past it stays legal.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  EndpointKind lo_kind = EndpointKind::finite;
  EndpointKind hi_kind = EndpointKind::finite;

  double length() const { return hi - lo; }
  bool contains(double t) const;

  static Interval closed(double lo, double hi) { return {lo, hi}; }
  static Interval ray(double lo, double hi_truncation) {
    return {lo, hi_truncation, EndpointKind::finite, EndpointKind::truncated_infinite};
  }
  static Interval line(double lo_truncation, double hi_truncation) {
    return {lo_truncation, hi_truncation, EndpointKind::truncated_infinite,
            EndpointKind::truncated_infinite};
  }
};

enum class DerivativeMode { analytic, finite_difference };

/// One-variable real function with first/second derivative access.
/// Immutable after construction; safe for concurrent evaluation.
class ScalarProfile {
public:
  using Fn = std::function<double(double)>;

  ScalarProfile() = default;

  /// Closed-form value with closed-form derivatives.
  static ScalarProfile analytic(Interval domain, Fn value, Fn d1, Fn d2);
  /// Closed-form value, derivatives by central differences with step
  /// fd_step * max(1, |t|).
  static ScalarProfile numeric(Interval domain, Fn value, double fd_step = 1e-5);
  /// Monotone cubic (Fritsch-Carlson) interpolant; reproduces samples exactly.
  static ScalarProfile from_samples(std::vector<double> t, std::vector<double> v);

  bool valid() const { return static_cast<bool>(value_); }
  const Interval& domain() const { return domain_; }
  DerivativeMode derivative_mode() const {
    return d1_ ? DerivativeMode::analytic : DerivativeMode::finite_difference;
  }
  double fd_step() const { return fd_step_; }

  double operator()(double t) const;  // unchecked fast path
  friend double eval(const ScalarProfile& p, double t);
  friend double derivative(const ScalarProfile& p, double t, int order);

private:
  Interval domain_;
  Fn value_, d1_, d2_;
  double fd_step_ = 1e-5;
};

/// Checked evaluation: throws std::domain_error outside the domain or when the
/// value is not finite.
double eval(const ScalarProfile& p, double t);

/// First or second derivative. Finite-difference mode needs [t - 2h, t + 2h]
/// inside the domain, h = fd_step * max(1, |t|).
double derivative(const ScalarProfile& p, double t, int order);

/// Adaptive-quadrature integral over [a, b] to absolute tolerance `tol`.
double integrate(const ScalarProfile& p, double a, double b, double tol = 1e-10);

struct TailPolicy {
  double rel_tol = 1e-8;        // converged: successive doublings change I by less
  double horizon_start = 1e3;   // first truncation horizon
  double horizon_cap = 1e9;     // geometric doubling stops here
  double decay_floor = 0.5;     // diverges: last/first increment ratio stays above
  double extrap_gate = 0.25;    // extrapolate only if increments decayed below this
  double extrap_rel_tol = 0.02; // last two Aitken stages must agree this well
  double quad_rel = 1e-12;      // per-piece quadrature tolerance, relative
};

enum class TailStatus { converges, diverges, inconclusive };

struct TailResult {
  TailStatus status = TailStatus::inconclusive;
  double value = 0.0;  // extrapolated integral when status == converges
  std::vector<double> horizons;  // H_0, H_1, ... probed
  std::vector<double> partials;  // integral over [a, H_k]
  std::string note;
};

/// Convergence/divergence probe for the improper integral of p >= 0 over
/// [a, infinity), by geometric horizon doubling with Aitken extrapolation.
TailResult improper_tail(const ScalarProfile& p, double a, const TailPolicy& policy = {});

struct GridSpec {
  enum class Grading { uniform, geometric };
  int node_count = 129;
  Grading grading = Grading::uniform;
  double ratio = 1.0;  // spacing multiplier per step (geometric only)
  Interval interval;
};

/// Node positions for a GridSpec; validates node_count >= 3, a < b, ratio > 0.
std::vector<double> make_grid(const GridSpec& grid);

/// Builtin profile catalog used by model specs and tests.
ScalarProfile profile_constant(double c, Interval domain = Interval::ray(0.0, 1e9));
ScalarProfile profile_identity(Interval domain = Interval::ray(0.0, 1e9));
ScalarProfile profile_linear(double intercept, double slope,
                             Interval domain = Interval::ray(0.0, 1e9));
ScalarProfile profile_power(double coeff, double exponent,
                            Interval domain = Interval::ray(0.0, 1e9));
ScalarProfile profile_exp(double rate, double coeff = 1.0,
                          Interval domain = Interval::line(-50.0, 50.0));
ScalarProfile profile_cosh(Interval domain = Interval::line(-50.0, 50.0));
ScalarProfile profile_sinh(Interval domain = Interval::ray(0.0, 50.0));
/// log cosh and log sinh, overflow-free at large |t|; companions for models
/// whose warping grows exponentially.
ScalarProfile profile_log_cosh(Interval domain = Interval::line(-50.0, 50.0));
ScalarProfile profile_log_sinh(Interval domain = Interval::ray(0.0, 50.0));

}  // namespace wpi
