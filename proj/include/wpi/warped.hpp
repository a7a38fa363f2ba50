#pragma once

#include <optional>

#include "wpi/profiles.hpp"

namespace wpi {

enum class DomainKind { full_line, pole_model };

/// Fiber geometry summarized by scalars; the fibers are never meshed.
struct FiberData {
  double ricci_lower = 0.0;              // C_N = inf Ric_N over points and directions
  double volume = 1.0;                   // V_N > 0
  std::optional<double> sectional;       // fiber sectional bound K-bar (isotropic)
  std::optional<double> ricci_value;     // Ric-bar_aa for isotropic fibers
  bool compact = true;                   // user-declared, never inferred
};

/// Warped product dt^2 + eta^2(t) ds_N^2 on R x N, or a radial model from a
/// pole (eta(0) = 0, eta'(0) = 1). `log_eta`, when supplied, routes curvature
/// and gradient formulas through log-space so rapidly growing warpings do not
/// overflow.
struct WarpedModel {
  int n = 3;
  DomainKind kind = DomainKind::full_line;
  ScalarProfile eta;
  std::optional<ScalarProfile> log_eta;
  FiberData fiber;
};

/// Validates invariants (n >= 3, eta > 0 interior, pole normalization within
/// 1e-9, fiber volume > 0); throws std::invalid_argument on violations.
WarpedModel make_warped_model(int n, DomainKind kind, ScalarProfile eta, FiberData fiber,
                              std::optional<ScalarProfile> log_eta = std::nullopt);

/// (log eta)' and (log eta)'' at t, via log_eta when present.
double log_eta_d1(const WarpedModel& m, double t);
double log_eta_d2(const WarpedModel& m, double t);
/// eta''/eta at t (= (log eta)'' + ((log eta)')^2).
double eta_dd_over_eta(const WarpedModel& m, double t);

/// Boundary-area profile A(t) = V_N eta^{n-1}(t), with analytic derivatives.
ScalarProfile area_profile(const WarpedModel& m);

/// Sectional curvature of the plane spanned by the radial direction and a
/// fiber direction: -((log eta)'' + ((log eta)')^2).
double sectional_radial(const WarpedModel& m, double t);

/// Sectional curvature of a fiber two-plane: eta^{-2} K-bar - ((log eta)')^2.
double sectional_fiber(const WarpedModel& m, double t);

/// Ric_11 = -(n-1) eta''/eta.
double ricci_radial(const WarpedModel& m, double t);

/// Ric_aa = eta^{-2} Ric-bar_aa - ((log eta)'' + (n-1)((log eta)')^2).
double ricci_fiber(const WarpedModel& m, double t);

/// Radial Laplacian: f'' + (n-1)(log eta)' f'.
double radial_laplacian(const WarpedModel& m, const ScalarProfile& f, double t);

/// The explicit harmonic function f(t) = int_{t0}^t eta^{-(n-1)}, with
/// closed-form derivatives.
ScalarProfile harmonic_profile(const WarpedModel& m, double t0);

/// |grad f| = eta^{-(n-1)} for the harmonic profile.
double gradient_norm(const WarpedModel& m, double t);
/// Companion g = |grad f|^{(n-2)/(n-1)} = eta^{-(n-2)}.
double gradient_norm_power(const WarpedModel& m, double t);

/// Residual of the improved Bochner inequality at the harmonic profile:
/// Delta|grad f| + (n-1) tau |grad f| - |grad|grad f||^2 / ((n-1)|grad f|).
/// Vanishes exactly when tau = eta''/eta.
double bochner_residual(const WarpedModel& m, const ScalarProfile& tau, double t);

/// Level-set flux V_N eta^{n-1} |f'| for the harmonic profile (constant = V_N)
/// or for a supplied radial f. Full-line models only.
double level_flux(const WarpedModel& m, double t);
double level_flux(const WarpedModel& m, const ScalarProfile& f, double t);

}  // namespace wpi
