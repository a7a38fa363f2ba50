#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wpi/ends.hpp"
#include "wpi/profiles.hpp"
#include "wpi/rho_metric.hpp"
#include "wpi/warped.hpp"
#include "wpi/weights.hpp"

namespace wpi {

/// Initial-value data for eta'' = tau eta, marched from domain.lo.
struct WarpBuilder {
  ScalarProfile tau;
  double eta0 = 1.0;
  double deta0 = 0.0;
  Interval domain;
  double step = 1e-3;
};

/// Classical 4th-order integration of eta'' = tau eta; global error O(step^4).
/// Throws ZeroCrossingError if eta reaches zero.
ScalarProfile integrate_warp(const WarpBuilder& b);

struct ConditionVerdict {
  bool holds = false;
  double margin = 0.0;  // min of the checked quantity over the grid
  std::optional<double> violating_t;
};

struct RigidityReport {
  ConditionVerdict convexity_condition;  // eta'' > 0
  ConditionVerdict fiber_ricci_condition;  // (n-2)(log eta)'' + eta^{-2} Ric_N >= 0
  std::optional<double> liminf_rho;
  std::map<std::string, double> residuals;
};

/// Grid verification of the warped-product weight conditions; when both hold
/// also checks the identity Ric_11 = -(n-1)/(n-2) rho.
RigidityReport condition_check(const WarpedModel& m, int grid_points = 512);

struct CoshPowerWarping {
  WarpedModel model;
  WeightProfile weight;
  RigidityReport report;
  ScalarProfile u;           // odd C^2 profile with eta = cosh(u)
  double fitted_exponent = 0.0;
  double expected_exponent = 0.0;  // 2 alpha - 2
};

/// eta = cosh(u), u the odd extension of {C1 t, C1 t^alpha} blended C^2 on
/// [1 - delta, 1 + delta]. Requires C1 > sqrt(C/(n-2)), alpha >= 1, n >= 3.
CoshPowerWarping cosh_power_warping(double alpha, double c1, double big_c, int n,
                             double t_max = 120.0, double blend_halfwidth = 0.1);

struct LiminfReport {
  bool conditions_ok = false;
  bool nonparabolic = false;
  double liminf_estimate = 0.0;  // min of rho over the outer half of the horizon
  bool positive_margin = false;
  bool t_rho_integrable = false;        // int t rho(t) dt < inf
  bool sqrt_rho_tail_converges = false; // int sqrt(rho) < inf
  CompletenessVerdict::Status rho_metric_complete = CompletenessVerdict::Status::inconclusive;
  std::string narrative;
};

/// Horizon estimate of liminf rho on the selected end, plus the
/// incompleteness dichotomy: integrable t*rho forces an incomplete rho-metric.
LiminfReport end_liminf_check(const WarpedModel& m, const WeightProfile& w,
                              EndSelector end = EndSelector::upper,
                              const TailPolicy& policy = {});

struct ComparisonReport {
  bool hypothesis_ok = false;       // (rho^{-1/4})'' >= 0 on the grid
  double hypothesis_margin = 0.0;
  double inequality_margin = 0.0;   // min of g'' - 4/(n-1)^2 rho g (scaled)
  double inequality_max = 0.0;      // max of the same scaled residual
  bool inequality_ok = false;
  bool rho_bounded_trend = false;
  bool consistent = false;          // hypothesis + bounded conclusion
  bool nonexistence_flag = false;   // hypothesis holds but rho unbounded
  std::string narrative;
};

/// Comparison-function check for weight boundedness:
/// g = rho^{-1/4} exp(2 r_rho/(n-1)) must satisfy g'' >= 4/(n-1)^2 rho g.
ComparisonReport comparison_function_check(const WeightProfile& w, int n, double r0,
                                      const RhoDistanceTable& table, int grid_points = 400);

struct ResidualReport {
  double identity_max = 0.0;   // |Delta g - radial identity| sup over grid
  double residual_max = 0.0;   // |Delta g + rho g| sup over grid
  bool rho_constant = false;
  double rho_value = 0.0;      // mean of rho (meaningful when constant)
  bool log_eta_affine = false;
  double log_eta_slope = 0.0;  // measured c with eta ~ e^{ct}
  bool fiber_ricci_nonnegative = false;
  bool rigid_case = false;
  std::string narrative;
};

/// Rigid-case residual for g = eta^{-(n-1)/2}: verifies the radial identity
/// Delta g = -(n-1)/2 (eta''/eta) g - (n-1)(n-3)/4 ((log eta)')^2 g, then
/// tests Delta g + rho g = 0, rho constant, and log eta affine.
ResidualReport rigid_case_residual(const WarpedModel& m, const WeightProfile& w,
                                  int grid_points = 256);

}  // namespace wpi
