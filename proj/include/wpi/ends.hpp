#pragma once

#include <string>
#include <vector>

#include "wpi/profiles.hpp"
#include "wpi/rho_metric.hpp"
#include "wpi/weights.hpp"

namespace wpi {

/// An end described by its boundary-area profile A_E(r) > 0 on [r0, inf).
struct EndProfile {
  ScalarProfile area;
  double r0 = 1.0;
  std::string label;
};

struct Classification {
  enum class Status { parabolic, nonparabolic, inconclusive };
  Status status = Status::inconclusive;
  TailResult evidence;  // tail of A^{-1}
};

/// nonparabolic iff int^inf A_E^{-1} < inf; three-valued since a finite sweep
/// cannot always decide.
Classification classify_end(const EndProfile& e, const TailPolicy& policy = {});

struct VolumeGrowthReport {
  std::vector<double> R_values;
  std::vector<double> ratios;   // V_E(R)/R^2
  double infimum = 0.0;
  double trend_exponent = 0.0;  // fitted exponent of V/R^2 on the outer decade
  bool pass = false;            // inf V_E(R)/R^2 bounded away from 0 on horizon
};

/// Quadratic-volume-growth check for nonparabolic ends.
VolumeGrowthReport volume_growth_check(const EndProfile& e, double R_max, int samples = 48);

struct ExponentialBoundsReport {
  std::string branch;  // "nonparabolic" or "parabolic"
  // nonparabolic branch: J(R) = int_{r_rho in [R, R+1]} rho A, fitted slope of log J
  std::vector<double> R_values;
  std::vector<double> J_values;
  double slope = 0.0;
  double C = 0.0;
  bool pass = false;
  // parabolic branch: total int_E rho A and tail T(R) with fitted slope
  double total = 0.0;
  std::vector<double> tail_values;
  double tail_slope = 0.0;
};

/// Exponential weight-integral bounds: slope >= 2 - tol on nonparabolic ends,
/// finite total + tail slope <= -2 + tol on parabolic ends.
ExponentialBoundsReport weight_integral_bounds(const EndProfile& e, const WeightProfile& w,
                                         const RhoDistanceTable& table,
                                         Classification::Status status, double R_lo,
                                         double R_hi, double tol = 0.02,
                                         const TailPolicy& policy = {});

}  // namespace wpi
