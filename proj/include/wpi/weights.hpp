#pragma once

#include <string>

#include "wpi/profiles.hpp"
#include "wpi/warped.hpp"

namespace wpi {

enum class WeightSource {
  hardy,
  cartan_hadamard,
  green_model,
  minimal_extrinsic,
  natural_warp,
  user
};

/// Nonnegative weight for the weighted Poincare inequality.
struct WeightProfile {
  ScalarProfile rho;
  WeightSource source = WeightSource::user;
  Interval valid_region;       // where rho >= 0 was verified
  bool valid_as_weight = true; // nonnegative and not identically zero there
  std::string note;
};

/// rho(r) = (n-2)^2/4 * r^-2 on (0, inf). Requires n >= 3.
WeightProfile hardy_weight(int n);

/// rho(r) = (n-1)^2/4 + (n-1)^2/2 (coth r - 1) on (0, inf). Requires n >= 2.
WeightProfile cartan_hadamard_weight(int n);

/// rho = |grad G|^2 / (4 G^2) for the radial Green's function of the model,
/// normalization-free: rho(r) = A^{-2}(r) / (4 (int_r^inf A^{-1})^2).
/// Throws GreensFunctionError when int^inf A^{-1} diverges (parabolic model).
WeightProfile green_weight_model(const WarpedModel& m, const TailPolicy& policy = {});

/// rho = (n-2)^2/4 * rbar^-2 for a supplied extrinsic-distance profile.
WeightProfile minimal_weight(int n, const ScalarProfile& rbar);

/// rho = (n-2) eta''/eta; flagged invalid where eta'' <= 0 or rho == 0.
WeightProfile natural_weight(const WarpedModel& m);

/// Wraps a user rho; scans for negativity on a validation grid.
WeightProfile user_weight(ScalarProfile rho);

/// Superharmonic-certificate residual Delta h + rho h at t; a nonpositive
/// value certifies the weighted Poincare inequality locally.
double certificate_residual(const ScalarProfile& h, const WeightProfile& w,
                            const WarpedModel& m, double t);

}  // namespace wpi
