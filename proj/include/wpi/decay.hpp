#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wpi/profiles.hpp"
#include "wpi/rho_metric.hpp"
#include "wpi/warped.hpp"
#include "wpi/weights.hpp"

namespace wpi {

/// Model end [r0, T) with its weight, optional Schrodinger potential, and the
/// rho-distance table based at r0.
struct EndModel {
  WarpedModel model;
  WeightProfile weight;
  std::optional<ScalarProfile> potential;
  double r0 = 0.0;
  RhoDistanceTable rho_table;
};

EndModel make_end_model(WarpedModel model, WeightProfile weight,
                        std::optional<ScalarProfile> potential, double r0,
                        const GridSpec& table_grid, const TailPolicy& policy = {});

struct BVSpec {
  double f0 = 1.0;                   // f(r0)
  std::optional<double> r_far;       // far Dirichlet point; default r0 + 25
  bool decay_to_zero = true;         // far condition f -> 0 (at infinity when V = 0)
  double step = 1e-3;                // RK4 step for the shooting integrator
};

/// Nonnegative f solving (A f')' = V A f on the end. V = 0 uses the closed
/// quadrature f = int^inf A^{-1} (normalized); otherwise RK4 shooting with
/// bisection on f'(r0).
ScalarProfile solve_schrodinger_radial(const EndModel& e, const BVSpec& boundary,
                                       const TailPolicy& policy = {});

struct AnnulusSeries {
  std::vector<double> R_values;
  std::vector<double> integrals;  // I(R) = int over {r_rho in [R, R+width]} rho f^2 A
  double width = 1.0;
  double fitted_rate = 0.0;
  double fitted_C = 0.0;
  double fit_residual = 0.0;
};

/// rho-annulus integrals I(R_k), R_k = 0, 1, ..., up to R_max; annulus radii
/// from the inverse distance table.
AnnulusSeries annulus_integrals(const EndModel& e, const ScalarProfile& f, double R_max,
                                double width = 1.0);

struct GrowthReport {
  enum class Verdict { satisfied, boundary_theta, not_satisfied };
  std::vector<double> R_values;
  std::vector<double> G_values;  // G(R) = int_{E_rho(R)} rho f^2 e^{-2 r_rho} A
  std::vector<double> ratios;    // G(R)/R
  double trend = 0.0;            // d G/dR on the last quarter over G_end/R_end
  Verdict verdict = Verdict::not_satisfied;
  bool certificate_emitted = false;
  std::string caveat;
};

/// Horizon-qualified o(R) check of the growth condition.
GrowthReport growth_condition_check(const EndModel& e, const ScalarProfile& f, double R_max,
                                    int samples = 40);

struct DecayFit {
  double rate = 0.0;
  double C = 0.0;
  double residual = 0.0;
  int points = 0;
};

/// Least-squares line on (R, log I) within [R_lo, R_hi]; needs >= 4 positive
/// points. Under the decay hypotheses the fitted rate is <= -2 + tol.
DecayFit fit_decay_rate(const AnnulusSeries& s, double R_lo, double R_hi);

/// a = sqrt(lambda_1(E) - mu); throws std::invalid_argument when mu >= lambda.
double spectral_gap_rate(double lambda1_E, double mu);

}  // namespace wpi
