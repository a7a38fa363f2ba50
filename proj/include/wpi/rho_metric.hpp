#pragma once

#include <vector>

#include "wpi/profiles.hpp"
#include "wpi/weights.hpp"

namespace wpi {

enum class EndSelector { upper, lower };

struct CompletenessVerdict {
  enum class Status { complete, incomplete, inconclusive };
  Status status = Status::inconclusive;
  TailResult evidence;  // tail of sqrt(rho) toward the selected end
};

/// Monotone table r -> r_rho(r) = int_{r0}^r sqrt(rho), with inverse lookup.
/// Node slopes are sqrt(rho) exactly, so the interpolant's derivative matches
/// the defining ODE at every node.
class RhoDistanceTable {
public:
  RhoDistanceTable() = default;
  RhoDistanceTable(double r0, HermiteSeries signed_distance,
                   CompletenessVerdict upper, CompletenessVerdict lower);

  double base() const { return r0_; }
  double range_lo() const { return s_.front(); }
  double range_hi() const { return s_.back(); }
  double min_signed() const;
  double max_signed() const;

  /// Signed rho-coordinate: negative below the base point.
  double signed_distance(double r) const;
  /// rho-distance |signed_distance|.
  double rho_distance(double r) const;
  /// d r_rho / dr of the table (should equal sqrt(rho)).
  double distance_derivative(double r) const;
  /// r with signed_distance(r) = s; throws std::out_of_range beyond the table.
  double inverse(double s) const;

  const CompletenessVerdict& completeness(EndSelector end) const {
    return end == EndSelector::upper ? upper_ : lower_;
  }
  const std::vector<double>& grid() const { return s_.nodes(); }
  const std::vector<double>& distances() const { return s_.values(); }

private:
  double r0_ = 0.0;
  HermiteSeries s_;
  CompletenessVerdict upper_, lower_;
};

/// Cumulative quadrature of sqrt(rho) over the grid, plus per-end
/// completeness verdicts from improper_tail(sqrt(rho)).
RhoDistanceTable build_rho_distance(const WeightProfile& w, double r0, const GridSpec& grid,
                                    const TailPolicy& policy = {});

/// complete iff int^inf sqrt(rho) diverges toward the selected end.
CompletenessVerdict completeness_check(const WeightProfile& w, EndSelector end,
                                       const TailPolicy& policy = {});

/// S(R) = sup of sqrt(rho) over the rho-ball {r_rho <= R}, by grid scan with
/// local refinement.
double sup_sqrt_rho(const RhoDistanceTable& table, const WeightProfile& w, double R);

/// Smallest r >= r0 with int_{r0}^r sqrt(rho) >= target, by doubling then
/// bisection; capped at hi_cap (throws SolverError when unreachable).
double radius_for_rho_distance(const WeightProfile& w, double r0, double target,
                               double hi_cap = 1e9);

struct CriterionReport {
  std::vector<double> R_values;
  std::vector<double> S_values;
  std::vector<double> gauge_values;  // F(R)
  std::vector<double> ratios;        // S/F
  double running_min = 0.0;
  double threshold = 0.0;            // pass bar: threshold_fraction * first ratio
  bool satisfied_on_horizon = false;
  std::string caveat;
};

/// Samples S(R)/F(R) up to R_max, F(R) = exp((n-3)/(n-2) R) for n >= 4 and
/// F(R) = R for n = 3. The verdict is horizon-qualified: a finite sweep can
/// not certify a liminf.
CriterionReport growth_criterion(const RhoDistanceTable& table, const WeightProfile& w,
                                 int n, double R_max, int samples = 64,
                                 double threshold_fraction = 0.01);

}  // namespace wpi
