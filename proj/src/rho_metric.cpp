#include "wpi/rho_metric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wpi {

RhoDistanceTable::RhoDistanceTable(double r0, HermiteSeries signed_distance,
                                   CompletenessVerdict upper, CompletenessVerdict lower)
    : r0_(r0), s_(std::move(signed_distance)), upper_(upper), lower_(lower) {}

double RhoDistanceTable::min_signed() const { return s_.values().front(); }
double RhoDistanceTable::max_signed() const { return s_.values().back(); }

double RhoDistanceTable::signed_distance(double r) const {
  if (r < s_.front() - 1e-9 || r > s_.back() + 1e-9) {
    throw std::out_of_range("RhoDistanceTable: r outside the tabulated range");
  }
  return s_.value(std::clamp(r, s_.front(), s_.back()));
}

double RhoDistanceTable::rho_distance(double r) const { return std::abs(signed_distance(r)); }

double RhoDistanceTable::distance_derivative(double r) const { return s_.deriv(r); }

double RhoDistanceTable::inverse(double s) const { return s_.inverse(s); }

namespace {

ScalarProfile sqrt_rho_profile(const WeightProfile& w) {
  const ScalarProfile rho = w.rho;
  auto val = [rho](double t) { return std::sqrt(std::max(rho(t), 0.0)); };
  return ScalarProfile::numeric(rho.domain(), val);
}

ScalarProfile reflected(const ScalarProfile& p) {
  const ScalarProfile q = p;
  Interval dom{-p.domain().hi, -p.domain().lo, p.domain().hi_kind, p.domain().lo_kind};
  return ScalarProfile::numeric(dom, [q](double t) { return q(-t); });
}

}  // namespace

CompletenessVerdict completeness_check(const WeightProfile& w, EndSelector end,
                                       const TailPolicy& policy) {
  CompletenessVerdict v;
  ScalarProfile sq = sqrt_rho_profile(w);
  const Interval dom = sq.domain();
  const EndpointKind kind = end == EndSelector::upper ? dom.hi_kind : dom.lo_kind;
  if (kind == EndpointKind::finite) {
    // nothing at infinity along this end; the rho-length to the boundary is finite
    v.status = CompletenessVerdict::Status::complete;
    v.evidence.note = "finite end: no infinite ray to test";
    return v;
  }
  ScalarProfile probe = end == EndSelector::upper ? sq : reflected(sq);
  const double start =
      end == EndSelector::upper ? std::max(dom.lo, 0.0) + 1.0 : std::max(-dom.hi, 0.0) + 1.0;
  v.evidence = improper_tail(probe, start, policy);
  switch (v.evidence.status) {
    case TailStatus::diverges:
      v.status = CompletenessVerdict::Status::complete;
      break;
    case TailStatus::converges:
      v.status = CompletenessVerdict::Status::incomplete;
      break;
    case TailStatus::inconclusive:
      v.status = CompletenessVerdict::Status::inconclusive;
      break;
  }
  return v;
}

RhoDistanceTable build_rho_distance(const WeightProfile& w, double r0, const GridSpec& grid,
                                    const TailPolicy& policy) {
  std::vector<double> nodes = make_grid(grid);
  if (!(r0 >= nodes.front() - 1e-12 && r0 <= nodes.back() + 1e-12)) {
    throw std::domain_error("build_rho_distance: r0 outside the grid interval");
  }
  const ScalarProfile sq = sqrt_rho_profile(w);

  std::vector<double> slope(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) slope[i] = sq(nodes[i]);

  std::vector<double> cum(nodes.size(), 0.0);
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    const double piece = integrate_relative([&sq](double t) { return sq(t); }, nodes[i - 1],
                                            nodes[i], 1e-12);
    cum[i] = cum[i - 1] + piece;
  }
  // shift so the base point sits at distance zero
  double at_r0;
  {
    HermiteSeries pre(nodes, cum, slope);
    at_r0 = pre.value(r0);
  }
  for (double& c : cum) c -= at_r0;

  // the Hermite inverse needs strictly increasing values; nudge flat spots by
  // a sub-tolerance amount (only happens where rho == 0)
  for (std::size_t i = 1; i < cum.size(); ++i) {
    if (!(cum[i] > cum[i - 1])) cum[i] = cum[i - 1] + 1e-300;
  }

  CompletenessVerdict upper = completeness_check(w, EndSelector::upper, policy);
  CompletenessVerdict lower = completeness_check(w, EndSelector::lower, policy);
  return RhoDistanceTable(r0, HermiteSeries(std::move(nodes), std::move(cum), std::move(slope)),
                          upper, lower);
}

double sup_sqrt_rho(const RhoDistanceTable& table, const WeightProfile& w, double R) {
  if (R < 0.0) throw std::out_of_range("sup_sqrt_rho: R must be >= 0");
  if (R > std::max(std::abs(table.min_signed()), std::abs(table.max_signed())) + 1e-12) {
    throw std::out_of_range("sup_sqrt_rho: R beyond the tabulated rho-range");
  }
  const double lo_s = std::max(-R, table.min_signed());
  const double hi_s = std::min(R, table.max_signed());
  const double r_lo = table.inverse(lo_s);
  const double r_hi = table.inverse(hi_s);

  const ScalarProfile rho = w.rho;
  auto sq = [&rho](double r) { return std::sqrt(std::max(rho(r), 0.0)); };

  const int scan = 512;
  double best = 0.0, best_r = r_lo;
  for (int i = 0; i <= scan; ++i) {
    const double r = r_lo + (r_hi - r_lo) * i / scan;
    const double v = sq(r);
    if (v > best) {
      best = v;
      best_r = r;
    }
  }
  // local refinement by ternary search around the best sample
  double a = std::max(r_lo, best_r - (r_hi - r_lo) / scan);
  double b = std::min(r_hi, best_r + (r_hi - r_lo) / scan);
  for (int it = 0; it < 60 && b - a > 1e-14 * (1.0 + std::abs(a)); ++it) {
    const double m1 = a + (b - a) / 3.0;
    const double m2 = b - (b - a) / 3.0;
    if (sq(m1) < sq(m2)) {
      a = m1;
    } else {
      b = m2;
    }
  }
  return std::max(best, sq(0.5 * (a + b)));
}

double radius_for_rho_distance(const WeightProfile& w, double r0, double target,
                               double hi_cap) {
  if (!(target > 0.0)) return r0;
  const ScalarProfile sq = sqrt_rho_profile(w);
  auto fn = [&sq](double t) { return sq(t); };
  double lo = r0, hi = r0 + 1.0;
  double acc = 0.0;
  for (int it = 0; it < 200; ++it) {
    if (hi > hi_cap) throw SolverError("radius_for_rho_distance: target beyond the cap");
    const double piece = adaptive_simpson(fn, lo, hi, 1e-12);
    if (acc + piece >= target) {
      // bisect inside [lo, hi]
      double a = lo, b = hi;
      for (int j = 0; j < 80; ++j) {
        const double mid = 0.5 * (a + b);
        const double part = adaptive_simpson(fn, lo, mid, 1e-12);
        (acc + part >= target ? b : a) = mid;
      }
      return 0.5 * (a + b);
    }
    acc += piece;
    lo = hi;
    hi = r0 + 2.0 * (hi - r0);
  }
  throw SolverError("radius_for_rho_distance: did not reach the target distance");
}

CriterionReport growth_criterion(const RhoDistanceTable& table, const WeightProfile& w,
                                 int n, double R_max, int samples,
                                 double threshold_fraction) {
  if (n < 3) throw std::invalid_argument("growth_criterion: n >= 3");
  if (samples < 4) throw std::invalid_argument("growth_criterion: too few samples");
  CriterionReport rep;
  auto gauge = [n](double R) {
    return n >= 4 ? std::exp((n - 3.0) / (n - 2.0) * R) : R;
  };
  double running = 0.0;
  for (int k = 1; k <= samples; ++k) {
    const double R = R_max * k / samples;
    const double S = sup_sqrt_rho(table, w, R);
    const double F = gauge(R);
    const double ratio = S / F;
    rep.R_values.push_back(R);
    rep.S_values.push_back(S);
    rep.gauge_values.push_back(F);
    rep.ratios.push_back(ratio);
    running = k == 1 ? ratio : std::min(running, ratio);
  }
  rep.running_min = running;
  rep.threshold = threshold_fraction * rep.ratios.front();
  rep.satisfied_on_horizon = rep.running_min < rep.threshold;
  rep.caveat =
      "horizon-qualified: a finite sweep bounds liminf S(R)/F(R) only up to R_max";
  return rep;
}

}  // namespace wpi
