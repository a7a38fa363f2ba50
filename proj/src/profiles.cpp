#include "wpi/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wpi {

namespace {

double domain_slack(const Interval& d) {
  return 1e-9 * (1.0 + std::abs(d.lo) + std::abs(d.hi));
}

}  // namespace

bool Interval::contains(double t) const {
  const double slack = domain_slack(*this);
  const bool above_lo =
      lo_kind == EndpointKind::truncated_infinite ? true : t >= lo - slack;
  const bool below_hi =
      hi_kind == EndpointKind::truncated_infinite ? true : t <= hi + slack;
  return above_lo && below_hi;
}

ScalarProfile ScalarProfile::analytic(Interval domain, Fn value, Fn d1, Fn d2) {
  ScalarProfile p;
  p.domain_ = domain;
  p.value_ = std::move(value);
  p.d1_ = std::move(d1);
  p.d2_ = std::move(d2);
  return p;
}

ScalarProfile ScalarProfile::numeric(Interval domain, Fn value, double fd_step) {
  if (!(fd_step > 0.0)) throw std::invalid_argument("fd_step must be positive");
  ScalarProfile p;
  p.domain_ = domain;
  p.value_ = std::move(value);
  p.fd_step_ = fd_step;
  return p;
}

ScalarProfile ScalarProfile::from_samples(std::vector<double> t, std::vector<double> v) {
  auto slopes = pchip_slopes(t, v);
  auto series = std::make_shared<HermiteSeries>(std::move(t), std::move(v), std::move(slopes));
  Interval dom = Interval::closed(series->front(), series->back());
  ScalarProfile p;
  p.domain_ = dom;
  p.value_ = [series](double x) { return series->value(x); };
  p.d1_ = [series](double x) { return series->deriv(x); };
  p.d2_ = [series](double x) { return series->second(x); };
  return p;
}

double ScalarProfile::operator()(double t) const { return value_(t); }

double eval(const ScalarProfile& p, double t) {
  if (!p.valid()) throw std::domain_error("eval: profile has no evaluator");
  if (!p.domain_.contains(t)) {
    std::ostringstream os;
    os << "eval: t = " << t << " outside domain [" << p.domain_.lo << ", " << p.domain_.hi
       << "]";
    throw std::domain_error(os.str());
  }
  const double v = p.value_(t);
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os << "eval: non-finite value at t = " << t;
    throw std::domain_error(os.str());
  }
  return v;
}

double derivative(const ScalarProfile& p, double t, int order) {
  if (order != 1 && order != 2) {
    throw std::invalid_argument("derivative: order must be 1 or 2");
  }
  if (!p.domain_.contains(t)) throw std::domain_error("derivative: t outside domain");
  if (p.d1_) {
    return order == 1 ? p.d1_(t) : p.d2_(t);
  }
  const double h = p.fd_step_ * std::max(1.0, std::abs(t));
  const Interval& d = p.domain_;
  const bool lo_ok = d.lo_kind == EndpointKind::truncated_infinite || t - 2.0 * h >= d.lo;
  const bool hi_ok = d.hi_kind == EndpointKind::truncated_infinite || t + 2.0 * h <= d.hi;
  if (!lo_ok || !hi_ok) {
    throw std::domain_error("derivative: too close to the domain boundary for FD stencil");
  }
  if (order == 1) return (p.value_(t + h) - p.value_(t - h)) / (2.0 * h);
  return (p.value_(t + h) - 2.0 * p.value_(t) + p.value_(t - h)) / (h * h);
}

double integrate(const ScalarProfile& p, double a, double b, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("integrate: tol must be positive");
  if (!p.domain().contains(a) || !p.domain().contains(b)) {
    throw std::domain_error("integrate: limits outside profile domain");
  }
  return adaptive_simpson([&p](double t) { return p(t); }, a, b, tol);
}

namespace {

// Iterated Aitken delta-squared on the partial-integral sequence. Returns the
// best stable estimate and how much the last two stages moved.
bool aitken_extrapolate(const std::vector<double>& seq, double noise_floor, double* out,
                        double* stage_change) {
  if (seq.size() < 3) return false;
  std::vector<double> cur = seq;
  double prev_top = cur.back();
  bool any_stage = false;
  for (int stage = 0; stage < 12 && cur.size() >= 3; ++stage) {
    std::vector<double> next;
    next.reserve(cur.size() - 2);
    bool ok = true;
    for (std::size_t i = 0; i + 2 < cur.size(); ++i) {
      const double d1 = cur[i + 1] - cur[i];
      const double d2 = cur[i + 2] - cur[i + 1];
      const double den = d2 - d1;
      if (std::abs(den) <= noise_floor) {
        ok = false;
        break;
      }
      next.push_back(cur[i + 2] - d2 * d2 / den);
    }
    if (!ok || next.empty()) break;
    *stage_change = std::abs(next.back() - prev_top);
    prev_top = next.back();
    cur = std::move(next);
    any_stage = true;
  }
  if (!any_stage) return false;
  *out = prev_top;
  return true;
}

}  // namespace

TailResult improper_tail(const ScalarProfile& p, double a, const TailPolicy& policy) {
  TailResult res;
  const Interval& dom = p.domain();
  if (!dom.contains(a)) throw std::domain_error("improper_tail: start outside domain");
  const bool unbounded = dom.hi_kind == EndpointKind::truncated_infinite;
  const double hard_cap = unbounded ? policy.horizon_cap : std::min(policy.horizon_cap, dom.hi);

  double H = std::max(policy.horizon_start, 2.0 * std::abs(a));
  H = std::max(H, a + 1.0);
  H = std::min(H, hard_cap);

  auto fn = [&p](double t) { return p(t); };
  // overflowing nonnegative integrands are divergence, not quadrature failure
  auto overflow_probe = [&fn](double lo, double hi) {
    for (double s : {0.25, 0.5, 0.75}) {
      const double v = fn(lo + s * (hi - lo));
      if (!std::isfinite(v) || std::abs(v) > 1e100) return true;
    }
    return false;
  };
  double partial;
  try {
    partial = integrate_relative(fn, a, H, policy.quad_rel);
  } catch (const QuadratureError&) {
    if (overflow_probe(a, H)) {
      res.status = TailStatus::diverges;
      res.note = "integrand overflows before the first horizon";
      return res;
    }
    throw;
  }
  if (!std::isfinite(partial) || std::abs(partial) > 1e290) {
    res.status = TailStatus::diverges;
    res.note = "partial integral overflows before the first horizon";
    return res;
  }
  res.horizons.push_back(H);
  res.partials.push_back(partial);

  std::vector<double> increments;
  bool last_piece_clamped = false;
  int consecutive_small = 0;
  while (H < hard_cap) {
    const double H_next = std::min(2.0 * H, hard_cap);
    last_piece_clamped = H_next < 2.0 * H;
    double inc;
    try {
      inc = integrate_relative(fn, H, H_next, policy.quad_rel);
    } catch (const QuadratureError&) {
      if (overflow_probe(H, H_next)) {
        res.status = TailStatus::diverges;
        res.note = "integrand overflows along the tail";
        return res;
      }
      throw;
    }
    if (!std::isfinite(inc) || std::abs(inc) > 1e290) {
      res.status = TailStatus::diverges;
      res.note = "partial integral overflows along the tail";
      return res;
    }
    H = H_next;
    partial += inc;
    res.horizons.push_back(H);
    res.partials.push_back(partial);
    increments.push_back(inc);

    const double scale = std::max(std::abs(partial), 1e-300);
    if (std::abs(inc) <= policy.rel_tol * scale) {
      if (++consecutive_small >= 2) break;
    } else {
      consecutive_small = 0;
    }
  }

  const double scale = std::max(std::abs(partial), 1e-300);
  const double noise_floor = 20.0 * policy.quad_rel * scale;

  // a cap-clamped final piece spans less than a doubling and would corrupt
  // the geometric pattern the extrapolation relies on; the limit of the
  // unclamped prefix already accounts for the whole tail
  std::vector<double> extrap_input = res.partials;
  if (last_piece_clamped && extrap_input.size() > 3) extrap_input.pop_back();

  if (consecutive_small >= 2) {
    res.status = TailStatus::converges;
    double extrapolated = partial, moved = 0.0;
    if (aitken_extrapolate(extrap_input, noise_floor, &extrapolated, &moved)) {
      res.value = extrapolated;
    } else {
      res.value = partial;
    }
    res.note = "converged: successive horizon doublings below rel_tol";
    return res;
  }

  // keep the clamped piece out of the increment-ratio classification as well
  std::vector<double> full = increments;
  if (last_piece_clamped && !full.empty()) full.pop_back();
  if (full.size() < 3) {
    res.status = TailStatus::inconclusive;
    res.note = "horizon too short to classify";
    return res;
  }

  bool all_positive = true;
  for (double inc : full) all_positive = all_positive && inc > 0.0;
  const double first = full.front();
  const double last = full.back();

  if (all_positive && last >= policy.decay_floor * first) {
    res.status = TailStatus::diverges;
    res.note = "partial integrals grow without slowing across the horizon sweep";
    return res;
  }

  if (all_positive && last <= policy.extrap_gate * first) {
    double extrapolated = 0.0, moved = 0.0;
    if (aitken_extrapolate(extrap_input, noise_floor, &extrapolated, &moved) &&
        moved <= policy.extrap_rel_tol * std::max(std::abs(extrapolated), 1e-300) &&
        extrapolated >= partial - 10.0 * noise_floor) {
      res.status = TailStatus::converges;
      res.value = extrapolated;
      res.note = "converged by tail extrapolation at the horizon cap";
      return res;
    }
  }

  res.status = TailStatus::inconclusive;
  res.note = "neither convergence nor divergence certified on this horizon";
  return res;
}

std::vector<double> make_grid(const GridSpec& grid) {
  if (grid.node_count < 3) throw std::invalid_argument("GridSpec: node_count must be >= 3");
  const double a = grid.interval.lo, b = grid.interval.hi;
  if (!(a < b)) throw std::invalid_argument("GridSpec: interval must have a < b");
  if (!(grid.ratio > 0.0)) throw std::invalid_argument("GridSpec: geometric ratio must be > 0");
  const int n = grid.node_count;
  std::vector<double> nodes(static_cast<std::size_t>(n));
  nodes.front() = a;
  nodes.back() = b;
  if (grid.grading == GridSpec::Grading::uniform || grid.ratio == 1.0) {
    const double h = (b - a) / (n - 1);
    for (int i = 1; i + 1 < n; ++i) nodes[static_cast<std::size_t>(i)] = a + i * h;
    return nodes;
  }
  // spacing h_k = h0 * ratio^k; h0 fixed by the interval length
  const double q = grid.ratio;
  const double h0 = (b - a) * (1.0 - q) / (1.0 - std::pow(q, n - 1));
  double x = a, h = h0;
  for (int i = 1; i + 1 < n; ++i) {
    x += h;
    h *= q;
    nodes[static_cast<std::size_t>(i)] = x;
  }
  return nodes;
}

ScalarProfile profile_constant(double c, Interval domain) {
  return ScalarProfile::analytic(
      domain, [c](double) { return c; }, [](double) { return 0.0; },
      [](double) { return 0.0; });
}

ScalarProfile profile_identity(Interval domain) {
  return ScalarProfile::analytic(
      domain, [](double t) { return t; }, [](double) { return 1.0; },
      [](double) { return 0.0; });
}

ScalarProfile profile_linear(double intercept, double slope, Interval domain) {
  return ScalarProfile::analytic(
      domain, [=](double t) { return intercept + slope * t; },
      [slope](double) { return slope; }, [](double) { return 0.0; });
}

ScalarProfile profile_power(double coeff, double exponent, Interval domain) {
  return ScalarProfile::analytic(
      domain, [=](double t) { return coeff * std::pow(t, exponent); },
      [=](double t) { return coeff * exponent * std::pow(t, exponent - 1.0); },
      [=](double t) { return coeff * exponent * (exponent - 1.0) * std::pow(t, exponent - 2.0); });
}

ScalarProfile profile_exp(double rate, double coeff, Interval domain) {
  return ScalarProfile::analytic(
      domain, [=](double t) { return coeff * std::exp(rate * t); },
      [=](double t) { return coeff * rate * std::exp(rate * t); },
      [=](double t) { return coeff * rate * rate * std::exp(rate * t); });
}

ScalarProfile profile_cosh(Interval domain) {
  return ScalarProfile::analytic(
      domain, [](double t) { return std::cosh(t); }, [](double t) { return std::sinh(t); },
      [](double t) { return std::cosh(t); });
}

ScalarProfile profile_sinh(Interval domain) {
  return ScalarProfile::analytic(
      domain, [](double t) { return std::sinh(t); }, [](double t) { return std::cosh(t); },
      [](double t) { return std::sinh(t); });
}

ScalarProfile profile_log_cosh(Interval domain) {
  auto val = [](double t) {
    const double a = std::abs(t);
    return a + std::log1p(std::exp(-2.0 * a)) - std::log(2.0);
  };
  auto d1 = [](double t) { return std::tanh(t); };
  auto d2 = [](double t) {
    const double th = std::tanh(t);
    return 1.0 - th * th;
  };
  return ScalarProfile::analytic(domain, val, d1, d2);
}

ScalarProfile profile_log_sinh(Interval domain) {
  auto val = [](double t) { return t + std::log1p(-std::exp(-2.0 * t)) - std::log(2.0); };
  auto d1 = [](double t) { return 1.0 / std::tanh(t); };
  auto d2 = [](double t) {
    const double c = 1.0 / std::tanh(t);
    return 1.0 - c * c;
  };
  return ScalarProfile::analytic(domain, val, d1, d2);
}

}  // namespace wpi
