#include "wpi/weights.hpp"

#include <cmath>
#include <memory>
#include <sstream>

#include "wpi/errors.hpp"

namespace wpi {

namespace {

// Nonnegativity scan; shrinks the valid region to the widest clean stretch
// and clears the flag if rho is negative or identically zero there.
void validate_weight(WeightProfile& w, int probes = 256) {
  const Interval dom = w.rho.domain();
  const double margin = 1e-9 * std::max(1.0, std::abs(dom.lo) + std::abs(dom.hi));
  double lo = dom.lo + margin, hi = dom.hi - margin;
  if (!(lo < hi)) {
    lo = dom.lo;
    hi = dom.hi;
  }
  double max_abs = 0.0;
  bool nonneg = true;
  double first_bad = hi;
  for (int i = 0; i <= probes; ++i) {
    const double t = lo + (hi - lo) * i / probes;
    double v;
    try {
      v = w.rho(t);
    } catch (const std::exception&) {
      continue;
    }
    if (!std::isfinite(v)) continue;
    max_abs = std::max(max_abs, std::abs(v));
    if (v < -1e-12 * (1.0 + max_abs)) {
      nonneg = false;
      first_bad = std::min(first_bad, t);
    }
  }
  w.valid_region = dom;
  if (!nonneg) {
    w.valid_as_weight = false;
    std::ostringstream os;
    os << "rho negative near t = " << first_bad;
    w.note = os.str();
  } else if (max_abs == 0.0) {
    w.valid_as_weight = false;
    w.note = "rho identically zero on the sampled region";
  }
}

}  // namespace

WeightProfile hardy_weight(int n) {
  if (n < 3) throw std::invalid_argument("hardy_weight: needs dimension n >= 3");
  const double c = 0.25 * (n - 2) * (n - 2);
  WeightProfile w;
  w.rho = profile_power(c, -2.0, Interval::ray(0.0, 1e9));
  w.source = WeightSource::hardy;
  validate_weight(w);
  return w;
}

WeightProfile cartan_hadamard_weight(int n) {
  if (n < 2) throw std::invalid_argument("cartan_hadamard_weight: needs n >= 2");
  const double c4 = 0.25 * (n - 1) * (n - 1);
  const double c2 = 0.5 * (n - 1) * (n - 1);
  auto coth = [](double r) { return 1.0 / std::tanh(r); };
  auto val = [=](double r) { return c4 + c2 * (coth(r) - 1.0); };
  auto d1 = [=](double r) {
    const double s = std::sinh(r);
    return -c2 / (s * s);
  };
  auto d2 = [=](double r) {
    const double s = std::sinh(r);
    return 2.0 * c2 * std::cosh(r) / (s * s * s);
  };
  WeightProfile w;
  w.rho = ScalarProfile::analytic(Interval::ray(0.0, 1e9), val, d1, d2);
  w.source = WeightSource::cartan_hadamard;
  validate_weight(w);
  return w;
}

WeightProfile green_weight_model(const WarpedModel& m, const TailPolicy& policy) {
  const ScalarProfile A = area_profile(m);
  auto inv_area = [A](double r) { return 1.0 / A(r); };
  const Interval dom = A.domain();
  ScalarProfile inv_profile = ScalarProfile::analytic(
      dom, inv_area, [A](double r) { return -derivative(A, r, 1) / (A(r) * A(r)); },
      [A](double r) {
        const double v = A(r);
        const double a1 = derivative(A, r, 1);
        const double a2 = derivative(A, r, 2);
        return (2.0 * a1 * a1 / v - a2) / (v * v);
      });

  const double probe = std::max(dom.lo + 1e-3 * std::max(1.0, dom.length()), 1.0);
  TailResult tail = improper_tail(inv_profile, probe, policy);
  if (tail.status != TailStatus::converges) {
    throw GreensFunctionError(
        "green_weight_model: int^inf A^{-1} does not converge, the model end is parabolic "
        "and carries no positive Green's function");
  }

  // rho(r) = A^{-2} / (4 T^2), T(r) = int_r^inf A^{-1}; independent of any
  // Green's-function normalization. T is evaluated by a fresh tail probe per
  // point so no catastrophic cancellation enters at large r.
  auto tail_at = [inv_profile, policy](double r) {
    TailResult t = improper_tail(inv_profile, r, policy);
    if (t.status != TailStatus::converges) {
      throw GreensFunctionError("green_weight_model: tail integral failed to converge");
    }
    return t.value;
  };
  auto log_d1 = [A, tail_at](double r) {
    const double T = tail_at(r);
    return -2.0 * derivative(A, r, 1) / A(r) + 2.0 / (A(r) * T);
  };
  auto val = [A, tail_at](double r) {
    const double T = tail_at(r);
    const double a = A(r);
    return 1.0 / (4.0 * a * a * T * T);
  };
  auto d1 = [val, log_d1](double r) { return val(r) * log_d1(r); };
  auto d2 = [A, tail_at, val, log_d1](double r) {
    const double a = A(r);
    const double a1 = derivative(A, r, 1);
    const double a2 = derivative(A, r, 2);
    const double T = tail_at(r);
    const double l1 = log_d1(r);
    const double l2 = -2.0 * (a2 / a - a1 * a1 / (a * a)) - 2.0 * (a1 * T - 1.0) / (a * a * T * T);
    return val(r) * (l2 + l1 * l1);
  };

  Interval rho_dom = dom;
  if (m.kind == DomainKind::pole_model) rho_dom.lo = 0.0;
  WeightProfile w;
  w.rho = ScalarProfile::analytic(rho_dom, val, d1, d2);
  w.source = WeightSource::green_model;
  w.valid_region = rho_dom;
  w.valid_as_weight = true;
  return w;
}

WeightProfile minimal_weight(int n, const ScalarProfile& rbar) {
  if (n < 3) throw std::invalid_argument("minimal_weight: needs dimension n >= 3");
  const double c = 0.25 * (n - 2) * (n - 2);
  const ScalarProfile rb = rbar;
  auto val = [c, rb](double t) {
    const double r = rb(t);
    if (!(r > 0.0)) throw std::domain_error("minimal_weight: extrinsic distance must be > 0");
    return c / (r * r);
  };
  auto d1 = [c, rb](double t) {
    const double r = rb(t);
    return -2.0 * c * derivative(rb, t, 1) / (r * r * r);
  };
  auto d2 = [c, rb](double t) {
    const double r = rb(t);
    const double r1 = derivative(rb, t, 1);
    const double r2 = derivative(rb, t, 2);
    return c * (6.0 * r1 * r1 - 2.0 * r * r2) / (r * r * r * r);
  };
  WeightProfile w;
  w.rho = ScalarProfile::analytic(rbar.domain(), val, d1, d2);
  w.source = WeightSource::minimal_extrinsic;
  validate_weight(w);
  return w;
}

WeightProfile natural_weight(const WarpedModel& m) {
  const WarpedModel model = m;
  const double c = static_cast<double>(m.n - 2);
  auto val = [model, c](double t) { return c * eta_dd_over_eta(model, t); };
  WeightProfile w;
  w.rho = ScalarProfile::numeric(m.eta.domain(), val);
  w.source = WeightSource::natural_warp;
  validate_weight(w);
  if (!w.valid_as_weight && w.note.empty()) {
    w.note = "eta'' <= 0 somewhere: natural weight invalid there";
  } else if (!w.valid_as_weight) {
    w.note += " (eta'' <= 0: condition for the natural weight fails)";
  }
  return w;
}

WeightProfile user_weight(ScalarProfile rho) {
  WeightProfile w;
  w.rho = std::move(rho);
  w.source = WeightSource::user;
  validate_weight(w);
  return w;
}

double certificate_residual(const ScalarProfile& h, const WeightProfile& w,
                            const WarpedModel& m, double t) {
  const double hv = eval(h, t);
  if (!(hv > 0.0)) throw std::domain_error("certificate_residual: h must be positive at t");
  return radial_laplacian(m, h, t) + eval(w.rho, t) * hv;
}

}  // namespace wpi
