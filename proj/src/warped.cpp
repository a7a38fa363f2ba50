#include "wpi/warped.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace wpi {

namespace {

// Endpoint slope by Richardson forward differences when the analytic
// derivative is unavailable at the boundary itself.
double boundary_slope(const ScalarProfile& p, double t0) {
  if (p.derivative_mode() == DerivativeMode::analytic) return derivative(p, t0, 1);
  const double h = 1e-5 * std::max(1.0, std::abs(t0));
  return (4.0 * p(t0 + h) - p(t0 + 2.0 * h) - 3.0 * p(t0)) / (2.0 * h);
}

}  // namespace

WarpedModel make_warped_model(int n, DomainKind kind, ScalarProfile eta, FiberData fiber,
                              std::optional<ScalarProfile> log_eta) {
  if (n < 3) throw std::invalid_argument("WarpedModel: dimension must be >= 3");
  if (!(fiber.volume > 0.0)) throw std::invalid_argument("WarpedModel: fiber volume must be > 0");
  if (!eta.valid()) throw std::invalid_argument("WarpedModel: eta profile is empty");

  const Interval& dom = eta.domain();
  if (kind == DomainKind::pole_model) {
    if (std::abs(dom.lo) > 1e-12) {
      throw std::invalid_argument("pole model: domain must start at the pole t = 0");
    }
    const double eta0 = eta(0.0);
    const double deta0 = boundary_slope(eta, 0.0);
    if (std::abs(eta0) > 1e-9 || std::abs(deta0 - 1.0) > 1e-9) {
      std::ostringstream os;
      os << "pole model: need eta(0) = 0 and eta'(0) = 1, got eta(0) = " << eta0
         << ", eta'(0) = " << deta0;
      throw std::invalid_argument(os.str());
    }
  }

  // positivity spot check on the open interior
  const int probes = 64;
  const double margin = 1e-6 * std::max(1.0, dom.length());
  const double lo = dom.lo + (kind == DomainKind::pole_model ? margin : 0.0);
  for (int i = 0; i <= probes; ++i) {
    const double t = lo + (dom.hi - lo) * (i + 0.5) / (probes + 1);
    const double v = eta(t);
    if (!(v > 0.0)) {
      std::ostringstream os;
      os << "WarpedModel: eta not positive at t = " << t;
      throw std::invalid_argument(os.str());
    }
  }

  WarpedModel m;
  m.n = n;
  m.kind = kind;
  m.eta = std::move(eta);
  m.log_eta = std::move(log_eta);
  m.fiber = fiber;
  return m;
}

double log_eta_d1(const WarpedModel& m, double t) {
  if (m.log_eta) return derivative(*m.log_eta, t, 1);
  return derivative(m.eta, t, 1) / eval(m.eta, t);
}

double log_eta_d2(const WarpedModel& m, double t) {
  if (m.log_eta) return derivative(*m.log_eta, t, 2);
  const double v = eval(m.eta, t);
  const double d1 = derivative(m.eta, t, 1) / v;
  return derivative(m.eta, t, 2) / v - d1 * d1;
}

double eta_dd_over_eta(const WarpedModel& m, double t) {
  if (m.log_eta) {
    const double l1 = derivative(*m.log_eta, t, 1);
    return derivative(*m.log_eta, t, 2) + l1 * l1;
  }
  return derivative(m.eta, t, 2) / eval(m.eta, t);
}

ScalarProfile area_profile(const WarpedModel& m) {
  const double vn = m.fiber.volume;
  const double k = static_cast<double>(m.n - 1);
  if (m.log_eta) {
    const ScalarProfile L = *m.log_eta;
    auto val = [vn, k, L](double t) { return vn * std::exp(k * L(t)); };
    auto d1 = [vn, k, L](double t) {
      return vn * std::exp(k * L(t)) * k * derivative(L, t, 1);
    };
    auto d2 = [vn, k, L](double t) {
      const double l1 = derivative(L, t, 1);
      const double l2 = derivative(L, t, 2);
      return vn * std::exp(k * L(t)) * (k * l2 + k * k * l1 * l1);
    };
    return ScalarProfile::analytic(L.domain(), val, d1, d2);
  }
  const ScalarProfile eta = m.eta;
  auto val = [vn, k, eta](double t) { return vn * std::pow(eta(t), k); };
  auto d1 = [vn, k, eta](double t) {
    return vn * k * std::pow(eta(t), k - 1.0) * derivative(eta, t, 1);
  };
  auto d2 = [vn, k, eta](double t) {
    const double v = eta(t);
    const double e1 = derivative(eta, t, 1);
    const double e2 = derivative(eta, t, 2);
    return vn * k * ((k - 1.0) * std::pow(v, k - 2.0) * e1 * e1 + std::pow(v, k - 1.0) * e2);
  };
  return ScalarProfile::analytic(eta.domain(), val, d1, d2);
}

double sectional_radial(const WarpedModel& m, double t) {
  const double l1 = log_eta_d1(m, t);
  return -(log_eta_d2(m, t) + l1 * l1);
}

double sectional_fiber(const WarpedModel& m, double t) {
  if (!m.fiber.sectional) {
    throw std::invalid_argument("sectional_fiber: fiber sectional bound not configured");
  }
  const double l1 = log_eta_d1(m, t);
  const double v = eval(m.eta, t);
  return *m.fiber.sectional / (v * v) - l1 * l1;
}

double ricci_radial(const WarpedModel& m, double t) {
  return -(m.n - 1) * eta_dd_over_eta(m, t);
}

double ricci_fiber(const WarpedModel& m, double t) {
  if (!m.fiber.ricci_value) {
    throw std::invalid_argument("ricci_fiber: fiber Ricci value not configured");
  }
  const double v = eval(m.eta, t);
  const double l1 = log_eta_d1(m, t);
  return *m.fiber.ricci_value / (v * v) - (log_eta_d2(m, t) + (m.n - 1) * l1 * l1);
}

double radial_laplacian(const WarpedModel& m, const ScalarProfile& f, double t) {
  return derivative(f, t, 2) + (m.n - 1) * log_eta_d1(m, t) * derivative(f, t, 1);
}

ScalarProfile harmonic_profile(const WarpedModel& m, double t0) {
  const Interval dom = m.eta.domain();
  if (!dom.contains(t0)) throw std::domain_error("harmonic_profile: t0 outside domain");
  const WarpedModel model = m;  // profiles are cheap shared-function copies
  const double k = static_cast<double>(m.n - 1);
  auto integrand = [model, k](double s) {
    if (model.log_eta) return std::exp(-k * (*model.log_eta)(s));
    return std::pow(model.eta(s), -k);
  };
  auto val = [integrand, t0](double t) {
    return adaptive_simpson(integrand, t0, t, 1e-12);
  };
  auto d1 = [integrand](double t) { return integrand(t); };
  auto d2 = [model, integrand, k](double t) {
    return -k * integrand(t) * log_eta_d1(model, t);
  };
  return ScalarProfile::analytic(dom, val, d1, d2);
}

double gradient_norm(const WarpedModel& m, double t) {
  const double k = static_cast<double>(m.n - 1);
  if (m.log_eta) return std::exp(-k * eval(*m.log_eta, t));
  return std::pow(eval(m.eta, t), -k);
}

double gradient_norm_power(const WarpedModel& m, double t) {
  const double k = static_cast<double>(m.n - 2);
  if (m.log_eta) return std::exp(-k * eval(*m.log_eta, t));
  return std::pow(eval(m.eta, t), -k);
}

double bochner_residual(const WarpedModel& m, const ScalarProfile& tau, double t) {
  const double w = gradient_norm(m, t);
  if (!(w > 0.0) || !std::isfinite(w)) {
    throw std::domain_error("bochner_residual: |grad f| degenerate at t");
  }
  const double k = static_cast<double>(m.n - 1);
  const WarpedModel model = m;
  // w = eta^{-(n-1)} as a profile, derivatives through log eta
  auto wval = [model, k](double s) { return gradient_norm(model, s); };
  auto wd1 = [model, k, wval](double s) { return -k * log_eta_d1(model, s) * wval(s); };
  auto wd2 = [model, k, wval](double s) {
    const double l1 = log_eta_d1(model, s);
    const double l2 = log_eta_d2(model, s);
    return (k * k * l1 * l1 - k * l2) * wval(s);
  };
  ScalarProfile wprof = ScalarProfile::analytic(m.eta.domain(), wval, wd1, wd2);
  const double lap = radial_laplacian(m, wprof, t);
  const double dw = derivative(wprof, t, 1);
  return lap + k * eval(tau, t) * w - dw * dw / (k * w);
}

double level_flux(const WarpedModel& m, double t) {
  if (m.kind != DomainKind::full_line) {
    throw std::invalid_argument("level_flux: defined for full-line warped products");
  }
  const double k = static_cast<double>(m.n - 1);
  const double area_over_vn =
      m.log_eta ? std::exp(k * eval(*m.log_eta, t)) : std::pow(eval(m.eta, t), k);
  return m.fiber.volume * area_over_vn * gradient_norm(m, t);
}

double level_flux(const WarpedModel& m, const ScalarProfile& f, double t) {
  if (m.kind != DomainKind::full_line) {
    throw std::invalid_argument("level_flux: defined for full-line warped products");
  }
  const double k = static_cast<double>(m.n - 1);
  const double area_over_vn =
      m.log_eta ? std::exp(k * eval(*m.log_eta, t)) : std::pow(eval(m.eta, t), k);
  return m.fiber.volume * area_over_vn * std::abs(derivative(f, t, 1));
}

}  // namespace wpi
