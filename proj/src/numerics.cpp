#include "wpi/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wpi/errors.hpp"

namespace wpi {

namespace {

double simpson(double fa, double fm, double fb, double h) {
  return h / 6.0 * (fa + 4.0 * fm + fb);
}

double simpson_adapt(const RealFn& f, double a, double fa, double m, double fm, double b,
                     double fb, double whole, double tol, int depth, int depth_cap) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol && std::isfinite(delta)) {
    return left + right + delta / 15.0;
  }
  if (depth >= depth_cap) {
    throw QuadratureError("adaptive quadrature did not converge within the depth cap");
  }
  return simpson_adapt(f, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth + 1, depth_cap) +
         simpson_adapt(f, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth + 1, depth_cap);
}

}  // namespace

double adaptive_simpson(const RealFn& f, double a, double b, double tol, int depth_cap) {
  if (a == b) return 0.0;
  double sign = 1.0;
  if (b < a) {
    std::swap(a, b);
    sign = -1.0;
  }
  tol = std::max(tol, 1e-305);
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = simpson(fa, fm, fb, b - a);
  return sign * simpson_adapt(f, a, fa, m, fm, b, fb, whole, tol, 0, depth_cap);
}

double integrate_relative(const RealFn& f, double a, double b, double rel_tol,
                          int depth_cap) {
  if (a == b) return 0.0;
  // Coarse composite Simpson on 8 panels sets the absolute tolerance scale.
  double coarse = 0.0;
  {
    const int panels = 8;
    const double h = (b - a) / panels;
    for (int i = 0; i < panels; ++i) {
      const double x0 = a + i * h;
      coarse += simpson(f(x0), f(x0 + 0.5 * h), f(x0 + h), h);
    }
  }
  double scale = std::abs(coarse);
  if (!std::isfinite(scale)) scale = 0.0;
  double result = adaptive_simpson(f, a, b, rel_tol * std::max(scale, 1e-300), depth_cap);
  if (std::abs(result) > 4.0 * std::max(scale, 1e-300)) {
    // the coarse pass missed structure; refine against the better estimate
    result = adaptive_simpson(f, a, b, rel_tol * std::abs(result), depth_cap);
  }
  return result;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("fit_line needs at least two matching points");
  }
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double det = n * sxx - sx * sx;
  if (det == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
  LineFit fit;
  fit.slope = (n * sxy - sx * sy) / det;
  fit.intercept = (sy - fit.slope * sx) / n;
  for (std::size_t i = 0; i < x.size(); ++i) {
    fit.residual = std::max(fit.residual, std::abs(y[i] - fit.slope * x[i] - fit.intercept));
  }
  return fit;
}

std::vector<double> pchip_slopes(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n != y.size() || n < 2) throw std::invalid_argument("pchip_slopes: bad sample sizes");
  std::vector<double> m(n, 0.0);
  if (n == 2) {
    m[0] = m[1] = (y[1] - y[0]) / (x[1] - x[0]);
    return m;
  }
  std::vector<double> h(n - 1), d(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x[i + 1] - x[i];
    if (h[i] <= 0.0) throw std::invalid_argument("pchip_slopes: abscissae not increasing");
    d[i] = (y[i + 1] - y[i]) / h[i];
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (d[i - 1] * d[i] <= 0.0) {
      m[i] = 0.0;
    } else {
      const double w1 = 2.0 * h[i] + h[i - 1];
      const double w2 = h[i] + 2.0 * h[i - 1];
      m[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
    }
  }
  // one-sided three-point ends, clipped to preserve monotone shape
  auto end_slope = [](double h0, double h1, double d0, double d1) {
    double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (s * d0 <= 0.0) {
      s = 0.0;
    } else if (d0 * d1 <= 0.0 && std::abs(s) > 3.0 * std::abs(d0)) {
      s = 3.0 * d0;
    }
    return s;
  };
  m[0] = end_slope(h[0], h[1], d[0], d[1]);
  m[n - 1] = end_slope(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
  return m;
}

HermiteSeries::HermiteSeries(std::vector<double> x, std::vector<double> y,
                             std::vector<double> dydx)
    : x_(std::move(x)), y_(std::move(y)), m_(std::move(dydx)) {
  if (x_.size() < 2 || x_.size() != y_.size() || x_.size() != m_.size()) {
    throw std::invalid_argument("HermiteSeries: inconsistent node data");
  }
  for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
    if (!(x_[i] < x_[i + 1])) {
      throw std::invalid_argument("HermiteSeries: nodes must be strictly increasing");
    }
  }
  increasing_ = true;
  for (std::size_t i = 0; i + 1 < y_.size(); ++i) {
    if (!(y_[i] < y_[i + 1])) {
      increasing_ = false;
      break;
    }
  }
}

std::size_t HermiteSeries::segment(double t) const {
  if (t <= x_.front()) return 0;
  if (t >= x_.back()) return x_.size() - 2;
  const auto it = std::upper_bound(x_.begin(), x_.end(), t);
  return static_cast<std::size_t>(it - x_.begin()) - 1;
}

double HermiteSeries::value(double t) const {
  const std::size_t i = segment(t);
  const double h = x_[i + 1] - x_[i];
  const double s = (t - x_[i]) / h;
  const double s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * y_[i] + (s3 - 2 * s2 + s) * h * m_[i] +
         (-2 * s3 + 3 * s2) * y_[i + 1] + (s3 - s2) * h * m_[i + 1];
}

double HermiteSeries::deriv(double t) const {
  const std::size_t i = segment(t);
  const double h = x_[i + 1] - x_[i];
  const double s = (t - x_[i]) / h;
  const double s2 = s * s;
  return (6 * s2 - 6 * s) * (y_[i] - y_[i + 1]) / h + (3 * s2 - 4 * s + 1) * m_[i] +
         (3 * s2 - 2 * s) * m_[i + 1];
}

double HermiteSeries::second(double t) const {
  const std::size_t i = segment(t);
  const double h = x_[i + 1] - x_[i];
  const double s = (t - x_[i]) / h;
  return ((12 * s - 6) * (y_[i] - y_[i + 1]) / h + (6 * s - 4) * m_[i] +
          (6 * s - 2) * m_[i + 1]) /
         h;
}

double HermiteSeries::inverse(double y) const {
  if (!increasing_) throw std::logic_error("HermiteSeries::inverse needs increasing values");
  if (y < y_.front() - 1e-12 * (1.0 + std::abs(y_.front())) ||
      y > y_.back() + 1e-12 * (1.0 + std::abs(y_.back()))) {
    throw std::out_of_range("HermiteSeries::inverse: target outside table range");
  }
  y = std::clamp(y, y_.front(), y_.back());
  const auto it = std::upper_bound(y_.begin(), y_.end(), y);
  std::size_t i = it == y_.begin() ? 0 : static_cast<std::size_t>(it - y_.begin()) - 1;
  i = std::min(i, y_.size() - 2);
  double lo = x_[i], hi = x_[i + 1];
  double t = lo + (hi - lo) * (y - y_[i]) / std::max(y_[i + 1] - y_[i], 1e-300);
  for (int iter = 0; iter < 100; ++iter) {
    const double v = value(t);
    const double err = v - y;
    if (std::abs(err) <= 1e-14 * (1.0 + std::abs(y))) break;
    (err > 0 ? hi : lo) = t;
    const double d = deriv(t);
    double next = d > 0 ? t - err / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == t) break;
    t = next;
  }
  return t;
}

}  // namespace wpi
