#pragma once

#include <functional>
#include <span>
#include <vector>

namespace wpi {

using RealFn = std::function<double(double)>;

/// Adaptive Simpson with Richardson update. `tol` is an absolute error target;
/// signed intervals (a > b) are allowed. Throws QuadratureError past `depth_cap`.
double adaptive_simpson(const RealFn& f, double a, double b, double tol, int depth_cap = 40);

/// Two-pass wrapper: integrates to a tolerance relative to the integral's own
/// magnitude (coarse estimate first, refined if the coarse pass was misleading).
double integrate_relative(const RealFn& f, double a, double b, double rel_tol,
                          int depth_cap = 40);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // max absolute deviation from the fitted line
};

/// Least-squares line through (x, y).
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Fritsch-Carlson monotone cubic slopes for strictly increasing x.
std::vector<double> pchip_slopes(std::span<const double> x, std::span<const double> y);

/// Piecewise cubic Hermite series on strictly increasing nodes.
/// Evaluation outside [front, back] clamps to the end segments' polynomials.
class HermiteSeries {
public:
  HermiteSeries() = default;
  HermiteSeries(std::vector<double> x, std::vector<double> y, std::vector<double> dydx);

  double value(double t) const;
  double deriv(double t) const;
  double second(double t) const;

  /// For strictly monotone series: t with value(t) = y, by safeguarded Newton.
  double inverse(double y) const;

  bool increasing() const { return increasing_; }
  double front() const { return x_.front(); }
  double back() const { return x_.back(); }
  const std::vector<double>& nodes() const { return x_; }
  const std::vector<double>& values() const { return y_; }
  const std::vector<double>& slopes() const { return m_; }

private:
  std::size_t segment(double t) const;
  std::vector<double> x_, y_, m_;
  bool increasing_ = false;
};

}  // namespace wpi
