#pragma once

#include <stdexcept>
#include <string>

namespace wpi {

/// Adaptive quadrature exceeded its refinement depth cap.
class QuadratureError : public std::runtime_error {
public:
  explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

/// An iterative solver (eigen bisection, shooting, ODE march) failed.
class SolverError : public std::runtime_error {
public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

/// Warp integration drove eta through zero; `location` is the first bad t.
class ZeroCrossingError : public SolverError {
public:
  ZeroCrossingError(const std::string& what, double where)
      : SolverError(what), location(where) {}
  double location;
};

/// Green's-function construction requested on a parabolic model.
class GreensFunctionError : public std::runtime_error {
public:
  explicit GreensFunctionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace wpi
