#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wpi/profiles.hpp"
#include "wpi/warped.hpp"
#include "wpi/weights.hpp"

namespace wpi {

/// Dirichlet problem for the radial operator on [a, b] with area factor
/// A = V_N eta^{n-1}. The zeroth-order coefficient is rho (weight, entering
/// the form as -int rho phi^2 A) or a potential V (entering as +int V phi^2 A).
struct DirichletProblem {
  WarpedModel model;
  std::optional<WeightProfile> weight;
  std::optional<ScalarProfile> potential;
  Interval interval;
  GridSpec grid;
};

struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off;  // size diag.size() - 1
};

struct AssembledForms {
  std::vector<double> nodes;  // all nodes including Dirichlet boundary
  Tridiagonal stiffness;      // int phi' psi' A   (interior x interior)
  Tridiagonal mass;           // int phi psi A
  Tridiagonal weighted_mass;  // int q phi psi A, q = rho or V
};

/// Piecewise-linear elements, per-element 3-point Gauss quadrature.
AssembledForms assemble_forms(const DirichletProblem& p);

enum class OperatorKind { laplacian, schrodinger };

struct EigenResult {
  double lambda1 = 0.0;
  std::vector<double> nodes;        // including boundary
  std::vector<double> eigenvector;  // Dirichlet values at boundary
  double residual = 0.0;            // pencil-relative residual
  int grid_size = 0;                // interior unknowns
};

/// Smallest eigenvalue of the generalized symmetric tridiagonal pencil by
/// Sturm-sequence bisection; eigenvector by inverse iteration.
/// laplacian:    K v = lambda M v
/// schrodinger:  (K -/+ W) v = lambda M v  (minus for weight, plus for potential)
EigenResult principal_eigenvalue(const DirichletProblem& p, OperatorKind op);

struct VerificationReport {
  double minimum = 0.0;   // discrete min of (int |grad phi|^2 A - int rho phi^2 A)/int phi^2 A
  double minimum_coarse = 0.0;  // same quantity at half the resolution
  double tolerance = 0.0;
  bool pass = false;
  int grid_size = 0;
  std::vector<double> nodes;
  std::vector<double> minimizer;
  std::string caveat;
};

/// Discrete verification of int rho phi^2 <= int |grad phi|^2 over the
/// Dirichlet element space. PASS when minimum >= -tolerance. The certificate
/// covers the element subspace only; the caveat states so.
VerificationReport verify_weighted_poincare(const WeightProfile& w, const WarpedModel& m,
                                            Interval interval, const GridSpec& grid,
                                            double tol_scale = 1e-8);

struct BottomSpectrumResult {
  double estimate = 0.0;
  std::vector<double> radii;
  std::vector<double> lambdas;
};

/// lambda_1(M) estimate by exhaustion: Dirichlet eigenvalues on B(R_k) for
/// increasing radii, Richardson extrapolation in 1/R^2 from the last pair.
/// Verifies domain monotonicity (throws SolverError if violated).
BottomSpectrumResult bottom_spectrum(const WarpedModel& m, std::span<const double> radii,
                                     int nodes_per_solve = 10000);

}  // namespace wpi
