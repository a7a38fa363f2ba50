#include "wpi/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "wpi/errors.hpp"

namespace wpi {

namespace {

constexpr double kGaussX[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
constexpr double kGaussW[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};

struct ElementMats {
  double k00, k01, k11;
  double m00, m01, m11;
  double w00, w01, w11;
};

ElementMats element_integrals(const RealFn& area, const RealFn& q, double x0, double x1) {
  const double h = x1 - x0;
  const double mid = 0.5 * (x0 + x1);
  ElementMats e{};
  for (int g = 0; g < 3; ++g) {
    const double x = mid + 0.5 * h * kGaussX[g];
    const double wgt = 0.5 * h * kGaussW[g];
    const double A = area(x);
    const double qa = q(x) * A;
    const double pl = (x1 - x) / h;  // left hat
    const double pr = (x - x0) / h;  // right hat
    e.k00 += wgt * A / (h * h);
    e.m00 += wgt * A * pl * pl;
    e.m01 += wgt * A * pl * pr;
    e.m11 += wgt * A * pr * pr;
    e.w00 += wgt * qa * pl * pl;
    e.w01 += wgt * qa * pl * pr;
    e.w11 += wgt * qa * pr * pr;
  }
  e.k11 = e.k00;
  e.k01 = -e.k00;
  return e;
}

int inertia_below(const Tridiagonal& T, const Tridiagonal& M, double sigma, double pivmin) {
  const std::size_t n = T.diag.size();
  int count = 0;
  double q = T.diag[0] - sigma * M.diag[0];
  if (std::abs(q) < pivmin) q = -pivmin;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < n; ++i) {
    const double e = T.off[i - 1] - sigma * M.off[i - 1];
    q = (T.diag[i] - sigma * M.diag[i]) - e * e / q;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

// Thomas solve for (T - sigma M) x = rhs; valid without pivoting because the
// shift sits strictly below the smallest pencil eigenvalue.
std::vector<double> shifted_solve(const Tridiagonal& T, const Tridiagonal& M, double sigma,
                                  std::vector<double> rhs) {
  const std::size_t n = T.diag.size();
  std::vector<double> c(n, 0.0);
  std::vector<double> d(n, 0.0);
  double b0 = T.diag[0] - sigma * M.diag[0];
  if (b0 == 0.0) b0 = std::numeric_limits<double>::min();
  c[0] = n > 1 ? (T.off[0] - sigma * M.off[0]) / b0 : 0.0;
  d[0] = rhs[0] / b0;
  for (std::size_t i = 1; i < n; ++i) {
    const double e = T.off[i - 1] - sigma * M.off[i - 1];
    double denom = (T.diag[i] - sigma * M.diag[i]) - e * c[i - 1];
    if (denom == 0.0) denom = std::numeric_limits<double>::min();
    if (i + 1 < n) c[i] = (T.off[i] - sigma * M.off[i]) / denom;
    d[i] = (rhs[i] - e * d[i - 1]) / denom;
  }
  for (std::size_t i = n - 1; i-- > 0;) d[i] -= c[i] * d[i + 1];
  return d;
}

double tri_quad(const Tridiagonal& T, const std::vector<double>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += T.diag[i] * v[i] * v[i];
  for (std::size_t i = 0; i + 1 < v.size(); ++i) s += 2.0 * T.off[i] * v[i] * v[i + 1];
  return s;
}

std::vector<double> tri_apply(const Tridiagonal& T, const std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = T.diag[i] * v[i];
    if (i > 0) out[i] += T.off[i - 1] * v[i - 1];
    if (i + 1 < n) out[i] += T.off[i] * v[i + 1];
  }
  return out;
}

double inf_norm(const Tridiagonal& T) {
  double m = 0.0;
  for (std::size_t i = 0; i < T.diag.size(); ++i) {
    double row = std::abs(T.diag[i]);
    if (i > 0) row += std::abs(T.off[i - 1]);
    if (i + 1 < T.diag.size()) row += std::abs(T.off[i]);
    m = std::max(m, row);
  }
  return m;
}

struct PencilSolve {
  double lambda;
  std::vector<double> vec;
  double residual;
};

PencilSolve smallest_eigenpair(const Tridiagonal& T, const Tridiagonal& M) {
  const std::size_t n = T.diag.size();
  if (n == 0) throw SolverError("eigen solve on an empty grid");

  double emax2 = 1.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    emax2 = std::max(emax2, T.off[i] * T.off[i]);
  }
  const double pivmin = 1e-292 * emax2;

  // pencil Gershgorin bound: outside [-B, B] the shifted matrix is strictly
  // diagonally dominant (M itself is)
  double B = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double tnum = std::abs(T.diag[i]);
    double mden = M.diag[i];
    if (i > 0) {
      tnum += std::abs(T.off[i - 1]);
      mden -= std::abs(M.off[i - 1]);
    }
    if (i + 1 < n) {
      tnum += std::abs(T.off[i]);
      mden -= std::abs(M.off[i]);
    }
    if (!(mden > 0.0)) throw SolverError("mass matrix lost diagonal dominance");
    B = std::max(B, tnum / mden);
  }
  B = B * (1.0 + 1e-12) + 1.0;

  double lo = -B, hi = B;
  if (inertia_below(T, M, hi, pivmin) < 1) {
    throw SolverError("bisection bound failed to capture an eigenvalue");
  }
  for (int it = 0; it < 300; ++it) {
    if (hi - lo <= 1e-10 + 1e-13 * (std::abs(lo) + std::abs(hi))) break;
    const double mid = 0.5 * (lo + hi);
    if (inertia_below(T, M, mid, pivmin) >= 1) {
      hi = mid;
    } else {
      lo = mid;
    }
  }

  // inverse iteration from just below the converged bracket
  const double gap = std::max(hi - lo, 1e-12 * (1.0 + std::abs(lo)));
  const double sigma = lo - 10.0 * gap;
  std::vector<double> v(n, 1.0);
  for (int it = 0; it < 4; ++it) {
    std::vector<double> rhs = tri_apply(M, v);
    v = shifted_solve(T, M, sigma, std::move(rhs));
    const double mn = std::sqrt(std::max(tri_quad(M, v), 1e-300));
    for (double& x : v) x /= mn;
  }
  double lambda = tri_quad(T, v) / tri_quad(M, v);

  // one Rayleigh-quotient polish step
  {
    std::vector<double> rhs = tri_apply(M, v);
    std::vector<double> w = shifted_solve(T, M, lambda - gap, std::move(rhs));
    const double mn = std::sqrt(std::max(tri_quad(M, w), 1e-300));
    bool finite = mn > 0.0;
    for (double& x : w) {
      x /= mn;
      finite = finite && std::isfinite(x);
    }
    if (finite) {
      const double cand = tri_quad(T, w) / tri_quad(M, w);
      if (std::isfinite(cand)) {
        v = std::move(w);
        lambda = cand;
      }
    }
  }

  // deterministic sign: largest-magnitude entry positive
  double mx = 0.0;
  for (double x : v) {
    if (std::abs(x) > std::abs(mx)) mx = x;
  }
  if (mx < 0.0) {
    for (double& x : v) x = -x;
  }

  std::vector<double> Tv = tri_apply(T, v);
  std::vector<double> Mv = tri_apply(M, v);
  double rnum = 0.0, vnorm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = Tv[i] - lambda * Mv[i];
    rnum += r * r;
    vnorm += v[i] * v[i];
  }
  const double scale = inf_norm(T) + std::abs(lambda) * inf_norm(M);
  PencilSolve out;
  out.lambda = lambda;
  out.vec = std::move(v);
  out.residual = std::sqrt(rnum) / (std::max(scale, 1e-300) * std::sqrt(vnorm));
  return out;
}

}  // namespace

AssembledForms assemble_forms(const DirichletProblem& p) {
  if (p.weight && p.potential) {
    throw std::invalid_argument("DirichletProblem: supply a weight or a potential, not both");
  }
  GridSpec g = p.grid;
  g.interval = p.interval;
  std::vector<double> nodes = make_grid(g);

  const ScalarProfile A = area_profile(p.model);
  RealFn area = [&A](double x) { return A(x); };
  RealFn q;
  if (p.weight) {
    const ScalarProfile& rho = p.weight->rho;
    q = [&rho](double x) { return rho(x); };
  } else if (p.potential) {
    const ScalarProfile& V = *p.potential;
    q = [&V](double x) { return V(x); };
  } else {
    q = [](double) { return 0.0; };
  }

  const std::size_t n = nodes.size();
  const std::size_t ni = n - 2;  // interior unknowns
  AssembledForms out;
  out.nodes = nodes;
  out.stiffness.diag.assign(ni, 0.0);
  out.stiffness.off.assign(ni > 0 ? ni - 1 : 0, 0.0);
  out.mass = out.stiffness;
  out.weighted_mass = out.stiffness;

  for (std::size_t e = 0; e + 1 < n; ++e) {
    ElementMats em;
    try {
      em = element_integrals(area, q, nodes[e], nodes[e + 1]);
    } catch (const std::exception& ex) {
      std::ostringstream os;
      os << "assemble_forms: coefficient evaluation failed on element " << e << ": "
         << ex.what();
      throw std::invalid_argument(os.str());
    }
    if (!std::isfinite(em.k00) || !std::isfinite(em.m00) || !std::isfinite(em.w00)) {
      std::ostringstream os;
      os << "assemble_forms: non-integrable coefficient on element [" << nodes[e] << ", "
         << nodes[e + 1] << "]";
      throw std::invalid_argument(os.str());
    }
    // global node indices e, e+1; interior index = global - 1
    if (e >= 1) {
      out.stiffness.diag[e - 1] += em.k00;
      out.mass.diag[e - 1] += em.m00;
      out.weighted_mass.diag[e - 1] += em.w00;
    }
    if (e + 1 <= ni) {
      out.stiffness.diag[e] += em.k11;
      out.mass.diag[e] += em.m11;
      out.weighted_mass.diag[e] += em.w11;
    }
    if (e >= 1 && e + 1 <= ni) {
      out.stiffness.off[e - 1] += em.k01;
      out.mass.off[e - 1] += em.m01;
      out.weighted_mass.off[e - 1] += em.w01;
    }
  }
  return out;
}

EigenResult principal_eigenvalue(const DirichletProblem& p, OperatorKind op) {
  AssembledForms f = assemble_forms(p);
  Tridiagonal T = f.stiffness;
  if (op == OperatorKind::schrodinger) {
    const double sign = p.weight ? -1.0 : 1.0;  // weight lowers, potential raises
    for (std::size_t i = 0; i < T.diag.size(); ++i) {
      T.diag[i] += sign * f.weighted_mass.diag[i];
    }
    for (std::size_t i = 0; i < T.off.size(); ++i) {
      T.off[i] += sign * f.weighted_mass.off[i];
    }
  }
  PencilSolve s = smallest_eigenpair(T, f.mass);
  EigenResult r;
  r.lambda1 = s.lambda;
  r.residual = s.residual;
  r.grid_size = static_cast<int>(T.diag.size());
  r.nodes = f.nodes;
  r.eigenvector.assign(f.nodes.size(), 0.0);
  for (std::size_t i = 0; i < s.vec.size(); ++i) r.eigenvector[i + 1] = s.vec[i];
  return r;
}

VerificationReport verify_weighted_poincare(const WeightProfile& w, const WarpedModel& m,
                                            Interval interval, const GridSpec& grid,
                                            double tol_scale) {
  DirichletProblem p{m, w, std::nullopt, interval, grid};
  EigenResult e = principal_eigenvalue(p, OperatorKind::schrodinger);
  GridSpec coarse_grid = grid;
  coarse_grid.node_count = std::max(3, grid.node_count / 2);
  DirichletProblem pc{m, w, std::nullopt, interval, coarse_grid};
  EigenResult ec = principal_eigenvalue(pc, OperatorKind::schrodinger);

  double sup_rho = 1.0;
  for (double x : e.nodes) {
    try {
      sup_rho = std::max(sup_rho, std::abs(w.rho(x)));
    } catch (const std::exception&) {
      // boundary singularities do not enter the pass scale
    }
  }
  VerificationReport rep;
  rep.minimum = e.lambda1;
  rep.minimum_coarse = ec.lambda1;
  rep.tolerance = tol_scale * sup_rho;
  rep.pass = e.lambda1 >= -rep.tolerance;
  rep.grid_size = e.grid_size;
  rep.nodes = e.nodes;
  rep.minimizer = e.eigenvector;
  rep.caveat =
      "discrete certificate: the minimum is over the piecewise-linear Dirichlet subspace; "
      "the half-resolution minimum shows the refinement trend toward the true infimum";
  return rep;
}

BottomSpectrumResult bottom_spectrum(const WarpedModel& m, std::span<const double> radii,
                                     int nodes_per_solve) {
  if (radii.size() < 1) throw std::invalid_argument("bottom_spectrum: need at least one radius");
  BottomSpectrumResult out;
  double prev = std::numeric_limits<double>::infinity();
  for (double R : radii) {
    Interval iv = m.kind == DomainKind::pole_model ? Interval::closed(1e-3, R)
                                                   : Interval::closed(-R, R);
    GridSpec grid{nodes_per_solve, GridSpec::Grading::uniform, 1.0, iv};
    DirichletProblem p{m, std::nullopt, std::nullopt, iv, grid};
    EigenResult e = principal_eigenvalue(p, OperatorKind::laplacian);
    if (e.lambda1 > prev + 1e-10 * (1.0 + std::abs(prev))) {
      throw SolverError("bottom_spectrum: domain monotonicity violated along the exhaustion");
    }
    prev = e.lambda1;
    out.radii.push_back(R);
    out.lambdas.push_back(e.lambda1);
  }
  const std::size_t k = out.radii.size();
  if (k == 1) {
    out.estimate = out.lambdas[0];
  } else {
    // Richardson in 1/R^2 from the last pair
    const double r1 = out.radii[k - 2], r2 = out.radii[k - 1];
    const double l1 = out.lambdas[k - 2], l2 = out.lambdas[k - 1];
    out.estimate = (l2 * r2 * r2 - l1 * r1 * r1) / (r2 * r2 - r1 * r1);
  }
  return out;
}

}  // namespace wpi
