#include "toric/spectrum.hpp"

#include "toric/errors.hpp"
#include "toric/geometry.hpp"
#include "toric/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace toric {

double laplacian_apply(const SymplecticPotential& g, const FieldJet& psi, const Eigen::VectorXd& x) {
  PotentialJet j = g.jet(x, 3);
  Eigen::LLT<Eigen::MatrixXd> llt(j.hessian);
  if (llt.info() != Eigen::Success) {
    throw ToricError(ErrorKind::NotPositiveDefinite, "Hessian is not positive definite");
  }
  const Eigen::Index n = x.size();
  const Eigen::MatrixXd ginv = llt.solve(Eigen::MatrixXd::Identity(n, n));
  const Eigen::VectorXd dlog = log_det_gradient(j, ginv);
  // d_j((det G)^{-1} d_k ψ) = (det G)^{-1} (ψ_jk - (d_j log det G) ψ_k)
  double s = 0.0;
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b) s += ginv(a, b) * (psi.hessian(a, b) - dlog[a] * psi.gradient[b]);
  return -s;
}

double laplacian_apply(const SymplecticPotential& g, const ScalarField& psi, const Eigen::VectorXd& x) {
  return laplacian_apply(g, psi(x), x);
}

namespace {

Eigen::MatrixXd inverse_metric(const SymplecticPotential& g, const Eigen::VectorXd& x) {
  return metric_sample(g, x, 2).Ginv;
}

}  // namespace

double rayleigh_quotient(const SymplecticPotential& g, const ScalarField& psi, int quadrature_degree) {
  const QuadratureRule rule = polytope_rule(g.polytope(), quadrature_degree);
  double num = 0.0, den = 0.0;
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const auto& x = rule.nodes[q];
    FieldJet f = psi(x);
    num += rule.weights[q] * f.gradient.dot(inverse_metric(g, x) * f.gradient);
    den += rule.weights[q] * f.value * f.value;
  }
  if (!(den > 0.0)) throw ToricError(ErrorKind::ZeroFunction, "test function has zero L2 norm");
  return num / den;
}

namespace {

std::vector<std::vector<int>> exponents_up_to(int n, int degree) {
  std::vector<std::vector<int>> out;
  for (int total = 0; total <= degree; ++total) {
    std::vector<int> e(static_cast<std::size_t>(n), 0);
    // compositions of `total` into n parts, graded-lex
    std::function<void(int, int)> rec = [&](int pos, int left) {
      if (pos == n - 1) {
        e[static_cast<std::size_t>(pos)] = left;
        out.push_back(e);
        return;
      }
      for (int v = left; v >= 0; --v) {
        e[static_cast<std::size_t>(pos)] = v;
        rec(pos + 1, left - v);
      }
    };
    rec(0, total);
  }
  return out;
}

// Quadrature nodes with G^{-1} precomputed.
struct AssemblyCache {
  QuadratureRule rule;
  std::vector<Eigen::MatrixXd> ginv;
  Eigen::VectorXd center, half_width;
};

AssemblyCache make_cache(const SymplecticPotential& g, int quadrature_degree) {
  AssemblyCache c;
  const auto& p = g.polytope();
  c.rule = polytope_rule(p, quadrature_degree);
  c.ginv.reserve(c.rule.nodes.size());
  for (const auto& x : c.rule.nodes) c.ginv.push_back(inverse_metric(g, x));
  c.center = p.centroid();
  c.half_width = 0.5 * (p.upper_corner() - p.lower_corner());
  return c;
}

struct GeneralizedSolution {
  Eigen::VectorXd eigenvalues;
  double gram_condition = 0.0;
};

GeneralizedSolution solve_generalized(const Eigen::MatrixXd& stiffness, const Eigen::MatrixXd& mass,
                                      double max_condition) {
  // Jacobi scaling before factorizing the mass matrix.
  const Eigen::VectorXd d = mass.diagonal().cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd ms = d.asDiagonal() * mass * d.asDiagonal();
  const Eigen::MatrixXd as = d.asDiagonal() * stiffness * d.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> gram(ms, Eigen::EigenvaluesOnly);
  GeneralizedSolution sol;
  const double lo = gram.eigenvalues().minCoeff(), hi = gram.eigenvalues().maxCoeff();
  sol.gram_condition = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  if (sol.gram_condition > max_condition) {
    throw ToricError(ErrorKind::IllConditionedGram,
                     "mass Gram condition " + std::to_string(sol.gram_condition) +
                         " exceeds the limit; reduce the trial degree");
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(as, ms, Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
  if (es.info() != Eigen::Success) {
    throw ToricError(ErrorKind::IllConditionedGram, "generalized eigensolver failed");
  }
  sol.eigenvalues = es.eigenvalues();
  return sol;
}

GeneralizedSolution ritz_solve(const AssemblyCache& c, int n, int degree, double max_condition) {
  const auto exps = exponents_up_to(n, degree);
  const auto m = static_cast<Eigen::Index>(exps.size());
  Eigen::MatrixXd stiffness = Eigen::MatrixXd::Zero(m, m);
  Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd vals(m);
  Eigen::MatrixXd grads(n, m);
  for (std::size_t q = 0; q < c.rule.nodes.size(); ++q) {
    const Eigen::VectorXd z = (c.rule.nodes[q] - c.center).cwiseQuotient(c.half_width);
    for (Eigen::Index b = 0; b < m; ++b) {
      const auto& e = exps[static_cast<std::size_t>(b)];
      double v = 1.0;
      for (int a = 0; a < n; ++a) v *= std::pow(z[a], e[static_cast<std::size_t>(a)]);
      vals[b] = v;
      for (int a = 0; a < n; ++a) {
        const int ea = e[static_cast<std::size_t>(a)];
        double dv = 0.0;
        if (ea > 0) {
          dv = ea / c.half_width[a];
          for (int o = 0; o < n; ++o) dv *= std::pow(z[o], e[static_cast<std::size_t>(o)] - (o == a ? 1 : 0));
        }
        grads(a, b) = dv;
      }
    }
    const double w = c.rule.weights[q];
    mass.noalias() += w * vals * vals.transpose();
    stiffness.noalias() += w * grads.transpose() * c.ginv[q] * grads;
  }
  return solve_generalized(stiffness, mass, max_condition);
}

std::vector<double> take(const Eigen::VectorXd& ev, int k) {
  std::vector<double> out;
  for (Eigen::Index i = 1; i <= k && i < ev.size(); ++i) out.push_back(std::max(ev[i], 0.0));
  return out;
}

void flag_convergence(SpectrumResult& res) {
  res.converged.assign(res.eigenvalues.size(), false);
  for (std::size_t i = 0; i < res.eigenvalues.size() && i < res.coarse_eigenvalues.size(); ++i) {
    const double fine = res.eigenvalues[i], coarse = res.coarse_eigenvalues[i];
    res.converged[i] = std::abs(coarse - fine) <= kConvergenceTolerance * std::max(std::abs(fine), 1e-300);
  }
}

// Piecewise-quadratic finite elements on an interval, natural boundary.
GeneralizedSolution fem_solve(const SymplecticPotential& g, int cells) {
  const auto& p = g.polytope();
  const double a = p.lower_corner()[0], b = p.upper_corner()[0];
  const double h = (b - a) / cells;
  const Eigen::Index dofs = 2 * cells + 1;
  std::vector<double> gx, gw;
  gauss_legendre(5, gx, gw);
  Eigen::MatrixXd stiffness = Eigen::MatrixXd::Zero(dofs, dofs);
  Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(dofs, dofs);
  for (int e = 0; e < cells; ++e) {
    for (std::size_t q = 0; q < gx.size(); ++q) {
      const double s = gx[q];
      const double x = a + (e + s) * h;
      const double coef = inverse_metric(g, Eigen::VectorXd::Constant(1, x))(0, 0);
      const double phi[3] = {2 * (s - 0.5) * (s - 1), -4 * s * (s - 1), 2 * s * (s - 0.5)};
      const double dphi[3] = {(4 * s - 3) / h, (-8 * s + 4) / h, (4 * s - 1) / h};
      const double w = gw[q] * h;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          stiffness(2 * e + i, 2 * e + j) += w * coef * dphi[i] * dphi[j];
          mass(2 * e + i, 2 * e + j) += w * phi[i] * phi[j];
        }
    }
  }
  return solve_generalized(stiffness, mass, std::numeric_limits<double>::infinity());
}

}  // namespace

SpectrumResult invariant_spectrum(const SymplecticPotential& g, int k, const SpectrumMethod& method) {
  if (k < 1) throw ToricError(ErrorKind::InvalidArgument, "k must be at least 1");
  SpectrumResult res;
  if (const auto* ritz = std::get_if<RitzConfig>(&method)) {
    if (ritz->degree < 1) throw ToricError(ErrorKind::InvalidArgument, "Ritz degree must be at least 1");
    const int n = static_cast<int>(g.dim());
    const AssemblyCache cache = make_cache(g, ritz->quadrature_degree.value_or(2 * ritz->degree + 4));
    GeneralizedSolution fine = ritz_solve(cache, n, ritz->degree, ritz->max_gram_condition);
    res.method = "ritz";
    res.ritz_degree = ritz->degree;
    res.gram_condition = fine.gram_condition;
    res.constant_mode = fine.eigenvalues[0];
    res.eigenvalues = take(fine.eigenvalues, k);
    if (ritz->degree > 1) {
      res.coarse_eigenvalues = take(ritz_solve(cache, n, ritz->degree - 1, ritz->max_gram_condition).eigenvalues, k);
    }
  } else {
    const auto& fem = std::get<Fem1DConfig>(method);
    if (g.dim() != 1) throw ToricError(ErrorKind::InvalidArgument, "finite elements are one-dimensional only");
    if (fem.cells < 2) throw ToricError(ErrorKind::InvalidArgument, "need at least two cells");
    GeneralizedSolution fine = fem_solve(g, fem.cells);
    res.method = "fem1d";
    res.fem_cells = fem.cells;
    res.gram_condition = fine.gram_condition;
    res.constant_mode = fine.eigenvalues[0];
    res.eigenvalues = take(fine.eigenvalues, k);
    res.coarse_eigenvalues = take(fem_solve(g, fem.cells / 2).eigenvalues, k);
  }
  flag_convergence(res);
  return res;
}

std::vector<std::vector<double>> ritz_history(const SymplecticPotential& g, int k, const std::vector<int>& degrees) {
  if (degrees.empty()) return {};
  const int top = *std::max_element(degrees.begin(), degrees.end());
  const AssemblyCache cache = make_cache(g, 2 * top + 4);
  std::vector<std::vector<double>> out;
  for (int d : degrees) {
    out.push_back(take(ritz_solve(cache, static_cast<int>(g.dim()), d, std::numeric_limits<double>::infinity()).eigenvalues, k));
  }
  return out;
}

namespace {

double bisect_zero(double (*f)(double), double lo, double hi) {
  double flo = f(lo);
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double j0(double x) { return std::cyl_bessel_j(0.0, x); }
double j0_prime(double x) { return -std::cyl_bessel_j(1.0, x); }

// First `count` positive zeros of f, bracketed on a fine scan.
std::vector<double> positive_zeros(double (*f)(double), int count) {
  std::vector<double> zeros;
  const double step = 0.05;
  double x = 0.5, fx = f(x);
  while (static_cast<int>(zeros.size()) < count) {
    const double y = x + step, fy = f(y);
    if ((fx < 0) != (fy < 0)) zeros.push_back(bisect_zero(f, x, y));
    x = y;
    fx = fy;
  }
  return zeros;
}

}  // namespace

std::vector<BesselBound> bessel_bounds(int max_j) {
  if (max_j < 1) throw ToricError(ErrorKind::InvalidArgument, "max_j must be at least 1");
  const auto z0 = positive_zeros(&j0, (max_j + 1) / 2);
  const auto z1 = positive_zeros(&j0_prime, max_j / 2);
  std::vector<BesselBound> out;
  for (int j = 1; j <= max_j; ++j) {
    const double xi = (j % 2 == 1) ? z0[static_cast<std::size_t>((j + 1) / 2 - 1)]
                                   : z1[static_cast<std::size_t>(j / 2 - 1)];
    out.push_back(BesselBound{j, xi, 0.5 * xi * xi});
  }
  return out;
}

RevolutionCheck revolution_check(const SymplecticPotential& g, std::size_t samples, double tol) {
  if (g.dim() != 1) throw ToricError(ErrorKind::InvalidArgument, "revolution check needs a one-dimensional polytope");
  if (samples < 2) throw ToricError(ErrorKind::InvalidArgument, "need at least two samples");
  const auto& p = g.polytope();
  const double a = p.lower_corner()[0], b = p.upper_corner()[0];
  const double pad = 1e-6 * (b - a);
  RevolutionCheck rep;
  rep.samples = samples;
  for (std::size_t i = 0; i < samples; ++i) {
    const double x = a + pad + (b - a - 2 * pad) * static_cast<double>(i) / static_cast<double>(samples - 1);
    rep.max_slope = std::max(rep.max_slope, std::abs(metric_sample(g, Eigen::VectorXd::Constant(1, x), 3).dGinv(0, 0, 0)));
  }
  rep.embeddable = rep.max_slope <= 2.0 + tol;
  return rep;
}

InvarianceReport spectral_invariance_check(const DelzantPolytope& p, const IntMatrix& a, int k,
                                           const RitzConfig& cfg, double tol) {
  InvarianceReport rep;
  rep.tolerance = tol;
  const DelzantPolytope image = sl_transform(p, a);
  rep.original = invariant_spectrum(canonical_potential(p), k, cfg).eigenvalues;
  rep.transformed = invariant_spectrum(canonical_potential(image), k, cfg).eigenvalues;
  for (std::size_t i = 0; i < rep.original.size() && i < rep.transformed.size(); ++i) {
    const double rel = std::abs(rep.original[i] - rep.transformed[i]) / std::max(std::abs(rep.original[i]), 1e-300);
    rep.max_relative_difference = std::max(rep.max_relative_difference, rel);
  }
  rep.invariant = rep.original.size() == rep.transformed.size() && rep.max_relative_difference <= tol;
  return rep;
}

}  // namespace toric
