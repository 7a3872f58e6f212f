#include "toric/potential.hpp"

#include "toric/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace toric {

SymplecticPotential::SymplecticPotential(DelzantPolytope polytope,
                                         std::vector<CorrectionTerm> corrections,
                                         std::string label)
    : polytope_(std::move(polytope)), corrections_(std::move(corrections)), label_(std::move(label)) {
  if (label_.empty()) label_ = polytope_.name().empty() ? "potential" : polytope_.name();
}

void SymplecticPotential::require_interior(const Eigen::VectorXd& x, double eps) const {
  if (x.size() != static_cast<Eigen::Index>(dim())) {
    throw ToricError(ErrorKind::InvalidArgument, "point has wrong dimension");
  }
  const Eigen::VectorXd l = polytope_.ells(x);
  for (Eigen::Index r = 0; r < l.size(); ++r) {
    if (!(l[r] >= 0.0)) {
      throw ToricError(ErrorKind::OutsidePolytope, "point lies outside facet " + std::to_string(r),
                       static_cast<std::size_t>(r));
    }
  }
  for (Eigen::Index r = 0; r < l.size(); ++r) {
    if (l[r] <= eps) {
      throw ToricError(ErrorKind::BoundaryPoint, "point lies on facet " + std::to_string(r),
                       static_cast<std::size_t>(r));
    }
  }
}

PotentialJet SymplecticPotential::canonical_jet(const Eigen::VectorXd& x, int order) const {
  if (order < 0 || order > 4) throw ToricError(ErrorKind::InvalidArgument, "jet order must be 0..4");
  PotentialJet j = PotentialJet::zero(x, order);
  for (std::size_t r = 0; r < polytope_.num_facets(); ++r) {
    const double l = polytope_.ell(r, x);
    const double log_l = std::log(l);
    // derivatives of 1/2 ℓ log ℓ with respect to ℓ
    const std::array<double, 5> d{0.5 * l * log_l, 0.5 * (log_l + 1.0), 0.5 / l, -0.5 / (l * l),
                                  1.0 / (l * l * l)};
    add_ridge_terms(j, polytope_.normal(r), d);
  }
  return j;
}

PotentialJet SymplecticPotential::jet(const Eigen::VectorXd& x, int order, double eps) const {
  require_interior(x, eps);
  PotentialJet j = canonical_jet(x, order);
  for (const auto& c : corrections_) c.accumulate(j);
  return j;
}

SymplecticPotential canonical_potential(const DelzantPolytope& p) {
  return SymplecticPotential(p, {}, p.name().empty() ? "canonical" : p.name() + " canonical");
}

PotentialJet eval_jet(const SymplecticPotential& g, const Eigen::VectorXd& x, int order, double eps) {
  return g.jet(x, order, eps);
}

SymplecticPotential add_correction(const SymplecticPotential& g, CorrectionTerm h) {
  auto corr = g.corrections();
  if (!h.is_zero()) corr.push_back(std::move(h));
  return SymplecticPotential(g.polytope(), std::move(corr), g.label());
}

namespace {

BoundarySequenceReport boundary_sequence(const SymplecticPotential& g, const ApproachSequence& seq) {
  const auto& p = g.polytope();
  BoundarySequenceReport rep;
  rep.target = seq.target;
  rep.bounded_positive = true;
  for (std::size_t i = 0; i < seq.points.size(); ++i) {
    const Eigen::VectorXd& x = seq.points[i];
    rep.approach_ell.push_back(std::ldexp(1.0, -seq.k[i]));
    double product = std::numeric_limits<double>::quiet_NaN();
    double kernel = std::numeric_limits<double>::quiet_NaN();
    try {
      PotentialJet j = g.jet(x, 2, 0.0);
      product = j.hessian.determinant() * p.ells(x).prod();
      if (!seq.is_vertex) {
        Eigen::LLT<Eigen::MatrixXd> llt(j.hessian);
        if (llt.info() == Eigen::Success) kernel = llt.solve(p.normal(seq.index)).norm();
      }
    } catch (const ToricError&) {
    }
    rep.products.push_back(product);
    if (!seq.is_vertex) rep.kernel_norms.push_back(kernel);
    if (!std::isfinite(product) || product <= 0.0) rep.bounded_positive = false;
  }
  const std::size_t m = rep.products.size();
  if (m >= 2) {
    const double last = rep.products[m - 1], prev = rep.products[m - 2];
    rep.extrapolated = last + (last - prev);
    if (!(rep.extrapolated > 0.0)) rep.bounded_positive = false;
    // still moving by more than 1% at the finest level: not settled
    if (std::abs(last - prev) > 1e-2 * std::abs(last)) rep.bounded_positive = false;
  }
  if (!seq.is_vertex) {
    for (std::size_t i = 1; i < rep.kernel_norms.size(); ++i) {
      if (!(rep.kernel_norms[i] < rep.kernel_norms[i - 1])) rep.kernel_vanishes = false;
    }
    if (!rep.kernel_norms.empty() && !(rep.kernel_norms.back() < 1e-3 * rep.kernel_norms.front())) {
      rep.kernel_vanishes = false;
    }
  }
  return rep;
}

}  // namespace

ValidityReport validate_potential(const SymplecticPotential& g, const SamplingConfig& cfg) {
  ValidityReport rep;
  const auto& p = g.polytope();

  rep.correction_smooth = std::all_of(g.corrections().begin(), g.corrections().end(),
                                      [&](const CorrectionTerm& c) { return c.smooth_on(p); });
  if (!rep.correction_smooth) rep.failures.push_back("correction is singular on the polytope");

  auto samples = interior_samples(p, cfg);
  rep.interior_samples = samples.size();
  rep.min_hessian_eigenvalue = std::numeric_limits<double>::infinity();
  for (const auto& x : samples) {
    double lo = -std::numeric_limits<double>::infinity();
    try {
      PotentialJet j = g.jet(x, 2);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j.hessian, Eigen::EigenvaluesOnly);
      lo = es.eigenvalues().minCoeff();
    } catch (const ToricError&) {
    }
    if (std::isnan(lo)) lo = -std::numeric_limits<double>::infinity();
    rep.min_hessian_eigenvalue = std::min(rep.min_hessian_eigenvalue, lo);
  }
  rep.positive_definite = !samples.empty() && rep.min_hessian_eigenvalue > 0.0;
  if (!rep.positive_definite) rep.failures.push_back("Hessian is not positive definite at some sample");

  rep.boundary_ok = true;
  rep.product_min = std::numeric_limits<double>::infinity();
  rep.product_max = -std::numeric_limits<double>::infinity();
  for (const auto& seq : boundary_approach(p, cfg)) {
    auto b = boundary_sequence(g, seq);
    for (double v : b.products) {
      rep.product_min = std::min(rep.product_min, v);
      rep.product_max = std::max(rep.product_max, v);
    }
    rep.product_min = std::min(rep.product_min, b.extrapolated);
    rep.product_max = std::max(rep.product_max, b.extrapolated);
    if (!b.bounded_positive) {
      rep.boundary_ok = false;
      rep.failures.push_back("det(G) * prod ℓ is not bounded away from 0 near " + b.target);
    }
    if (!b.kernel_vanishes) {
      rep.boundary_ok = false;
      rep.failures.push_back("G^{-1} mu does not degenerate near " + b.target);
    }
    rep.boundary.push_back(std::move(b));
  }
  if (!(rep.product_min > 0.0)) rep.boundary_ok = false;

  rep.valid = rep.correction_smooth && rep.positive_definite && rep.boundary_ok;
  return rep;
}

double legendre_value(const SymplecticPotential& g, const Eigen::VectorXd& x) {
  PotentialJet j = g.jet(x, 1);
  return x.dot(j.gradient) - j.value;
}

double canonical_legendre_decomposition(const DelzantPolytope& p, const Eigen::VectorXd& x) {
  double logs = 0.0, ell_inf = 0.0;
  for (std::size_t r = 0; r < p.num_facets(); ++r) {
    logs += p.offset(r) * std::log(p.ell(r, x));
    ell_inf += x.dot(p.normal(r));
  }
  return 0.5 * logs + 0.5 * ell_inf;
}

Eigen::VectorXd moment_map(const SymplecticPotential& g, const Eigen::VectorXd& x) {
  return g.jet(x, 1).gradient;
}

namespace {

bool strictly_inside(const DelzantPolytope& p, const Eigen::VectorXd& x) {
  return (p.ells(x).array() > kBoundaryEpsilon).all();
}

}  // namespace

Eigen::VectorXd moment_map_inverse(const SymplecticPotential& g, const Eigen::VectorXd& u,
                                   const Eigen::VectorXd& x0, const NewtonOptions& opts) {
  g.require_interior(x0);
  const auto& p = g.polytope();
  Eigen::VectorXd x = x0;
  PotentialJet j = g.jet(x, 2);
  Eigen::VectorXd res = j.gradient - u;
  double merit = j.value - u.dot(x);
  for (int it = 0; it < opts.max_iterations; ++it) {
    if (res.norm() <= opts.tolerance) return x;
    Eigen::LLT<Eigen::MatrixXd> llt(j.hessian);
    if (llt.info() != Eigen::Success) {
      throw ToricError(ErrorKind::NotPositiveDefinite, "Hessian not positive definite during inversion");
    }
    const Eigen::VectorXd step = -llt.solve(res);
    const double slope = res.dot(step);
    double alpha = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls, alpha *= 0.5) {
      Eigen::VectorXd trial = x + alpha * step;
      if (!strictly_inside(p, trial)) continue;
      PotentialJet tj = g.jet(trial, 2);
      const double tm = tj.value - u.dot(trial);
      Eigen::VectorXd tres = tj.gradient - u;
      // Armijo on the convex merit g - <u, x>; near the solution the merit
      // loses precision, so a residual decrease is also accepted.
      if (tm <= merit + 1e-4 * alpha * slope || tres.norm() < res.norm()) {
        x = trial;
        j = std::move(tj);
        res = std::move(tres);
        merit = tm;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  if (res.norm() <= opts.tolerance) return x;
  std::ostringstream msg;
  msg << "moment map inversion stopped after " << opts.max_iterations
      << " iterations with residual " << res.norm();
  throw ToricError(ErrorKind::NoConvergence, msg.str());
}

KahlerPerturbation::KahlerPerturbation(DelzantPolytope p, CorrectionTerm f_j, const SamplingConfig& cfg)
    : canonical_(canonical_potential(p)), f_j_(std::move(f_j)) {
  if (!f_j_.smooth_on(canonical_.polytope())) {
    throw ToricError(ErrorKind::InvalidArgument, "f_J must be smooth on the polytope");
  }
  auto samples = interior_samples(canonical_.polytope(), cfg);
  check_.samples = samples.size();
  check_.min_eigenvalue = std::numeric_limits<double>::infinity();
  check_.min_jacobian_det = std::numeric_limits<double>::infinity();
  for (const auto& x : samples) {
    PotentialJet j = canonical_.jet(x, 2);
    Eigen::MatrixXd m = jacobian(x) * j.hessian.inverse();
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    check_.max_asymmetry = std::max(check_.max_asymmetry, asym);
    check_.min_eigenvalue = std::min(check_.min_eigenvalue, lo);
    check_.min_jacobian_det = std::min(check_.min_jacobian_det, jacobian(x).determinant());
    if (!(lo > 0.0) || asym > 1e-8 * (1.0 + m.cwiseAbs().maxCoeff())) {
      std::ostringstream msg;
      msg << "(d phi) G_P^{-1} is not symmetric positive definite at (" << x.transpose() << ")";
      throw ToricError(ErrorKind::DegenerateForm, msg.str());
    }
  }
}

Eigen::VectorXd KahlerPerturbation::map(const Eigen::VectorXd& x) const {
  PotentialJet j = canonical_.jet(x, 2);
  PotentialJet f = f_j_.jet(x, 1);
  return x + j.hessian.llt().solve(f.gradient);
}

Eigen::MatrixXd KahlerPerturbation::jacobian(const Eigen::VectorXd& x) const {
  PotentialJet j = canonical_.jet(x, 3);
  PotentialJet f = f_j_.jet(x, 2);
  const Eigen::MatrixXd ginv = j.hessian.inverse();
  const Tensor3 dginv = inverse_first_derivative(ginv, j.third);
  const Eigen::Index n = x.size();
  Eigen::MatrixXd jac = Eigen::MatrixXd::Identity(n, n) + ginv * f.hessian;
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index jj = 0; jj < n; ++jj)
      for (Eigen::Index l = 0; l < n; ++l) jac(k, jj) += dginv(jj, k, l) * f.gradient[l];
  return jac;
}

Eigen::VectorXd KahlerPerturbation::inverse_map(const Eigen::VectorXd& x_tilde,
                                                std::optional<Eigen::VectorXd> x0,
                                                const NewtonOptions& opts) const {
  const auto& p = canonical_.polytope();
  canonical_.require_interior(x_tilde);
  Eigen::VectorXd x = x0.value_or(x_tilde);
  if (!strictly_inside(p, x)) x = p.centroid();
  Eigen::VectorXd res = map(x) - x_tilde;
  for (int it = 0; it < opts.max_iterations && res.norm() > opts.tolerance; ++it) {
    const Eigen::VectorXd step = -jacobian(x).lu().solve(res);
    double alpha = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls, alpha *= 0.5) {
      Eigen::VectorXd trial = x + alpha * step;
      if (!strictly_inside(p, trial)) continue;
      Eigen::VectorXd tres = map(trial) - x_tilde;
      if (tres.norm() < res.norm()) {
        x = trial;
        res = tres;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  if (res.norm() > opts.tolerance) {
    std::ostringstream msg;
    msg << "inverse of the perturbation map did not converge; residual " << res.norm();
    throw ToricError(ErrorKind::NoConvergence, msg.str());
  }
  return x;
}

double KahlerPerturbation::corrected_potential(const Eigen::VectorXd& x_tilde) const {
  const Eigen::VectorXd x = inverse_map(x_tilde);
  PotentialJet j = canonical_.jet(x, 1);
  const double f_p = x.dot(j.gradient) - j.value;
  const double f_j = f_j_.jet(x, 0).value;
  return x_tilde.dot(j.gradient) - f_p - f_j;
}

PotentialJet KahlerPerturbation::corrected_jet(const Eigen::VectorXd& x_tilde) const {
  const Eigen::VectorXd x = inverse_map(x_tilde);
  PotentialJet j = canonical_.jet(x, 2);
  const double f_p = x.dot(j.gradient) - j.value;
  const double f_j = f_j_.jet(x, 0).value;
  PotentialJet out = PotentialJet::zero(x_tilde, 2);
  out.value = x_tilde.dot(j.gradient) - f_p - f_j;
  out.gradient = j.gradient;
  out.hessian = j.hessian * jacobian(x).inverse();
  return out;
}

double KahlerPerturbation::correction_at(const Eigen::VectorXd& x_tilde) const {
  return corrected_potential(x_tilde) - canonical_.jet(x_tilde, 0).value;
}

double KahlerPerturbation::gradient_drift(const Eigen::VectorXd& x_tilde, double step) const {
  const Eigen::VectorXd expected = canonical_.jet(inverse_map(x_tilde), 1).gradient;
  double worst = 0.0;
  for (Eigen::Index a = 0; a < x_tilde.size(); ++a) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(x_tilde.size());
    e[a] = step;
    const double fd = (corrected_potential(x_tilde + e) - corrected_potential(x_tilde - e)) / (2 * step);
    worst = std::max(worst, std::abs(fd - expected[a]));
  }
  return worst;
}

KahlerPerturbation kahler_perturbation(const DelzantPolytope& p, const CorrectionTerm& f_j,
                                       const SamplingConfig& cfg) {
  return KahlerPerturbation(p, f_j, cfg);
}

}  // namespace toric
