#include "toric/cohomology.hpp"

#include "toric/errors.hpp"
#include "toric/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace toric {

FormCoefficients ddbar_coefficients(const SymplecticPotential& g, const FieldJet& nu, const Eigen::VectorXd& x) {
  const MetricSample m = metric_sample(g, x, 3);
  const Eigen::Index n = x.size();
  FormCoefficients out{x, Eigen::MatrixXd::Zero(n, n)};
  const Eigen::MatrixXd ginv_hess = m.Ginv * nu.hessian;  // (k, j) = G^{kl} ν_lj
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) {
      double c = ginv_hess(k, j);
      for (Eigen::Index l = 0; l < n; ++l) c += m.dGinv(j, k, l) * nu.gradient[l];
      out.C(j, k) = c;
    }
  return out;
}

FormCoefficients ddbar_coefficients(const SymplecticPotential& g, const ScalarField& nu, const Eigen::VectorXd& x) {
  return ddbar_coefficients(g, nu(x), x);
}

FormCoefficients generator_form(const DelzantPolytope& p, std::size_t r, const Eigen::VectorXd& x) {
  if (r >= p.num_facets()) throw ToricError(ErrorKind::InvalidArgument, "facet index out of range");
  const SymplecticPotential g = canonical_potential(p);
  const PotentialJet j = g.jet(x, 3);
  Eigen::LLT<Eigen::MatrixXd> llt(j.hessian);
  if (llt.info() != Eigen::Success) throw ToricError(ErrorKind::NotPositiveDefinite, "Hessian is not positive definite");
  const Eigen::Index n = x.size();
  const Eigen::VectorXd mu = p.normal(r);
  const double ell = p.ell(r, x);
  const Eigen::VectorXd v = llt.solve(mu);  // G^{-1} μ
  FormCoefficients out{x, Eigen::MatrixXd::Zero(n, n)};
  for (Eigen::Index a = 0; a < n; ++a) {
    // d_a(G^{-1} μ) = -G^{-1} (d_a G) G^{-1} μ
    const Eigen::VectorXd dv = -llt.solve(slice(j.third, a) * v);
    out.C.row(a) = (dv / ell - v * mu[a] / (ell * ell)).transpose();
  }
  out.C *= -1.0 / (4.0 * std::numbers::pi);
  return out;
}

ScalarField log_ell_field(const DelzantPolytope& p, std::size_t r) {
  const Eigen::VectorXd mu = p.normal(r);
  return [p, r, mu](const Eigen::VectorXd& x) {
    const double ell = p.ell(r, x);
    if (!(ell > 0.0)) throw ToricError(ErrorKind::BoundaryPoint, "log ℓ is singular on its facet");
    return FieldJet{std::log(ell), mu / ell, -mu * mu.transpose() / (ell * ell)};
  };
}

ScalarField legendre_field(const SymplecticPotential& g) {
  return [g](const Eigen::VectorXd& x) {
    const PotentialJet j = g.jet(x, 3);
    Eigen::MatrixXd hess = j.hessian;
    for (Eigen::Index m = 0; m < x.size(); ++m) hess += x[m] * slice(j.third, m);
    return FieldJet{x.dot(j.gradient) - j.value, j.hessian * x, hess};
  };
}

ScalarField polynomial_field(const Polynomial& poly) {
  return [poly](const Eigen::VectorXd& x) { return poly.field(x); };
}

ScalarField linear_field(const Eigen::VectorXd& m) {
  return [m](const Eigen::VectorXd& x) {
    return FieldJet{m.dot(x), m, Eigen::MatrixXd::Zero(x.size(), x.size())};
  };
}

namespace {

RationalMatrix normals_matrix(const DelzantPolytope& p) {
  RationalMatrix n;
  for (const auto& f : p.facets()) {
    RationalVector row;
    for (auto v : f.normal) row.emplace_back(v);
    n.push_back(std::move(row));
  }
  return n;
}

}  // namespace

H2Report h2_dimension(const DelzantPolytope& p) {
  H2Report rep;
  rep.kernel_basis = normals_matrix(p);
  rep.dim = p.num_facets() - rank(rep.kernel_basis);
  return rep;
}

ClassVector symplectic_class(const DelzantPolytope& p) {
  ClassVector c;
  for (const auto& f : p.facets()) c.coefficients.push_back(-f.offset);
  c.kernel_basis = normals_matrix(p);
  return c;
}

bool same_class(const ClassVector& a, const ClassVector& b) {
  if (a.coefficients.size() != b.coefficients.size() || a.kernel_basis.size() != a.coefficients.size()) {
    throw ToricError(ErrorKind::InvalidArgument, "class vectors have different lengths");
  }
  RationalMatrix augmented = a.kernel_basis;
  for (std::size_t i = 0; i < augmented.size(); ++i) augmented[i].push_back(a.coefficients[i] - b.coefficients[i]);
  return rank(augmented) == rank(a.kernel_basis);
}

StandardRepresentativeReport standard_representative(const DelzantPolytope& p,
                                                     const std::vector<Eigen::VectorXd>& samples, double tol) {
  StandardRepresentativeReport rep;
  const IntVector sum = normal_sum(p);
  rep.normal_sum_zero = std::all_of(sum.begin(), sum.end(), [](std::int64_t v) { return v == 0; });
  rep.samples = samples.size();
  const auto n = static_cast<Eigen::Index>(p.dim());
  for (const auto& x : samples) {
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t r = 0; r < p.num_facets(); ++r) c += -2.0 * std::numbers::pi * p.offset(r) * generator_form(p, r, x).C;
    rep.max_deviation = std::max(rep.max_deviation, (c - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff());
  }
  rep.pointwise_standard = rep.max_deviation <= tol;
  return rep;
}

}  // namespace toric
