#include "toric/geometry.hpp"

#include "toric/errors.hpp"
#include "toric/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace toric {

MetricSample metric_sample(const SymplecticPotential& g, const Eigen::VectorXd& x, int order) {
  PotentialJet j = g.jet(x, std::clamp(order, 2, 4));
  Eigen::LLT<Eigen::MatrixXd> llt(j.hessian);
  if (llt.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "Hessian is not positive definite at (" << x.transpose() << ")";
    throw ToricError(ErrorKind::NotPositiveDefinite, msg.str());
  }
  MetricSample m;
  m.point = x;
  m.G = j.hessian;
  m.Ginv = llt.solve(Eigen::MatrixXd::Identity(x.size(), x.size()));
  m.Ginv = 0.5 * (m.Ginv + m.Ginv.transpose());
  const Eigen::MatrixXd l = llt.matrixL();
  m.detG = l.diagonal().prod();
  m.detG *= m.detG;
  if (order >= 3) m.dGinv = inverse_first_derivative(m.Ginv, j.third);
  if (order >= 4) m.d2Ginv = inverse_second_derivative(m.Ginv, j.third, j.fourth);
  return m;
}

double scalar_curvature(const SymplecticPotential& g, const Eigen::VectorXd& x) {
  MetricSample m = metric_sample(g, x, 4);
  double s = 0.0;
  const Eigen::Index n = x.size();
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) s += m.d2Ginv(j, k, j, k);
  return -0.5 * s;
}

Eigen::VectorXd log_det_gradient(const PotentialJet& jet, const Eigen::MatrixXd& ginv) {
  const Eigen::Index n = ginv.rows();
  Eigen::VectorXd out(n);
  for (Eigen::Index k = 0; k < n; ++k) out[k] = (ginv * slice(jet.third, k)).trace();
  return out;
}

double scalar_curvature_alt(const SymplecticPotential& g, const Eigen::VectorXd& x) {
  PotentialJet j = g.jet(x, 4);
  Eigen::LLT<Eigen::MatrixXd> llt(j.hessian);
  if (llt.info() != Eigen::Success) {
    throw ToricError(ErrorKind::NotPositiveDefinite, "Hessian is not positive definite");
  }
  const Eigen::Index n = x.size();
  const Eigen::MatrixXd ginv = llt.solve(Eigen::MatrixXd::Identity(n, n));
  std::vector<Eigen::MatrixXd> dg(static_cast<std::size_t>(n)), dginv(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    dg[static_cast<std::size_t>(k)] = slice(j.third, k);
    dginv[static_cast<std::size_t>(k)] = -ginv * dg[static_cast<std::size_t>(k)] * ginv;
  }
  const Eigen::VectorXd dlog = log_det_gradient(j, ginv);
  double s = 0.0;
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index k = 0; k < n; ++k) {
      // d_a (d_k log det G) = tr(d_a G^{-1} d_k G) + tr(G^{-1} d_a d_k G)
      const double d2log = (dginv[static_cast<std::size_t>(a)] * dg[static_cast<std::size_t>(k)]).trace() +
                           (ginv * slice(j.fourth, a, k)).trace();
      s += dginv[static_cast<std::size_t>(a)](a, k) * dlog[k] + ginv(a, k) * d2log;
    }
  }
  return 0.5 * s;
}

ExtremalityReport extremality_test(const SymplecticPotential& g,
                                   const std::vector<Eigen::VectorXd>& samples, double tol) {
  ExtremalityReport rep;
  rep.tolerance = tol;
  rep.samples = samples.size();
  const auto n = static_cast<Eigen::Index>(g.dim());
  if (samples.empty()) throw ToricError(ErrorKind::InvalidArgument, "no interior samples");
  const auto m = static_cast<Eigen::Index>(samples.size());
  Eigen::MatrixXd basis(m, n + 1);
  Eigen::VectorXd s(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& x = samples[static_cast<std::size_t>(i)];
    basis(i, 0) = 1.0;
    basis.row(i).tail(n) = x.transpose();
    s[i] = scalar_curvature(g, x);
  }
  Eigen::VectorXd coef = basis.colPivHouseholderQr().solve(s);
  rep.constant = coef[0];
  rep.gradient = coef.tail(n);
  rep.residual_sup = (basis * coef - s).cwiseAbs().maxCoeff();
  rep.is_extremal = rep.residual_sup <= tol;
  return rep;
}

ExtremalityReport extremality_test(const SymplecticPotential& g, const SamplingConfig& cfg, double tol) {
  return extremality_test(g, interior_samples(g.polytope(), cfg), tol);
}

HexagonReport hexagon_fixture_check(const SamplingConfig& cfg) {
  HexagonReport rep;
  const DelzantPolytope hex = fixtures::hexagon();
  const SymplecticPotential g = canonical_potential(hex);
  const auto samples = interior_samples(hex, cfg);
  rep.extremality = extremality_test(g, samples);
  rep.non_extremal = !rep.extremality.is_extremal;
  rep.scalar_at_center = scalar_curvature(g, Eigen::Vector2d::Zero());

  // Generators of the hexagon's lattice symmetry group (order 12).
  std::vector<Eigen::Matrix2d> symmetries(3);
  symmetries[0] << 0, -1, 1, 1;   // rotation by 60 degrees in lattice terms
  symmetries[1] << 0, 1, 1, 0;    // swap
  symmetries[2] << -1, 0, 0, -1;  // point reflection
  for (const auto& x : samples) {
    const double s = scalar_curvature(g, x);
    for (const auto& a : symmetries) {
      rep.symmetry_defect = std::max(rep.symmetry_defect, std::abs(scalar_curvature(g, a * x) - s));
    }
  }

  const RationalVector shift{Rational(1, 3), Rational(-2, 5)};
  const Eigen::Vector2d t(1.0 / 3.0, -2.0 / 5.0);
  const SymplecticPotential moved = canonical_potential(translate(hex, shift));
  std::vector<Eigen::VectorXd> moved_samples;
  for (const auto& x : samples) moved_samples.push_back(x + t);
  ExtremalityReport other = extremality_test(moved, moved_samples);
  rep.translation_defect = std::abs(other.residual_sup - rep.extremality.residual_sup);
  return rep;
}

}  // namespace toric
