#include "toric/correction.hpp"

#include "toric/errors.hpp"
#include "toric/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace toric {

namespace {

// d^k/dx_{idx...} of coeff * prod x_i^{e_i}.
double monomial_derivative(const Monomial& m, const Eigen::VectorXd& x,
                           const std::vector<Eigen::Index>& idx) {
  std::vector<int> e = m.exponents;
  double c = m.coeff;
  for (auto i : idx) {
    auto& ei = e[static_cast<std::size_t>(i)];
    if (ei == 0) return 0.0;
    c *= ei;
    --ei;
  }
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] > 0) c *= std::pow(x[static_cast<Eigen::Index>(i)], e[i]);
  }
  return c;
}

}  // namespace

Polynomial::Polynomial(std::size_t dim, std::vector<Monomial> terms)
    : dim_(dim), terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (t.exponents.size() != dim_) {
      throw ToricError(ErrorKind::InvalidArgument, "monomial exponent list has wrong length");
    }
    if (std::any_of(t.exponents.begin(), t.exponents.end(), [](int e) { return e < 0; })) {
      throw ToricError(ErrorKind::InvalidArgument, "negative exponent");
    }
  }
}

int Polynomial::degree() const {
  int deg = 0;
  for (const auto& t : terms_) {
    int s = 0;
    for (int e : t.exponents) s += e;
    deg = std::max(deg, s);
  }
  return deg;
}

double Polynomial::operator()(const Eigen::VectorXd& x) const {
  double v = 0.0;
  for (const auto& t : terms_) v += monomial_derivative(t, x, {});
  return v;
}

PotentialJet Polynomial::jet(const Eigen::VectorXd& x, int order) const {
  const Eigen::Index n = x.size();
  if (static_cast<std::size_t>(n) != dim_) {
    throw ToricError(ErrorKind::InvalidArgument, "point dimension does not match polynomial");
  }
  PotentialJet j = PotentialJet::zero(x, order);
  for (const auto& t : terms_) {
    j.value += monomial_derivative(t, x, {});
    for (Eigen::Index a = 0; a < n && order >= 1; ++a) {
      j.gradient[a] += monomial_derivative(t, x, {a});
      for (Eigen::Index b = 0; b < n && order >= 2; ++b) {
        j.hessian(a, b) += monomial_derivative(t, x, {a, b});
        for (Eigen::Index c = 0; c < n && order >= 3; ++c) {
          j.third(a, b, c) += monomial_derivative(t, x, {a, b, c});
          for (Eigen::Index e = 0; e < n && order >= 4; ++e)
            j.fourth(a, b, c, e) += monomial_derivative(t, x, {a, b, c, e});
        }
      }
    }
  }
  return j;
}

FieldJet Polynomial::field(const Eigen::VectorXd& x) const {
  PotentialJet j = jet(x, 2);
  return FieldJet{j.value, j.gradient, j.hessian};
}

RationalProfile::RationalProfile(std::vector<SimplePole> poles, std::string name)
    : poles_(std::move(poles)), name_(std::move(name)) {
  for (const auto& p : poles_) {
    if (p.pole == 0.0) {
      throw ToricError(ErrorKind::InvalidArgument,
                       "profile pole at t = 0 conflicts with the h(0) = h'(0) = 0 normalization");
    }
  }
}

RationalProfile RationalProfile::calabi_blowup() {
  RationalProfile p = from_rational({2.0}, {21.0, 11.0, 1.0}, {{1.0, 2.0}});
  p.name_ = "calabi-blowup";
  return p;
}

RationalProfile RationalProfile::from_rational(const std::vector<double>& numerator,
                                               const std::vector<double>& denominator,
                                               const std::vector<std::array<double, 2>>& minus_terms) {
  std::vector<SimplePole> poles;
  std::size_t deg_d = denominator.size();
  while (deg_d > 0 && denominator[deg_d - 1] == 0.0) --deg_d;
  if (deg_d == 0) throw ToricError(ErrorKind::InvalidArgument, "zero denominator polynomial");
  --deg_d;
  std::size_t deg_n = numerator.size();
  while (deg_n > 0 && numerator[deg_n - 1] == 0.0) --deg_n;
  if (deg_n > 0) {
    --deg_n;
    if (deg_n >= deg_d) {
      throw ToricError(ErrorKind::InvalidArgument, "rational profile must be a proper fraction");
    }
    const double lead = denominator[deg_d];
    const auto m = static_cast<Eigen::Index>(deg_d);
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 1; i < m; ++i) companion(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < m; ++i) companion(i, m - 1) = -denominator[static_cast<std::size_t>(i)] / lead;
    Eigen::EigenSolver<Eigen::MatrixXd> es(companion, false);
    auto eval = [](const std::vector<double>& c, std::size_t deg, double t) {
      double v = 0.0;
      for (std::size_t k = deg + 1; k-- > 0;) v = v * t + c[k];
      return v;
    };
    for (Eigen::Index i = 0; i < m; ++i) {
      auto root = es.eigenvalues()[i];
      if (std::abs(root.imag()) > 1e-12 * (1.0 + std::abs(root.real()))) {
        throw ToricError(ErrorKind::InvalidArgument, "denominator has complex roots");
      }
      const double r = root.real();
      double dprime = 0.0;
      for (std::size_t k = deg_d; k >= 1; --k) dprime = dprime * r + static_cast<double>(k) * denominator[k];
      if (std::abs(dprime) < 1e-12) throw ToricError(ErrorKind::InvalidArgument, "denominator has a repeated root");
      poles.push_back(SimplePole{eval(numerator, deg_n, r) / dprime, r});
    }
    std::sort(poles.begin(), poles.end(), [](const SimplePole& a, const SimplePole& b) { return a.pole > b.pole; });
  }
  for (const auto& mt : minus_terms) poles.push_back(SimplePole{-mt[0], -mt[1]});
  return RationalProfile(std::move(poles));
}

std::array<double, 5> RationalProfile::derivatives(double t) const {
  std::array<double, 5> d{};
  for (const auto& p : poles_) {
    const double c = p.coeff;
    const double s = t - p.pole;
    const double log_s = std::log(std::abs(s));
    const double log_p = std::log(std::abs(p.pole));
    d[0] += c * (s * log_s - s) - c * (-p.pole * log_p + p.pole) - c * log_p * t;
    d[1] += c * (log_s - log_p);
    d[2] += c / s;
    d[3] += -c / (s * s);
    d[4] += 2.0 * c / (s * s * s);
  }
  return d;
}

bool RationalProfile::smooth_on(double lo, double hi) const {
  return std::none_of(poles_.begin(), poles_.end(),
                      [&](const SimplePole& p) { return p.pole >= lo && p.pole <= hi; });
}

CorrectionTerm CorrectionTerm::calabi_blowup() {
  return CorrectionTerm(RidgeCorrection{Eigen::Vector2d(1.0, 1.0), RationalProfile::calabi_blowup(), 0.5});
}

std::string CorrectionTerm::kind_name() const {
  if (std::holds_alternative<ZeroCorrection>(kind_)) return "zero";
  if (std::holds_alternative<Polynomial>(kind_)) return "polynomial";
  return "ridge";
}

void CorrectionTerm::accumulate(PotentialJet& jet) const {
  if (const auto* poly = std::get_if<Polynomial>(&kind_)) {
    jet += poly->jet(jet.point, jet.order);
  } else if (const auto* ridge = std::get_if<RidgeCorrection>(&kind_)) {
    if (ridge->direction.size() != jet.point.size()) {
      throw ToricError(ErrorKind::InvalidArgument, "ridge direction has wrong length");
    }
    auto d = ridge->profile.derivatives(ridge->direction.dot(jet.point));
    for (auto& v : d) v *= ridge->scale;
    add_ridge_terms(jet, ridge->direction, d);
  }
}

PotentialJet CorrectionTerm::jet(const Eigen::VectorXd& x, int order) const {
  PotentialJet j = PotentialJet::zero(x, order);
  accumulate(j);
  return j;
}

bool CorrectionTerm::smooth_on(const DelzantPolytope& p) const {
  const auto* ridge = std::get_if<RidgeCorrection>(&kind_);
  if (!ridge) return true;
  if (ridge->direction.size() != static_cast<Eigen::Index>(p.dim())) return false;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t v = 0; v < p.vertices().size(); ++v) {
    const double t = ridge->direction.dot(p.vertex(v));
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  return ridge->profile.smooth_on(lo, hi);
}

}  // namespace toric
