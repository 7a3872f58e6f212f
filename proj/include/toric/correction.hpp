#pragma once

#include "toric/jet.hpp"

#include <Eigen/Dense>

#include <array>
#include <string>
#include <variant>
#include <vector>

namespace toric {

class DelzantPolytope;

struct Monomial {
  std::vector<int> exponents;
  double coeff = 0.0;
};

// Multivariate polynomial with exact term-by-term derivatives.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::size_t dim, std::vector<Monomial> terms);

  std::size_t dim() const { return dim_; }
  const std::vector<Monomial>& terms() const { return terms_; }
  int degree() const;

  PotentialJet jet(const Eigen::VectorXd& x, int order) const;
  FieldJet field(const Eigen::VectorXd& x) const;
  double operator()(const Eigen::VectorXd& x) const;

 private:
  std::size_t dim_ = 0;
  std::vector<Monomial> terms_;
};

// One term coeff / (t - pole) of a second derivative.
struct SimplePole {
  double coeff = 0.0;
  double pole = 0.0;
};

// One-variable profile h with h'' = sum_i c_i / (t - p_i). The lower
// antiderivatives are closed form with h(0) = h'(0) = 0.
class RationalProfile {
 public:
  RationalProfile() = default;
  explicit RationalProfile(std::vector<SimplePole> poles, std::string name = {});

  // h''(t) = 2/(t^2 + 11t + 21) - 1/(t + 2).
  static RationalProfile calabi_blowup();

  // h'' = N(t)/D(t) - sum_k c_k/(t + s_k), coefficients in ascending powers.
  // D must have simple real roots and deg N < deg D.
  static RationalProfile from_rational(const std::vector<double>& numerator,
                                       const std::vector<double>& denominator,
                                       const std::vector<std::array<double, 2>>& minus_terms);

  const std::vector<SimplePole>& poles() const { return poles_; }
  const std::string& name() const { return name_; }

  // h, h', h'', h''', h'''' at t.
  std::array<double, 5> derivatives(double t) const;

  // True when no pole lies in [lo, hi].
  bool smooth_on(double lo, double hi) const;

 private:
  std::vector<SimplePole> poles_;
  std::string name_;
};

struct ZeroCorrection {};

// scale * h(<direction, x>)
struct RidgeCorrection {
  Eigen::VectorXd direction;
  RationalProfile profile;
  double scale = 1.0;
};

// Smooth term h in g = g_P + h.
class CorrectionTerm {
 public:
  using Kind = std::variant<ZeroCorrection, Polynomial, RidgeCorrection>;

  CorrectionTerm() : kind_(ZeroCorrection{}) {}
  CorrectionTerm(Kind kind) : kind_(std::move(kind)) {}  // NOLINT(implicit)

  static CorrectionTerm zero() { return CorrectionTerm(); }
  // The Calabi extremal correction on the blow-up of CP^2: 1/2 h(x1 + x2).
  static CorrectionTerm calabi_blowup();

  const Kind& kind() const { return kind_; }
  std::string kind_name() const;
  bool is_zero() const { return std::holds_alternative<ZeroCorrection>(kind_); }

  // Adds this term's derivatives to `jet` (same point and order).
  void accumulate(PotentialJet& jet) const;
  PotentialJet jet(const Eigen::VectorXd& x, int order) const;

  // Whether the term is smooth on the closed polytope. Polynomials always
  // are; ridge profiles must have no pole over the range of <w, x> on P.
  bool smooth_on(const DelzantPolytope& p) const;

 private:
  Kind kind_;
};

}  // namespace toric
