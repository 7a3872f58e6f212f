#include "toric/jet.hpp"

#include <algorithm>
#include <cmath>

namespace toric {

template <std::size_t R>
double Tensor<R>::symmetry_defect() const {
  double worst = 0.0;
  std::array<Eigen::Index, R> idx{};
  const std::size_t total = data_.size();
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (std::size_t k = R; k-- > 0;) {
      idx[k] = static_cast<Eigen::Index>(rem % static_cast<std::size_t>(n_));
      rem /= static_cast<std::size_t>(n_);
    }
    auto perm = idx;
    std::sort(perm.begin(), perm.end());
    do {
      worst = std::max(worst, std::abs(data_[flat] - data_[offset(perm)]));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return worst;
}

template class Tensor<3>;
template class Tensor<4>;

PotentialJet PotentialJet::zero(const Eigen::VectorXd& x, int order) {
  const Eigen::Index n = x.size();
  PotentialJet j;
  j.point = x;
  j.order = order;
  if (order >= 1) j.gradient = Eigen::VectorXd::Zero(n);
  if (order >= 2) j.hessian = Eigen::MatrixXd::Zero(n, n);
  if (order >= 3) j.third = Tensor3(n);
  if (order >= 4) j.fourth = Tensor4(n);
  return j;
}

PotentialJet& PotentialJet::operator+=(const PotentialJet& other) {
  value += other.value;
  if (order >= 1) gradient += other.gradient;
  if (order >= 2) hessian += other.hessian;
  if (order >= 3) third += other.third;
  if (order >= 4) fourth += other.fourth;
  return *this;
}

void add_ridge_terms(PotentialJet& jet, const Eigen::VectorXd& w,
                     const std::array<double, 5>& derivs) {
  const Eigen::Index n = w.size();
  jet.value += derivs[0];
  if (jet.order >= 1) jet.gradient += derivs[1] * w;
  if (jet.order >= 2) jet.hessian += derivs[2] * w * w.transpose();
  if (jet.order >= 3) {
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index b = 0; b < n; ++b)
        for (Eigen::Index c = 0; c < n; ++c) jet.third(a, b, c) += derivs[3] * w[a] * w[b] * w[c];
  }
  if (jet.order >= 4) {
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index b = 0; b < n; ++b)
        for (Eigen::Index c = 0; c < n; ++c)
          for (Eigen::Index e = 0; e < n; ++e)
            jet.fourth(a, b, c, e) += derivs[4] * w[a] * w[b] * w[c] * w[e];
  }
}

}  // namespace toric

namespace toric {

Eigen::MatrixXd slice(const Tensor3& t, Eigen::Index j) {
  const Eigen::Index n = t.dim();
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b) m(a, b) = t(j, a, b);
  return m;
}

Eigen::MatrixXd slice(const Tensor4& t, Eigen::Index j, Eigen::Index k) {
  const Eigen::Index n = t.dim();
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b) m(a, b) = t(j, k, a, b);
  return m;
}

Tensor3 inverse_first_derivative(const Eigen::MatrixXd& ginv, const Tensor3& third) {
  const Eigen::Index n = ginv.rows();
  Tensor3 out(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::MatrixXd e = -ginv * slice(third, j) * ginv;
    for (Eigen::Index k = 0; k < n; ++k)
      for (Eigen::Index l = 0; l < n; ++l) out(j, k, l) = e(k, l);
  }
  return out;
}

Tensor4 inverse_second_derivative(const Eigen::MatrixXd& ginv, const Tensor3& third,
                                  const Tensor4& fourth) {
  const Eigen::Index n = ginv.rows();
  std::vector<Eigen::MatrixXd> d(static_cast<std::size_t>(n)), e(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    d[static_cast<std::size_t>(j)] = slice(third, j);
    e[static_cast<std::size_t>(j)] = ginv * d[static_cast<std::size_t>(j)] * ginv;
  }
  Tensor4 out(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index m = 0; m < n; ++m) {
      const auto& ej = e[static_cast<std::size_t>(j)];
      const auto& em = e[static_cast<std::size_t>(m)];
      Eigen::MatrixXd v = ej * d[static_cast<std::size_t>(m)] * ginv +
                          em * d[static_cast<std::size_t>(j)] * ginv -
                          ginv * slice(fourth, j, m) * ginv;
      for (Eigen::Index k = 0; k < n; ++k)
        for (Eigen::Index l = 0; l < n; ++l) out(j, m, k, l) = v(k, l);
    }
  }
  return out;
}

}  // namespace toric
