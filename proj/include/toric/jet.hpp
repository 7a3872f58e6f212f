#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <vector>

namespace toric {

// Dense rank-R tensor over R^n, index order as written.
template <std::size_t R>
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(Eigen::Index n) : n_(n), data_(static_cast<std::size_t>(size_for(n)), 0.0) {}

  Eigen::Index dim() const { return n_; }
  bool empty() const { return data_.empty(); }

  template <typename... I>
  double& operator()(I... idx) {
    static_assert(sizeof...(I) == R);
    return data_[offset({static_cast<Eigen::Index>(idx)...})];
  }
  template <typename... I>
  double operator()(I... idx) const {
    static_assert(sizeof...(I) == R);
    return data_[offset({static_cast<Eigen::Index>(idx)...})];
  }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  Tensor& operator+=(const Tensor& other) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
  }

  // Largest |T(i..) - T(perm(i..))| over all index permutations.
  double symmetry_defect() const;

 private:
  static Eigen::Index size_for(Eigen::Index n) {
    Eigen::Index s = 1;
    for (std::size_t i = 0; i < R; ++i) s *= n;
    return s;
  }
  std::size_t offset(const std::array<Eigen::Index, R>& idx) const {
    std::size_t o = 0;
    for (auto i : idx) o = o * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i);
    return o;
  }

  Eigen::Index n_ = 0;
  std::vector<double> data_;
};

using Tensor3 = Tensor<3>;
using Tensor4 = Tensor<4>;

// Derivatives of a scalar function at a point up to `order` (0..4). Entries
// above the requested order are left empty.
struct PotentialJet {
  Eigen::VectorXd point;
  int order = 0;
  double value = 0.0;
  Eigen::VectorXd gradient;
  Eigen::MatrixXd hessian;
  Tensor3 third;
  Tensor4 fourth;

  static PotentialJet zero(const Eigen::VectorXd& x, int order);
  PotentialJet& operator+=(const PotentialJet& other);
};

// Value, gradient and Hessian of a test function or form potential.
struct FieldJet {
  double value = 0.0;
  Eigen::VectorXd gradient;
  Eigen::MatrixXd hessian;
};

// Adds c * w^{(x)k} to the order-k slot of the jet for k = 0..jet.order, with
// derivs[k] the k-th derivative of a one-variable profile at <w, x>.
void add_ridge_terms(PotentialJet& jet, const Eigen::VectorXd& w,
                     const std::array<double, 5>& derivs);

}  // namespace toric

namespace toric {

// d_j (G^{-1})_{kl} from G^{-1} and the third jet: -(G^{-1} d_jG G^{-1})_{kl}.
Tensor3 inverse_first_derivative(const Eigen::MatrixXd& ginv, const Tensor3& third);

// d_j d_m (G^{-1})_{kl}, indices (j, m, k, l).
Tensor4 inverse_second_derivative(const Eigen::MatrixXd& ginv, const Tensor3& third,
                                  const Tensor4& fourth);

// Slice T(j, ., .) as a matrix.
Eigen::MatrixXd slice(const Tensor3& t, Eigen::Index j);
Eigen::MatrixXd slice(const Tensor4& t, Eigen::Index j, Eigen::Index m);

}  // namespace toric
