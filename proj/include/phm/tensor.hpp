#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace phm {

using Complex = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

/// Dense rank-3 array indexed (upper, lower1, lower2), e.g. Christoffel symbols
/// Γ^k_ij stored as t(k, i, j).
template <typename Scalar>
class Tensor3 {
 public:
  Tensor3() = default;
  Tensor3(int d0, int d1, int d2) : d_{d0, d1, d2}, data_(static_cast<size_t>(d0) * d1 * d2, Scalar(0)) {}

  int dim(int axis) const { return d_[axis]; }

  Scalar& operator()(int a, int b, int c) { return data_[index(a, b, c)]; }
  const Scalar& operator()(int a, int b, int c) const { return data_[index(a, b, c)]; }

  /// Largest modulus of any entry.
  double max_abs() const {
    double out = 0.0;
    for (const auto& v : data_) out = std::max(out, static_cast<double>(std::abs(v)));
    return out;
  }

  /// Slice with the first index fixed, as a d1 x d2 matrix.
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> slice(int a) const {
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(d_[1], d_[2]);
    for (int b = 0; b < d_[1]; ++b)
      for (int c = 0; c < d_[2]; ++c) out(b, c) = (*this)(a, b, c);
    return out;
  }

 private:
  size_t index(int a, int b, int c) const {
    return (static_cast<size_t>(a) * d_[1] + b) * d_[2] + c;
  }

  int d_[3] = {0, 0, 0};
  std::vector<Scalar> data_;
};

using RealTensor3 = Tensor3<double>;
using ComplexTensor3 = Tensor3<Complex>;

}  // namespace phm
