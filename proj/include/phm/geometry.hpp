#pragma once

#include <vector>

#include "phm/expr.hpp"
#include "phm/tensor.hpp"

namespace phm {

/// Smallest eigenvalue a metric may have at a queried point.
inline constexpr double kSpdEps = 1e-10;

/// Riemannian metric g_ij(x) on a chart of R^m. Only the upper triangle of the
/// supplied grid is read; the lower triangle mirrors it.
class MetricField {
 public:
  MetricField(int dim, const std::vector<std::vector<Expr>>& components);

  static MetricField euclidean(int dim);
  /// factor(x) * Id.
  static MetricField conformal(int dim, const Expr& factor);

  int dim() const { return dim_; }
  const Expr& operator()(int i, int j) const { return c_[static_cast<size_t>(i) * dim_ + j]; }
  /// True when no component depends on the coordinates.
  bool is_constant() const;

 private:
  int dim_;
  std::vector<Expr> c_;
};

/// A metric sampled at a point together with its first derivatives.
struct MetricPoint {
  MatrixXd g;
  MatrixXd g_inv;
  std::vector<MatrixXd> dg;  // dg[l](i, j) = ∂_l g_ij
};

/// Errors: MetricNotSPD (smallest eigenvalue <= kSpdEps, or g g^-1 != Id).
MetricPoint evaluate_metric(const MetricField& g, const VectorXd& p);

/// Γ^k_ij = ½ g^{kl}(∂_i g_lj + ∂_j g_li − ∂_l g_ij), stored t(k, i, j).
RealTensor3 christoffel_from(const MetricPoint& mp);
RealTensor3 christoffel_domain(const MetricField& g, const VectorXd& p);

/// Δf = g^{ij}(∂_ij f − Γ^k_ij ∂_k f) for a complex-valued f.
Complex laplace_beltrami_complex(const Expr& f, const MetricField& g, const VectorXd& p);
/// Real part of laplace_beltrami_complex; f is expected to be real-valued.
double laplace_beltrami(const Expr& f, const MetricField& g, const VectorXd& p);

/// Hermitian metric h_{αβ̄}(z) on one holomorphic chart of C^n. Components are
/// expressions in the interleaved real coordinates (re z1, im z1, re z2, ...),
/// i.e. x_{2α+1} = re z^α and x_{2α+2} = im z^α in text. Only the upper triangle
/// (with diagonal) is read; h_{βᾱ} = conj(h_{αβ̄}).
class HermitianMetricField {
 public:
  HermitianMetricField(int cdim, const std::vector<std::vector<Expr>>& components, bool kaehler);

  static HermitianMetricField flat(int cdim);
  /// h_{αβ̄} = ((1+|z|²)δ_{αβ} − z̄_α z_β) / (1+|z|²)²; for n = 1 this is (1+|z|²)^-2.
  static HermitianMetricField fubini_study(int cdim);
  /// h_{αβ̄} = ∂²K/∂z^α∂z̄^β for a real potential K; always Kähler.
  static HermitianMetricField from_potential(int cdim, const Expr& potential);

  int cdim() const { return n_; }
  bool kaehler() const { return kaehler_; }
  const Expr& operator()(int a, int b) const { return c_[static_cast<size_t>(a) * n_ + b]; }
  bool is_constant() const;

  /// Same components with the Kähler claim replaced (used to forge negative controls).
  HermitianMetricField with_kaehler_flag(bool kaehler) const;

 private:
  int n_;
  std::vector<Expr> c_;
  bool kaehler_;
};

/// Interleave a complex point into real chart coordinates.
VectorXd real_point(const VectorXcd& z);

struct HermitianPoint {
  MatrixXcd h;                   // h(α, β) = h_{αβ̄}
  MatrixXcd h_inv;               // ordinary matrix inverse of h
  std::vector<MatrixXcd> dreal;  // dreal[l] = ∂h/∂y_l, y the interleaved real coordinates

  /// ∂h/∂z^γ = ½(∂_{re z^γ} − i ∂_{im z^γ}) h
  MatrixXcd dz(int gamma) const;
  /// ∂h/∂z̄^γ
  MatrixXcd dzbar(int gamma) const;
};

/// Errors: MetricNotPD.
HermitianPoint evaluate_hermitian(const HermitianMetricField& h, const VectorXd& y);

/// Γ^α_{βγ} = h^{αδ̄} ∂_{z^β} h_{γδ̄}, stored t(α, β, γ).
ComplexTensor3 christoffel_kaehler(const HermitianPoint& hp);
ComplexTensor3 christoffel_kaehler(const HermitianMetricField& h, const VectorXd& y);

/// max_{α,β,γ} |∂_{z^α} h_{βγ̄} − ∂_{z^β} h_{αγ̄}|; zero iff the Kähler form is closed.
double kaehler_residual(const HermitianMetricField& h, const VectorXd& y);

/// The Riemannian metric Re(h_{αβ̄} ξ^α conj(η^β)) on R^{2n} (interleaved
/// coordinates) with its first derivatives.
MetricPoint target_real_metric(const HermitianPoint& hp);

}  // namespace phm
