#pragma once

#include <vector>

#include "phm/expr.hpp"
#include "phm/geometry.hpp"
#include "phm/tensor.hpp"

namespace phm {

/// φ: R^m ⊇ chart → C^n given by n complex expressions in m real variables.
class SmoothMap {
 public:
  SmoothMap(int domain_dim, std::vector<Expr> components);

  int domain_dim() const { return m_; }
  int target_cdim() const { return static_cast<int>(c_.size()); }
  const std::vector<Expr>& components() const { return c_; }
  const Expr& operator[](int alpha) const { return c_[alpha]; }

 private:
  int m_;
  std::vector<Expr> c_;
};

/// φ(p), ∂φ^α/∂x^i and ∂²φ^α/∂x^i∂x^j at one point.
struct DifferentialPoint {
  VectorXcd value;                 // n
  MatrixXcd dphi;                  // n x m
  std::vector<MatrixXcd> second;   // n entries of m x m, each symmetric
};

DifferentialPoint differential(const SmoothMap& phi, const VectorXd& p);

/// Σ_ij g^{ij} ∂_iφ^α ∂_jφ^β for all α, β (complex bilinear, no conjugation).
MatrixXcd phwc_gram(const MatrixXcd& dphi, const MatrixXd& g_inv);

/// max_{α,β} |Σ g^{ij} ∂_iφ^α ∂_jφ^β|.
double phwc_residual_coord(const SmoothMap& phi, const MetricField& g, const VectorXd& p);

/// max_{α,β} |g(v_α, v_β)| where v_α is the metric dual of the covector dφ*(dz^α).
double isotropy_residual(const SmoothMap& phi, const MetricField& g, const VectorXd& p);

/// Frobenius norm of [dφ∘dφ*, J] on T^C N in the (∂_z, ∂_z̄) basis.
double phwc_residual_commutator(const SmoothMap& phi, const MetricField& g, const HermitianMetricField& h,
                                const VectorXd& p);

struct HWCReport {
  double lambda_sq = 0.0;  // fitted dilation λ²
  double defect = 0.0;     // ‖G − λ² h^{..}‖_F at the fit
};

/// Least-squares fit of g^{ij}∂_iφ^A∂_jφ^B = λ² h^{AB} over A, B ∈ {α, ᾱ}.
HWCReport hwc_report(const SmoothMap& phi, const MetricField& g, const HermitianMetricField& h,
                     const VectorXd& p);

struct TensionPoint {
  VectorXcd tau;  // holomorphic components τ^α

  double harmonic_residual() const { return tau.size() ? tau.cwiseAbs().maxCoeff() : 0.0; }
  /// Real tension vector in interleaved target coordinates (re τ^α, im τ^α).
  VectorXd real() const { return real_point(tau); }
};

/// τ^α = g^{ij}(∂_ijφ^α − ᴹΓ^k_ij ∂_kφ^α + Γ^α_{βγ}(φ) ∂_iφ^β ∂_jφ^γ).
/// Valid for Kähler targets only. Errors: TargetNotKaehler, MetricNotSPD, MetricNotPD.
TensionPoint tension(const SmoothMap& phi, const MetricField& g, const HermitianMetricField& h,
                     const VectorXd& p);
TensionPoint tension_at(const DifferentialPoint& d, const MetricField& g, const HermitianMetricField& h,
                        const VectorXd& p);

/// Tension of φ computed with the full Levi-Civita connection of the real
/// metric Re h on R^{2n}; valid for any Hermitian h. Returned in complex form
/// τ^α = τ^{re z^α} + i τ^{im z^α}.
TensionPoint tension_levi_civita(const SmoothMap& phi, const MetricField& g, const HermitianMetricField& h,
                                 const VectorXd& p);

/// Pluriharmonicity of f: C^n ⊇ chart → C^r (domain in interleaved real coordinates).
/// Flat target: max |∂²f^a/∂z^α∂z̄^β| over a, α, β. Errors: SourceNotKaehler.
double pluriharmonic_residual(const SmoothMap& f, const HermitianMetricField& source, const VectorXd& z);
/// Same with a Kähler target chart k on C^r, adding Γ^a_{bc} ∂_{z^α}f^b ∂_{z̄^β}f^c
/// (and the conjugate equations for the ā components).
double pluriharmonic_residual(const SmoothMap& f, const HermitianMetricField& source,
                              const HermitianMetricField& target, const VectorXd& z);

/// ψ∘φ by substituting re φ^α, im φ^α for ψ's interleaved chart coordinates.
/// Errors: DimensionMismatch.
SmoothMap compose(const SmoothMap& psi, const SmoothMap& phi);

/// max |∂ψ^a/∂z̄^α| at w (zero iff ψ is holomorphic there).
double holomorphy_residual(const SmoothMap& psi, const VectorXd& w);
/// max |∂ψ^a/∂z^α| at w (zero iff ψ is antiholomorphic there).
double antiholomorphy_residual(const SmoothMap& psi, const VectorXd& w);

}  // namespace phm
