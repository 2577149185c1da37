#pragma once

#include <functional>
#include <string>
#include <vector>

#include "phm/geometry.hpp"
#include "phm/maps.hpp"
#include "phm/tensor.hpp"

namespace phm {

inline constexpr double kRankTol = 1e-8;
inline constexpr double kPhwcGate = 1e-8;

/// The associated f-structure at a point.
///
/// T⁺ = ker(F − i) is spanned by the vectors g^{-1}(∂φ^α)^H, so that the
/// covectors ∂_iφ^α dx^i span the +i eigenspace of F acting on T*M and
/// dφ∘F = J∘dφ.
struct FStructurePoint {
  MatrixXd F;
  MatrixXcd Pplus, Pminus, Pzero;
  MatrixXcd basis;            // columns: h-orthonormal basis of T⁺, h(X, Y) = X^T g conj(Y)
  int rank = 0;               // real rank, 2 × complex rank of T⁺
  double imag_residual = 0.0; // max |Im i(P⁺ − P⁻)| before the real part was taken
};

/// Errors: NotPHWCAtPoint (coordinate residual > kPhwcGate), RankDeficiencyAmbiguous
/// (a Gram–Schmidt pivot falls in [rank_tol/10, rank_tol]), metric errors.
FStructurePoint associated_f_structure(const SmoothMap& phi, const MetricField& g, const VectorXd& p,
                                       double rank_tol = kRankTol);
FStructurePoint associated_f_structure_at(const MatrixXcd& dphi, const MetricPoint& mp,
                                          double rank_tol = kRankTol);

/// Projectors of an arbitrary f-structure matrix: P± = ½(−F² ∓ iF), P⁰ = Id + F².
FStructurePoint f_structure_from_matrix(const MatrixXd& F, const MatrixXd& g);

struct FAlgebraResiduals {
  double cubic = 0.0;      // ‖F³ + F‖
  double skew = 0.0;       // ‖gF + (gF)^T‖
  double projector = 0.0;  // sum, idempotence, mutual annihilation, F = i(P⁺ − P⁻), P⁻ = conj P⁺
  double reality = 0.0;    // imaginary part discarded from F

  double max() const { return std::max({cubic, skew, projector, reality}); }
};

FAlgebraResiduals f_algebra_residuals(const FStructurePoint& fs, const MatrixXd& g);

/// Rebuild T⁺ = ker(F − i) from F alone and compare it with the bundle the map defines.
struct BijectionCheck {
  double isotropy = 0.0;         // max |b_a^T g b_b| over an orthonormal basis of ker(F − i)
  double angle_covectors = 0.0;  // largest principal angle, ker(F^T − i) vs span{∂φ^α}
  double angle_vectors = 0.0;    // largest principal angle, ker(F − i) vs span{g^{-1} conj ∂φ^α}
};

BijectionCheck bijection_round_trip(const FStructurePoint& fs, const MatrixXcd& dphi, const MatrixXd& g);

/// max |(dφ F)^α_j − i (dφ)^α_j|.
double f_holomorphy_residual(const SmoothMap& phi, const FStructurePoint& fs, const VectorXd& p);
/// ‖dφ · P⁰‖ (max entry); zero means dφ(T⁰M) = 0.
double zero_part_residual(const SmoothMap& phi, const FStructurePoint& fs, const VectorXd& p);

/// An f-structure evaluable at any point near the sample.
using FField = std::function<FStructurePoint(const VectorXd&)>;

FField associated_f_field(const SmoothMap& phi, const MetricField& g, double rank_tol = kRankTol);
FField constant_f_field(const FStructurePoint& fs);

/// Central differences of an F-field on the 2m-point stencil around p.
struct FFieldJet {
  FStructurePoint center;
  std::vector<MatrixXd> dF;       // dF[l] = ∂_l F
  std::vector<MatrixXcd> dPplus;  // dPplus[l] = ∂_l P⁺
};

/// Errors: RankJumpOnStencil when any stencil rank differs from the centre.
FFieldJet stencil_jet(const FField& field, const VectorXd& p, double h_step);

/// max |N^k_ij|, N^k_ij = F^l_i ∂_l F^k_j − F^l_j ∂_l F^k_i − F^k_l(∂_i F^l_j − ∂_j F^l_i).
double nijenhuis_residual(const FField& field, const VectorXd& p, double h_step);

/// max |∂_i F^k_j + Γ^k_il F^l_j − Γ^l_ij F^k_l|.
double parallel_residual(const FField& field, const MetricField& g, const VectorXd& p, double h_step);

struct TwoFormPoint {
  MatrixXd omega;      // ω_ij = g_ik F^k_j
  RealTensor3 domega;  // (dω)_ijk = ∂_i ω_jk − ∂_j ω_ik + ∂_k ω_ij
};

TwoFormPoint fundamental_two_form(const MetricField& g, const FField& field, const VectorXd& p, double h_step);

/// max |dω(u, v, w)| over basis vectors with u, v of one type and w of another,
/// types taken from the projector images at p.
double domega_12_residual(const MetricField& g, const FField& field, const VectorXd& p, double h_step);

/// max ‖(∇_X θ) P⁰‖ over an orthonormal basis X of T⁰ and a frame θ of T*⁺.
double met_residual(const MetricField& g, const FField& field, const VectorXd& p, double h_step);

/// One map sampled at fixed points for the implication harness.
struct SuiteCase {
  std::string name;
  SmoothMap map;
  MetricField g;
  HermitianMetricField h;
  std::vector<VectorXd> points;
  double h_step = 1e-4;
};

struct ImplicationTolerances {
  double eps = 1e-8;    // premise threshold
  double delta = 1e-6;  // conclusion threshold
  double phwc_gate = kPhwcGate;
  double rank_tol = kRankTol;
};

struct SampleDiagnostics {
  std::string case_name;
  int point_index = 0;
  VectorXd point;
  std::string status;  // "evaluated" or "skipped: <ErrorKind>"
  int rank = 0;
  double phwc = 0.0;
  double harmonic = 0.0;          // Levi-Civita tension, any Hermitian target
  double harmonic_kaehler = 0.0;  // holomorphic-Christoffel tension (trusts the Kähler flag)
  double parallel = 0.0;
  double nijenhuis = 0.0;
  double met = 0.0;
  double domega12 = 0.0;
};

struct Counterexample {
  std::string theorem;  // "parallel=>harmonic" or "integrable+met+domega12=>harmonic"
  SampleDiagnostics sample;
};

struct TheoremSuiteReport {
  std::vector<SampleDiagnostics> samples;
  std::vector<Counterexample> counterexamples;
  int premise_parallel = 0;  // samples where the parallel premise held
  int premise_prop = 0;      // samples where all three conditions held

  int evaluated() const;
  int skipped() const;
};

/// Evaluate both implications at every sample. Samples failing the PHWC gate
/// or hitting a stencil/rank error are skipped, never counted as evidence.
TheoremSuiteReport theorem_suite(const std::vector<SuiteCase>& cases, const ImplicationTolerances& tol = {});

}  // namespace phm
