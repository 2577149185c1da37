#include "phm/maps.hpp"

#include <string>

#include "phm/error.hpp"
#include "phm/jet.hpp"

namespace phm {

namespace {

constexpr Complex kI(0.0, 1.0);

void require_kaehler(const HermitianMetricField& h, ErrorKind kind, const char* what) {
  if (!h.kaehler()) throw Error(kind, std::string(what) + " is not flagged Kähler");
}

// Rows (α then ᾱ) of the differential acting on T^C N.
MatrixXcd full_differential(const MatrixXcd& dphi) {
  const Eigen::Index n = dphi.rows();
  MatrixXcd full(2 * n, dphi.cols());
  full.topRows(n) = dphi;
  full.bottomRows(n) = dphi.conjugate();
  return full;
}

// Complex-bilinear extension of Re h to T^C N in the (∂_α, ∂_ᾱ) basis:
// h(∂_α, ∂_β̄) = ½ h_{αβ̄}, h(∂_α, ∂_β) = 0.
MatrixXcd bilinear_target_metric(const MatrixXcd& h) {
  const Eigen::Index n = h.rows();
  MatrixXcd out = MatrixXcd::Zero(2 * n, 2 * n);
  out.topRightCorner(n, n) = 0.5 * h;
  out.bottomLeftCorner(n, n) = 0.5 * h.transpose();
  return out;
}

}  // namespace

SmoothMap::SmoothMap(int domain_dim, std::vector<Expr> components) : m_(domain_dim), c_(std::move(components)) {
  for (size_t a = 0; a < c_.size(); ++a)
    if (c_[a].num_vars() > m_)
      throw Error(ErrorKind::DimensionMismatch, "component " + std::to_string(a + 1) + " uses x" +
                                                    std::to_string(c_[a].num_vars()) + " on a domain of dimension " +
                                                    std::to_string(m_));
}

DifferentialPoint differential(const SmoothMap& phi, const VectorXd& p) {
  const int m = phi.domain_dim(), n = phi.target_cdim();
  if (p.size() != m)
    throw Error(ErrorKind::DimensionMismatch, "map expects a point of dimension " + std::to_string(m));
  DifferentialPoint d;
  d.value.resize(n);
  d.dphi.resize(n, m);
  d.second.reserve(n);
  for (int a = 0; a < n; ++a) {
    Jet2 j = eval_jet2(phi[a], p);
    d.value(a) = j.value;
    d.dphi.row(a) = j.grad.transpose();
    d.second.push_back(std::move(j.hess));
  }
  return d;
}

MatrixXcd phwc_gram(const MatrixXcd& dphi, const MatrixXd& g_inv) {
  return dphi * g_inv.cast<Complex>() * dphi.transpose();
}

double phwc_residual_coord(const SmoothMap& phi, const MetricField& g, const VectorXd& p) {
  const MetricPoint mp = evaluate_metric(g, p);
  const DifferentialPoint d = differential(phi, p);
  if (d.dphi.rows() == 0) return 0.0;
  return phwc_gram(d.dphi, mp.g_inv).cwiseAbs().maxCoeff();
}

double isotropy_residual(const SmoothMap& phi, const MetricField& g, const VectorXd& p) {
  const MetricPoint mp = evaluate_metric(g, p);
  const DifferentialPoint d = differential(phi, p);
  if (d.dphi.rows() == 0) return 0.0;
  // Columns v_α = g^{-1} (∂φ^α)^T: vectors metric-dual to dφ*(dz^α).
  const MatrixXcd v = mp.g.cast<Complex>().ldlt().solve(d.dphi.transpose());
  return (v.transpose() * mp.g.cast<Complex>() * v).cwiseAbs().maxCoeff();
}

double phwc_residual_commutator(const SmoothMap& phi, const MetricField& g, const HermitianMetricField& h,
                                const VectorXd& p) {
  const MetricPoint mp = evaluate_metric(g, p);
  const DifferentialPoint d = differential(phi, p);
  const HermitianPoint hp = evaluate_hermitian(h, real_point(d.value));
  const Eigen::Index n = d.dphi.rows();
  const MatrixXcd full = full_differential(d.dphi);
  // dφ* = g^{-1} dφ^T h_bilinear, so dφ∘dφ* = (dφ g^{-1} dφ^T) h_bilinear.
  const MatrixXcd gram = full * mp.g_inv.cast<Complex>() * full.transpose();
  const MatrixXcd L = gram * bilinear_target_metric(hp.h);
  VectorXcd jdiag(2 * n);
  jdiag.head(n).setConstant(kI);
  jdiag.tail(n).setConstant(-kI);
  const MatrixXcd commutator = L * jdiag.asDiagonal() - jdiag.asDiagonal() * L;
  return commutator.norm();
}

HWCReport hwc_report(const SmoothMap& phi, const MetricField& g, const HermitianMetricField& h,
                     const VectorXd& p) {
  const MetricPoint mp = evaluate_metric(g, p);
  const DifferentialPoint d = differential(phi, p);
  const HermitianPoint hp = evaluate_hermitian(h, real_point(d.value));
  HWCReport out;
  if (d.dphi.rows() == 0 || d.dphi.cwiseAbs().maxCoeff() == 0.0) return out;
  const MatrixXcd full = full_differential(d.dphi);
  const MatrixXcd lhs = full * mp.g_inv.cast<Complex>() * full.transpose();
  const MatrixXcd h_upper = bilinear_target_metric(hp.h).inverse();
  const double denom = h_upper.squaredNorm();
  const double fit = (h_upper.conjugate().cwiseProduct(lhs)).sum().real() / denom;
  out.lambda_sq = std::max(0.0, fit);
  out.defect = (lhs - out.lambda_sq * h_upper).norm();
  return out;
}

namespace {

TensionPoint tension_from(const DifferentialPoint& d, const MetricPoint& mp, const RealTensor3& gamma_m,
                          const ComplexTensor3* gamma_n) {
  const Eigen::Index n = d.dphi.rows(), m = d.dphi.cols();
  TensionPoint out;
  out.tau = VectorXcd::Zero(n);
  for (Eigen::Index a = 0; a < n; ++a) {
    Complex sum = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index j = 0; j < m; ++j) {
        const double gij = mp.g_inv(i, j);
        if (gij == 0.0) continue;
        Complex term = d.second[a](i, j);
        for (Eigen::Index k = 0; k < m; ++k) term -= gamma_m(k, i, j) * d.dphi(a, k);
        if (gamma_n) {
          for (Eigen::Index b = 0; b < n; ++b)
            for (Eigen::Index c = 0; c < n; ++c)
              term += (*gamma_n)(a, b, c) * d.dphi(b, i) * d.dphi(c, j);
        }
        sum += gij * term;
      }
    }
    out.tau(a) = sum;
  }
  return out;
}

}  // namespace

TensionPoint tension_at(const DifferentialPoint& d, const MetricField& g, const HermitianMetricField& h,
                        const VectorXd& p) {
  require_kaehler(h, ErrorKind::TargetNotKaehler, "target metric");
  const MetricPoint mp = evaluate_metric(g, p);
  const RealTensor3 gamma_m = christoffel_from(mp);
  if (h.is_constant()) {
    evaluate_hermitian(h, real_point(d.value));  // PD check
    return tension_from(d, mp, gamma_m, nullptr);
  }
  const ComplexTensor3 gamma_n = christoffel_kaehler(h, real_point(d.value));
  return tension_from(d, mp, gamma_m, &gamma_n);
}

TensionPoint tension(const SmoothMap& phi, const MetricField& g, const HermitianMetricField& h,
                     const VectorXd& p) {
  return tension_at(differential(phi, p), g, h, p);
}

TensionPoint tension_levi_civita(const SmoothMap& phi, const MetricField& g, const HermitianMetricField& h,
                                 const VectorXd& p) {
  const DifferentialPoint d = differential(phi, p);
  const MetricPoint mp = evaluate_metric(g, p);
  const RealTensor3 gamma_m = christoffel_from(mp);
  const HermitianPoint hp = evaluate_hermitian(h, real_point(d.value));
  const RealTensor3 gamma_n = christoffel_from(target_real_metric(hp));
  const Eigen::Index n = d.dphi.rows(), m = d.dphi.cols(), r = 2 * n;
  // Real components y^c of φ, interleaved.
  MatrixXd dy(r, m);
  std::vector<MatrixXd> d2y(r);
  for (Eigen::Index a = 0; a < n; ++a) {
    dy.row(2 * a) = d.dphi.row(a).real();
    dy.row(2 * a + 1) = d.dphi.row(a).imag();
    d2y[2 * a] = d.second[a].real();
    d2y[2 * a + 1] = d.second[a].imag();
  }
  VectorXd tau = VectorXd::Zero(r);
  for (Eigen::Index c = 0; c < r; ++c) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index j = 0; j < m; ++j) {
        const double gij = mp.g_inv(i, j);
        if (gij == 0.0) continue;
        double term = d2y[c](i, j);
        for (Eigen::Index k = 0; k < m; ++k) term -= gamma_m(k, i, j) * dy(c, k);
        for (Eigen::Index a = 0; a < r; ++a)
          for (Eigen::Index b = 0; b < r; ++b) term += gamma_n(c, a, b) * dy(a, i) * dy(b, j);
        sum += gij * term;
      }
    }
    tau(c) = sum;
  }
  TensionPoint out;
  out.tau.resize(n);
  for (Eigen::Index a = 0; a < n; ++a) out.tau(a) = Complex(tau(2 * a), tau(2 * a + 1));
  return out;
}

namespace {

// ∂/∂z^α and ∂/∂z̄^β of a real-variable jet on an interleaved chart.
Complex wirtinger_z(const Jet2& j, int a) { return 0.5 * (j.grad(2 * a) - kI * j.grad(2 * a + 1)); }
Complex wirtinger_zbar(const Jet2& j, int a) { return 0.5 * (j.grad(2 * a) + kI * j.grad(2 * a + 1)); }

// ∂²f/∂z^α∂z̄^β = ¼[f_{x_α x_β} + f_{y_α y_β} + i(f_{x_α y_β} − f_{y_α x_β})]
Complex wirtinger_mixed(const Jet2& j, int a, int b) {
  const MatrixXcd& H = j.hess;
  return 0.25 * (H(2 * a, 2 * b) + H(2 * a + 1, 2 * b + 1) +
                 kI * (H(2 * a, 2 * b + 1) - H(2 * a + 1, 2 * b)));
}

double pluriharmonic_impl(const SmoothMap& f, const HermitianMetricField& source,
                          const HermitianMetricField* target, const VectorXd& z) {
  require_kaehler(source, ErrorKind::SourceNotKaehler, "source chart metric");
  const int n = source.cdim();
  if (f.domain_dim() != 2 * n)
    throw Error(ErrorKind::DimensionMismatch, "pluriharmonic map domain must have real dimension 2n");
  evaluate_hermitian(source, z);
  const int r = f.target_cdim();
  std::vector<Jet2> jets;
  jets.reserve(r);
  for (int a = 0; a < r; ++a) jets.push_back(eval_jet2(f[a], z));

  ComplexTensor3 gamma;
  const bool curved = target && !target->is_constant();
  if (target) {
    require_kaehler(*target, ErrorKind::TargetNotKaehler, "pluriharmonic target");
    if (target->cdim() != r) throw Error(ErrorKind::DimensionMismatch, "target metric dimension");
    VectorXcd value(r);
    for (int a = 0; a < r; ++a) value(a) = jets[a].value;
    const HermitianPoint hp = evaluate_hermitian(*target, real_point(value));
    if (curved) gamma = christoffel_kaehler(hp);
  }

  double worst = 0.0;
  for (int al = 0; al < n; ++al) {
    for (int be = 0; be < n; ++be) {
      for (int a = 0; a < r; ++a) {
        Complex hol = wirtinger_mixed(jets[a], al, be);
        // The ā component: ∂_{z^α}∂_{z̄^β} conj(f^a) = conj(∂_{z^β}∂_{z̄^α} f^a).
        Complex anti = std::conj(wirtinger_mixed(jets[a], be, al));
        if (curved) {
          for (int b = 0; b < r; ++b) {
            for (int c = 0; c < r; ++c) {
              hol += gamma(a, b, c) * wirtinger_z(jets[b], al) * wirtinger_zbar(jets[c], be);
              anti += std::conj(gamma(a, b, c)) * std::conj(wirtinger_zbar(jets[b], al)) *
                      std::conj(wirtinger_z(jets[c], be));
            }
          }
        }
        worst = std::max({worst, std::abs(hol), std::abs(anti)});
      }
    }
  }
  return worst;
}

}  // namespace

double pluriharmonic_residual(const SmoothMap& f, const HermitianMetricField& source, const VectorXd& z) {
  return pluriharmonic_impl(f, source, nullptr, z);
}

double pluriharmonic_residual(const SmoothMap& f, const HermitianMetricField& source,
                              const HermitianMetricField& target, const VectorXd& z) {
  return pluriharmonic_impl(f, source, &target, z);
}

SmoothMap compose(const SmoothMap& psi, const SmoothMap& phi) {
  if (psi.domain_dim() != 2 * phi.target_cdim())
    throw Error(ErrorKind::DimensionMismatch,
                "outer map expects real dimension " + std::to_string(psi.domain_dim()) + " but inner map has " +
                    std::to_string(phi.target_cdim()) + " complex components");
  std::vector<Expr> repl;
  repl.reserve(psi.domain_dim());
  for (const Expr& c : phi.components()) {
    repl.push_back(re(c));
    repl.push_back(im(c));
  }
  std::vector<Expr> out;
  out.reserve(psi.target_cdim());
  for (const Expr& c : psi.components()) out.push_back(substitute(c, repl));
  return SmoothMap(phi.domain_dim(), std::move(out));
}

double holomorphy_residual(const SmoothMap& psi, const VectorXd& w) {
  double worst = 0.0;
  for (const Expr& c : psi.components()) {
    const Jet2 j = eval_jet2(c, w);
    for (int a = 0; 2 * a + 1 < psi.domain_dim(); ++a) worst = std::max(worst, std::abs(wirtinger_zbar(j, a)));
  }
  return worst;
}

double antiholomorphy_residual(const SmoothMap& psi, const VectorXd& w) {
  double worst = 0.0;
  for (const Expr& c : psi.components()) {
    const Jet2 j = eval_jet2(c, w);
    for (int a = 0; 2 * a + 1 < psi.domain_dim(); ++a) worst = std::max(worst, std::abs(wirtinger_z(j, a)));
  }
  return worst;
}

}  // namespace phm
