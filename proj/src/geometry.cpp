#include "phm/geometry.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "phm/error.hpp"
#include "phm/jet.hpp"

namespace phm {

namespace {

std::string point_text(const VectorXd& p) {
  std::string s = "(";
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    if (k) s += ", ";
    s += std::to_string(p(k));
  }
  return s + ")";
}

void check_dim(int expected, const VectorXd& p, const char* what) {
  if (p.size() != expected)
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + " expects a point of dimension " +
                                                  std::to_string(expected) + ", got " +
                                                  std::to_string(p.size()));
}

}  // namespace

MetricField::MetricField(int dim, const std::vector<std::vector<Expr>>& components)
    : dim_(dim), c_(static_cast<size_t>(dim) * dim) {
  if (static_cast<int>(components.size()) != dim)
    throw Error(ErrorKind::DimensionMismatch, "metric grid must have " + std::to_string(dim) + " rows");
  for (int i = 0; i < dim; ++i) {
    if (static_cast<int>(components[i].size()) != dim)
      throw Error(ErrorKind::DimensionMismatch, "metric row " + std::to_string(i + 1) + " has wrong length");
    for (int j = i; j < dim; ++j) {
      c_[static_cast<size_t>(i) * dim + j] = components[i][j];
      c_[static_cast<size_t>(j) * dim + i] = components[i][j];
    }
  }
}

MetricField MetricField::euclidean(int dim) { return conformal(dim, Expr(1.0)); }

MetricField MetricField::conformal(int dim, const Expr& factor) {
  std::vector<std::vector<Expr>> grid(dim, std::vector<Expr>(dim, Expr(0.0)));
  for (int i = 0; i < dim; ++i) grid[i][i] = factor;
  return MetricField(dim, grid);
}

bool MetricField::is_constant() const {
  for (const auto& e : c_)
    if (e.num_vars() > 0) return false;
  return true;
}

MetricPoint evaluate_metric(const MetricField& field, const VectorXd& p) {
  const int m = field.dim();
  check_dim(m, p, "domain metric");
  MetricPoint mp;
  mp.g.resize(m, m);
  mp.dg.assign(m, MatrixXd::Zero(m, m));
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      const Jet2 jet = eval_jet2(field(i, j), p);
      mp.g(i, j) = mp.g(j, i) = jet.value.real();
      for (int l = 0; l < m; ++l) mp.dg[l](i, j) = mp.dg[l](j, i) = jet.grad(l).real();
    }
  }
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(mp.g, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(lo > kSpdEps))
    throw Error(ErrorKind::MetricNotSPD,
                "smallest eigenvalue " + std::to_string(lo) + " at " + point_text(p));
  mp.g_inv = mp.g.ldlt().solve(MatrixXd::Identity(m, m));
  const double inv_err = (mp.g * mp.g_inv - MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff();
  if (inv_err > 1e-12 * std::max(1.0, hi / lo))
    throw Error(ErrorKind::MetricNotSPD, "inverse check failed at " + point_text(p));
  return mp;
}

RealTensor3 christoffel_from(const MetricPoint& mp) {
  const int m = static_cast<int>(mp.g.rows());
  RealTensor3 gamma(m, m, m);
  // Γ_{l,ij} = ½(∂_i g_lj + ∂_j g_li − ∂_l g_ij), then raise l.
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      VectorXd lowered(m);
      for (int l = 0; l < m; ++l)
        lowered(l) = 0.5 * (mp.dg[i](l, j) + mp.dg[j](l, i) - mp.dg[l](i, j));
      const VectorXd raised = mp.g_inv * lowered;
      for (int k = 0; k < m; ++k) gamma(k, i, j) = gamma(k, j, i) = raised(k);
    }
  }
  return gamma;
}

RealTensor3 christoffel_domain(const MetricField& g, const VectorXd& p) {
  return christoffel_from(evaluate_metric(g, p));
}

Complex laplace_beltrami_complex(const Expr& f, const MetricField& g, const VectorXd& p) {
  const MetricPoint mp = evaluate_metric(g, p);
  const RealTensor3 gamma = christoffel_from(mp);
  const Jet2 jf = eval_jet2(f, p);
  const int m = g.dim();
  Complex out = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (mp.g_inv(i, j) == 0.0) continue;
      Complex term = jf.hess(i, j);
      for (int k = 0; k < m; ++k) term -= gamma(k, i, j) * jf.grad(k);
      out += mp.g_inv(i, j) * term;
    }
  }
  return out;
}

double laplace_beltrami(const Expr& f, const MetricField& g, const VectorXd& p) {
  return laplace_beltrami_complex(f, g, p).real();
}

HermitianMetricField::HermitianMetricField(int cdim, const std::vector<std::vector<Expr>>& components,
                                           bool kaehler)
    : n_(cdim), c_(static_cast<size_t>(cdim) * cdim), kaehler_(kaehler) {
  if (static_cast<int>(components.size()) != cdim)
    throw Error(ErrorKind::DimensionMismatch, "hermitian grid must have " + std::to_string(cdim) + " rows");
  for (int a = 0; a < cdim; ++a) {
    if (static_cast<int>(components[a].size()) != cdim)
      throw Error(ErrorKind::DimensionMismatch, "hermitian row " + std::to_string(a + 1) + " has wrong length");
    for (int b = a; b < cdim; ++b) {
      c_[static_cast<size_t>(a) * cdim + b] = components[a][b];
      c_[static_cast<size_t>(b) * cdim + a] = a == b ? components[a][b] : conj(components[a][b]);
    }
  }
}

HermitianMetricField HermitianMetricField::flat(int cdim) {
  std::vector<std::vector<Expr>> grid(cdim, std::vector<Expr>(cdim, Expr(0.0)));
  for (int a = 0; a < cdim; ++a) grid[a][a] = Expr(1.0);
  return HermitianMetricField(cdim, grid, true);
}

HermitianMetricField HermitianMetricField::fubini_study(int cdim) {
  Expr norm2(1.0);
  std::vector<Expr> z(cdim);
  for (int a = 0; a < cdim; ++a) {
    z[a] = Expr::complex_coord(a);
    norm2 = norm2 + pow(Expr::var(2 * a), 2) + pow(Expr::var(2 * a + 1), 2);
  }
  const Expr denom = pow(norm2, 2);
  std::vector<std::vector<Expr>> grid(cdim, std::vector<Expr>(cdim, Expr(0.0)));
  for (int a = 0; a < cdim; ++a) {
    for (int b = a; b < cdim; ++b) {
      Expr numer = -(conj(z[a]) * z[b]);
      if (a == b) numer = norm2 - (pow(Expr::var(2 * a), 2) + pow(Expr::var(2 * a + 1), 2));
      grid[a][b] = numer / denom;
    }
  }
  return HermitianMetricField(cdim, grid, true);
}

HermitianMetricField HermitianMetricField::from_potential(int cdim, const Expr& potential) {
  // ∂_{z^a}∂_{z̄^b} K = ¼[K_{x_a x_b} + K_{y_a y_b} + i(K_{x_a y_b} − K_{y_a x_b})]
  std::vector<Expr> first(2 * cdim);
  for (int l = 0; l < 2 * cdim; ++l) first[l] = differentiate(potential, l);
  std::vector<std::vector<Expr>> grid(cdim, std::vector<Expr>(cdim, Expr(0.0)));
  for (int a = 0; a < cdim; ++a) {
    for (int b = a; b < cdim; ++b) {
      const Expr kxx = differentiate(first[2 * a], 2 * b);
      const Expr kyy = differentiate(first[2 * a + 1], 2 * b + 1);
      const Expr kxy = differentiate(first[2 * a], 2 * b + 1);
      const Expr kyx = differentiate(first[2 * a + 1], 2 * b);
      Expr entry = Expr(0.25) * (kxx + kyy);
      if (a != b) entry = entry + Expr(Complex(0.0, 0.25)) * (kxy - kyx);
      grid[a][b] = entry;
    }
  }
  return HermitianMetricField(cdim, grid, true);
}

bool HermitianMetricField::is_constant() const {
  for (const auto& e : c_)
    if (e.num_vars() > 0) return false;
  return true;
}

HermitianMetricField HermitianMetricField::with_kaehler_flag(bool kaehler) const {
  HermitianMetricField out = *this;
  out.kaehler_ = kaehler;
  return out;
}

VectorXd real_point(const VectorXcd& z) {
  VectorXd y(2 * z.size());
  for (Eigen::Index a = 0; a < z.size(); ++a) {
    y(2 * a) = z(a).real();
    y(2 * a + 1) = z(a).imag();
  }
  return y;
}

MatrixXcd HermitianPoint::dz(int gamma) const {
  return 0.5 * (dreal[2 * gamma] - Complex(0.0, 1.0) * dreal[2 * gamma + 1]);
}

MatrixXcd HermitianPoint::dzbar(int gamma) const {
  return 0.5 * (dreal[2 * gamma] + Complex(0.0, 1.0) * dreal[2 * gamma + 1]);
}

HermitianPoint evaluate_hermitian(const HermitianMetricField& field, const VectorXd& y) {
  const int n = field.cdim();
  check_dim(2 * n, y, "hermitian metric");
  HermitianPoint hp;
  hp.h.resize(n, n);
  hp.dreal.assign(2 * n, MatrixXcd::Zero(n, n));
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      const Jet2 jet = eval_jet2(field(a, b), y);
      if (a == b) {
        if (std::abs(jet.value.imag()) > 1e-12 * std::max(1.0, std::abs(jet.value)))
          throw Error(ErrorKind::MetricNotPD, "diagonal entry h_" + std::to_string(a + 1) +
                                                  " is not real at " + point_text(y));
        hp.h(a, a) = jet.value.real();
        for (int l = 0; l < 2 * n; ++l) hp.dreal[l](a, a) = jet.grad(l).real();
      } else {
        hp.h(a, b) = jet.value;
        hp.h(b, a) = std::conj(jet.value);
        for (int l = 0; l < 2 * n; ++l) {
          hp.dreal[l](a, b) = jet.grad(l);
          hp.dreal[l](b, a) = std::conj(jet.grad(l));
        }
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(hp.h, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  if (!(lo > kSpdEps))
    throw Error(ErrorKind::MetricNotPD, "smallest eigenvalue " + std::to_string(lo) + " at " + point_text(y));
  hp.h_inv = hp.h.inverse();
  return hp;
}

ComplexTensor3 christoffel_kaehler(const HermitianPoint& hp) {
  const int n = static_cast<int>(hp.h.rows());
  ComplexTensor3 gamma(n, n, n);
  // h^{αδ̄} contracts the second index of h_{γδ̄}: (h^T)^{-1}.
  const MatrixXcd raise = hp.h_inv.transpose();
  for (int beta = 0; beta < n; ++beta) {
    const MatrixXcd d = hp.dz(beta);  // d(γ, δ) = ∂_{z^β} h_{γδ̄}
    const MatrixXcd contracted = raise * d.transpose();  // (α, γ)
    for (int a = 0; a < n; ++a)
      for (int c = 0; c < n; ++c) gamma(a, beta, c) = contracted(a, c);
  }
  return gamma;
}

ComplexTensor3 christoffel_kaehler(const HermitianMetricField& h, const VectorXd& y) {
  return christoffel_kaehler(evaluate_hermitian(h, y));
}

double kaehler_residual(const HermitianMetricField& h, const VectorXd& y) {
  const HermitianPoint hp = evaluate_hermitian(h, y);
  const int n = h.cdim();
  double worst = 0.0;
  for (int a = 0; a < n; ++a) {
    const MatrixXcd da = hp.dz(a);
    for (int b = 0; b < n; ++b) {
      const MatrixXcd db = hp.dz(b);
      for (int c = 0; c < n; ++c) worst = std::max(worst, std::abs(da(b, c) - db(a, c)));
    }
  }
  return worst;
}

namespace {

// Re(ξ^T H conj(η)) with ξ = (x_a + i y_a) interleaved: blocks [[A, B], [-B, A]]
// for H = A + iB.
MatrixXd realify(const MatrixXcd& h) {
  const Eigen::Index n = h.rows();
  MatrixXd g(2 * n, 2 * n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      const double A = h(a, b).real(), B = h(a, b).imag();
      g(2 * a, 2 * b) = A;
      g(2 * a, 2 * b + 1) = B;
      g(2 * a + 1, 2 * b) = -B;
      g(2 * a + 1, 2 * b + 1) = A;
    }
  }
  return g;
}

}  // namespace

MetricPoint target_real_metric(const HermitianPoint& hp) {
  MetricPoint mp;
  mp.g = realify(hp.h);
  const Eigen::Index dim = mp.g.rows();
  mp.g_inv = mp.g.ldlt().solve(MatrixXd::Identity(dim, dim));
  mp.dg.reserve(hp.dreal.size());
  for (const auto& d : hp.dreal) mp.dg.push_back(realify(d));
  return mp;
}

}  // namespace phm
