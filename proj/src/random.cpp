#include "phm/random.hpp"

#include <cmath>

#include <Eigen/QR>

namespace phm {

double Rng::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

VectorXd Rng::point(const VectorXd& lo, const VectorXd& hi) {
  VectorXd p(lo.size());
  for (Eigen::Index i = 0; i < p.size(); ++i) p(i) = uniform(lo(i), hi(i));
  return p;
}

VectorXd Rng::point(int dim, double lo, double hi) {
  return point(VectorXd::Constant(dim, lo), VectorXd::Constant(dim, hi));
}

Expr random_expression(Rng& rng, int vars, int depth) {
  if (depth <= 0 || rng.uniform() < 0.2) {
    if (rng.uniform() < 0.7) return Expr::var(rng.integer(0, vars - 1));
    return rng.uniform() < 0.5 ? Expr(rng.uniform(-1, 1)) : Expr(rng.complex_uniform(1.0));
  }
  auto sub = [&] { return random_expression(rng, vars, depth - 1); };
  auto safe_positive = [&] {
    const Expr e = sub();
    return Expr(1.0 + rng.uniform()) + e * conj(e);
  };
  switch (rng.integer(0, 11)) {
    case 0: return sub() + sub();
    case 1: return sub() - sub();
    case 2:
    case 3: return sub() * sub();
    case 4: return sub() / safe_positive();
    case 5: return -sub();
    case 6: return rng.uniform() < 0.5 ? pow(sub(), rng.integer(2, 3)) : pow(safe_positive(), -rng.integer(1, 2));
    case 7: return sin(sub());
    case 8: return cos(sub());
    case 9: return exp(Expr(0.5) * sin(sub()));
    case 10: return conj(sub());
    default: return rng.uniform() < 0.5 ? re(sub()) : im(sub());
  }
}

Expr random_holomorphic_polynomial(Rng& rng, int cdim, int degree) {
  Expr total(rng.complex_uniform(1.0));
  const int terms = rng.integer(2, 4);
  for (int t = 0; t < terms; ++t) {
    Expr mono(rng.complex_uniform(1.0));
    int budget = rng.integer(1, degree);
    while (budget > 0) {
      const int e = rng.integer(1, budget);
      mono = mono * pow(Expr::complex_coord(rng.integer(0, cdim - 1)), e);
      budget -= e;
    }
    total = total + mono;
  }
  // Keep every coordinate present at first order so the map has full rank generically.
  for (int k = 0; k < cdim; ++k) total = total + Expr(rng.complex_uniform(1.0)) * Expr::complex_coord(k);
  return total;
}

SmoothMap random_holomorphic_map(Rng& rng, int cdim, int out, int degree) {
  std::vector<Expr> c;
  for (int a = 0; a < out; ++a) c.push_back(random_holomorphic_polynomial(rng, cdim, degree));
  return SmoothMap(2 * cdim, std::move(c));
}

namespace {

Expr random_affine(Rng& rng, int dim, double scale) {
  Expr e(rng.uniform(-scale, scale));
  for (int l = 0; l < dim; ++l) e = e + Expr(rng.uniform(-scale, scale)) * Expr::var(l);
  return e;
}

}  // namespace

MetricField random_spd_metric(Rng& rng, int dim) {
  std::vector<std::vector<Expr>> b(dim, std::vector<Expr>(dim));
  for (auto& row : b)
    for (auto& e : row) e = random_affine(rng, dim, 0.5);
  std::vector<std::vector<Expr>> g(dim, std::vector<Expr>(dim));
  for (int i = 0; i < dim; ++i) {
    for (int j = i; j < dim; ++j) {
      Expr s(i == j ? 1.0 : 0.0);
      for (int k = 0; k < dim; ++k) s = s + b[k][i] * b[k][j];
      g[i][j] = s;
      g[j][i] = s;
    }
  }
  return MetricField(dim, g);
}

MatrixXd random_orthogonal(Rng& rng, int m) {
  MatrixXd a(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a(i, j) = rng.normal();
  Eigen::HouseholderQR<MatrixXd> qr(a);
  MatrixXd q = qr.householderQ();
  const MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < m; ++j)
    if (r(j, j) < 0) q.col(j) *= -1.0;
  return q;
}

PhwcSample random_phwc_sample(Rng& rng, int dim, int k, int out, int degree, bool conformal) {
  MatrixXd a = MatrixXd::Identity(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) += rng.uniform(-0.3, 0.3);
  const MatrixXd q = random_orthogonal(rng, dim);
  // y = A x as expressions.
  std::vector<Expr> y(dim);
  for (int i = 0; i < dim; ++i) {
    Expr s(0.0);
    for (int j = 0; j < dim; ++j) s = s + Expr(a(i, j)) * Expr::var(j);
    y[i] = s;
  }
  // w_j = a_j · y with a_j = q_{2j} + i q_{2j+1}, isotropic and mutually orthogonal.
  std::vector<Expr> repl;
  for (int j = 0; j < k; ++j) {
    Expr re_part(0.0), im_part(0.0);
    for (int i = 0; i < dim; ++i) {
      re_part = re_part + Expr(q(i, 2 * j)) * y[i];
      im_part = im_part + Expr(q(i, 2 * j + 1)) * y[i];
    }
    repl.push_back(re_part);
    repl.push_back(im_part);
  }
  std::vector<Expr> comps;
  for (int c = 0; c < out; ++c) comps.push_back(substitute(random_holomorphic_polynomial(rng, k, degree), repl));

  const MatrixXd ata = a.transpose() * a;
  const Expr factor = conformal ? exp(Expr(2.0) * random_affine(rng, dim, 0.3)) : Expr(1.0);
  std::vector<std::vector<Expr>> g(dim, std::vector<Expr>(dim));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g[i][j] = conformal ? factor * Expr(ata(i, j)) : Expr(ata(i, j));
  return {SmoothMap(dim, std::move(comps)), MetricField(dim, g)};
}

SmoothMap random_generic_map(Rng& rng, int dim, int out) {
  std::vector<Expr> comps;
  for (int c = 0; c < out; ++c) {
    Expr e(rng.complex_uniform(1.0));
    for (int i = 0; i < dim; ++i) {
      e = e + Expr(rng.complex_uniform(1.0)) * Expr::var(i);
      for (int j = i; j < dim; ++j) e = e + Expr(rng.complex_uniform(0.5)) * Expr::var(i) * Expr::var(j);
    }
    comps.push_back(e);
  }
  return SmoothMap(dim, std::move(comps));
}

}  // namespace phm
