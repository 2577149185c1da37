#include "phm/fstruct.hpp"

#include <cmath>
#include <string>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "phm/error.hpp"

namespace phm {

namespace {

constexpr Complex kI(0.0, 1.0);

double hnorm(const VectorXcd& x, const MatrixXcd& g) { return std::sqrt(std::abs((x.adjoint() * g * x)(0, 0))); }

// Orthonormal basis (standard inner product) of the column span of A, rank fixed by caller.
MatrixXcd column_basis(const MatrixXcd& A, int rank) {
  Eigen::ColPivHouseholderQR<MatrixXcd> qr(A);
  MatrixXcd q = qr.householderQ() * MatrixXcd::Identity(A.rows(), rank);
  return q;
}

int numeric_rank(const MatrixXcd& A, double rel = 1e-10) {
  if (A.size() == 0) return 0;
  Eigen::JacobiSVD<MatrixXcd> svd(A);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(k) > rel * s(0)) ++r;
  return r;
}

// sin of the largest principal angle between two subspaces with orthonormal bases.
double largest_angle(const MatrixXcd& q1, const MatrixXcd& q2) {
  if (q1.cols() != q2.cols()) return M_PI / 2;
  if (q1.cols() == 0) return 0.0;
  const MatrixXcd resid = q2 - q1 * (q1.adjoint() * q2);
  Eigen::JacobiSVD<MatrixXcd> svd(resid);
  return std::asin(std::min(1.0, svd.singularValues()(0)));
}

void fill_from_basis(FStructurePoint& fs, const MatrixXd& g) {
  const Eigen::Index m = g.rows();
  const MatrixXcd gc = g.cast<Complex>();
  fs.Pplus = fs.basis * fs.basis.adjoint() * gc;
  fs.Pminus = fs.Pplus.conjugate();
  fs.Pzero = MatrixXcd::Identity(m, m) - fs.Pplus - fs.Pminus;
  const MatrixXcd F = kI * (fs.Pplus - fs.Pminus);
  fs.F = F.real();
  fs.imag_residual = F.size() ? F.imag().cwiseAbs().maxCoeff() : 0.0;
  fs.rank = 2 * static_cast<int>(fs.basis.cols());
}

}  // namespace

FStructurePoint associated_f_structure_at(const MatrixXcd& dphi, const MetricPoint& mp, double rank_tol) {
  const Eigen::Index m = mp.g.rows();
  if (dphi.cols() != m) throw Error(ErrorKind::DimensionMismatch, "differential and metric dimensions differ");
  if (dphi.rows() > 0) {
    const double phwc = phwc_gram(dphi, mp.g_inv).cwiseAbs().maxCoeff();
    if (phwc > kPhwcGate)
      throw Error(ErrorKind::NotPHWCAtPoint, "coordinate residual " + std::to_string(phwc) + " exceeds 1e-8");
  }
  const MatrixXcd gc = mp.g.cast<Complex>();
  // Candidates spanning T⁺: g^{-1} conj(∂φ^α)^T.
  MatrixXcd cand = mp.g_inv.cast<Complex>() * dphi.adjoint();
  std::vector<bool> used(static_cast<size_t>(cand.cols()), false);
  std::vector<VectorXcd> basis;
  for (;;) {
    int best = -1;
    double best_norm = 0.0;
    for (Eigen::Index c = 0; c < cand.cols(); ++c) {
      if (used[c]) continue;
      const double nrm = hnorm(cand.col(c), gc);
      if (best < 0 || nrm > best_norm) {
        best = static_cast<int>(c);
        best_norm = nrm;
      }
    }
    if (best < 0) break;
    if (best_norm <= rank_tol) {
      if (best_norm >= rank_tol / 10)
        throw Error(ErrorKind::RankDeficiencyAmbiguous,
                    "pivot norm " + std::to_string(best_norm) + " inside the ambiguity band");
      break;
    }
    used[best] = true;
    VectorXcd e = cand.col(best) / best_norm;
    basis.push_back(e);
    // Project the new direction out of the remaining candidates (twice, for
    // orthogonality to working precision).
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index c = 0; c < cand.cols(); ++c) {
        if (used[c]) continue;
        for (const auto& b : basis) {
          const Complex coeff = (b.adjoint() * gc * cand.col(c))(0, 0);
          cand.col(c) -= coeff * b;
        }
      }
    }
  }
  FStructurePoint fs;
  fs.basis.resize(m, static_cast<Eigen::Index>(basis.size()));
  for (size_t k = 0; k < basis.size(); ++k) fs.basis.col(static_cast<Eigen::Index>(k)) = basis[k];
  fill_from_basis(fs, mp.g);
  return fs;
}

FStructurePoint associated_f_structure(const SmoothMap& phi, const MetricField& g, const VectorXd& p,
                                       double rank_tol) {
  const MetricPoint mp = evaluate_metric(g, p);
  return associated_f_structure_at(differential(phi, p).dphi, mp, rank_tol);
}

FStructurePoint f_structure_from_matrix(const MatrixXd& F, const MatrixXd& g) {
  const Eigen::Index m = F.rows();
  const MatrixXcd Fc = F.cast<Complex>();
  const MatrixXcd F2 = Fc * Fc;
  const MatrixXcd Pplus = 0.5 * (-F2 - kI * Fc);
  const int k = numeric_rank(Pplus);
  // h-orthonormalize a basis of range(P⁺).
  MatrixXcd q = column_basis(Pplus, k);
  const MatrixXcd gc = g.cast<Complex>();
  MatrixXcd basis(m, k);
  for (int c = 0; c < k; ++c) {
    VectorXcd v = q.col(c);
    for (int pass = 0; pass < 2; ++pass)
      for (int b = 0; b < c; ++b) v -= (basis.col(b).adjoint() * gc * v)(0, 0) * basis.col(b);
    basis.col(c) = v / hnorm(v, gc);
  }
  FStructurePoint fs;
  fs.basis = basis;
  fill_from_basis(fs, g);
  fs.F = F;
  return fs;
}

FAlgebraResiduals f_algebra_residuals(const FStructurePoint& fs, const MatrixXd& g) {
  const Eigen::Index m = fs.F.rows();
  FAlgebraResiduals r;
  r.cubic = (fs.F * fs.F * fs.F + fs.F).norm();
  const MatrixXd gF = g * fs.F;
  r.skew = (gF + gF.transpose()).norm();
  const MatrixXcd& P = fs.Pplus;
  const MatrixXcd& Q = fs.Pminus;
  const MatrixXcd& Z = fs.Pzero;
  const MatrixXcd id = MatrixXcd::Identity(m, m);
  const double terms[] = {
      (P + Q + Z - id).norm(), (P * P - P).norm(), (Q * Q - Q).norm(), (Z * Z - Z).norm(),
      (P * Q).norm(),          (Q * P).norm(),     (P * Z).norm(),     (Z * P).norm(),
      (Q * Z).norm(),          (Z * Q).norm(),     (fs.F.cast<Complex>() - kI * (P - Q)).norm(),
      (Q - P.conjugate()).norm()};
  for (double t : terms) r.projector = std::max(r.projector, t);
  r.reality = fs.imag_residual;
  return r;
}

BijectionCheck bijection_round_trip(const FStructurePoint& fs, const MatrixXcd& dphi, const MatrixXd& g) {
  BijectionCheck out;
  const int k = fs.rank / 2;
  const MatrixXcd Fc = fs.F.cast<Complex>();
  // Projector onto ker(F − i), rebuilt from F only.
  const MatrixXcd Pplus = 0.5 * (-(Fc * Fc) - kI * Fc);
  const MatrixXcd vec_basis = column_basis(Pplus, k);
  if (k > 0) out.isotropy = (vec_basis.transpose() * g.cast<Complex>() * vec_basis).cwiseAbs().maxCoeff();

  const MatrixXcd cov_basis = column_basis(Pplus.transpose(), k);
  const int dk = numeric_rank(dphi.transpose());
  const MatrixXcd span_cov = column_basis(dphi.transpose(), dk);
  out.angle_covectors = largest_angle(cov_basis, span_cov);

  const MatrixXcd span_vec = column_basis(g.ldlt().solve(MatrixXd::Identity(g.rows(), g.cols())).cast<Complex>() *
                                              dphi.adjoint(),
                                          dk);
  out.angle_vectors = largest_angle(vec_basis, span_vec);
  return out;
}

double f_holomorphy_residual(const SmoothMap& phi, const FStructurePoint& fs, const VectorXd& p) {
  const MatrixXcd D = differential(phi, p).dphi;
  if (D.size() == 0) return 0.0;
  return (D * fs.F.cast<Complex>() - kI * D).cwiseAbs().maxCoeff();
}

double zero_part_residual(const SmoothMap& phi, const FStructurePoint& fs, const VectorXd& p) {
  const MatrixXcd D = differential(phi, p).dphi;
  if (D.size() == 0) return 0.0;
  return (D * fs.Pzero).cwiseAbs().maxCoeff();
}

FField associated_f_field(const SmoothMap& phi, const MetricField& g, double rank_tol) {
  return [phi, g, rank_tol](const VectorXd& p) { return associated_f_structure(phi, g, p, rank_tol); };
}

FField constant_f_field(const FStructurePoint& fs) {
  return [fs](const VectorXd&) { return fs; };
}

FFieldJet stencil_jet(const FField& field, const VectorXd& p, double h_step) {
  FFieldJet jet;
  jet.center = field(p);
  const Eigen::Index m = p.size();
  jet.dF.reserve(m);
  jet.dPplus.reserve(m);
  for (Eigen::Index l = 0; l < m; ++l) {
    VectorXd fwd = p, bwd = p;
    fwd(l) += h_step;
    bwd(l) -= h_step;
    const FStructurePoint a = field(fwd);
    const FStructurePoint b = field(bwd);
    if (a.rank != jet.center.rank || b.rank != jet.center.rank)
      throw Error(ErrorKind::RankJumpOnStencil, "rank " + std::to_string(jet.center.rank) + " at the centre but " +
                                                    std::to_string(a.rank) + "/" + std::to_string(b.rank) +
                                                    " along axis " + std::to_string(l + 1));
    jet.dF.push_back((a.F - b.F) / (2 * h_step));
    jet.dPplus.push_back((a.Pplus - b.Pplus) / (2 * h_step));
  }
  return jet;
}

double nijenhuis_residual(const FField& field, const VectorXd& p, double h_step) {
  const FFieldJet jet = stencil_jet(field, p, h_step);
  const MatrixXd& F = jet.center.F;
  const Eigen::Index m = F.rows();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      for (Eigen::Index k = 0; k < m; ++k) {
        double n = 0.0;
        for (Eigen::Index l = 0; l < m; ++l) {
          n += F(l, i) * jet.dF[l](k, j) - F(l, j) * jet.dF[l](k, i);
          n -= F(k, l) * (jet.dF[i](l, j) - jet.dF[j](l, i));
        }
        worst = std::max(worst, std::abs(n));
      }
    }
  }
  return worst;
}

double parallel_residual(const FField& field, const MetricField& g, const VectorXd& p, double h_step) {
  const FFieldJet jet = stencil_jet(field, p, h_step);
  const RealTensor3 gamma = christoffel_domain(g, p);
  const MatrixXd& F = jet.center.F;
  const Eigen::Index m = F.rows();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      for (Eigen::Index k = 0; k < m; ++k) {
        double v = jet.dF[i](k, j);
        for (Eigen::Index l = 0; l < m; ++l) v += gamma(k, i, l) * F(l, j) - gamma(l, i, j) * F(k, l);
        worst = std::max(worst, std::abs(v));
      }
    }
  }
  return worst;
}

TwoFormPoint fundamental_two_form(const MetricField& g, const FField& field, const VectorXd& p, double h_step) {
  const Eigen::Index m = p.size();
  const FStructurePoint center = field(p);
  auto omega_at = [&](const VectorXd& x) -> MatrixXd {
    const FStructurePoint fs = field(x);
    if (fs.rank != center.rank)
      throw Error(ErrorKind::RankJumpOnStencil, "rank changes on the two-form stencil");
    return evaluate_metric(g, x).g * fs.F;
  };
  TwoFormPoint out;
  out.omega = evaluate_metric(g, p).g * center.F;
  std::vector<MatrixXd> d_omega(m);
  for (Eigen::Index l = 0; l < m; ++l) {
    VectorXd fwd = p, bwd = p;
    fwd(l) += h_step;
    bwd(l) -= h_step;
    d_omega[l] = (omega_at(fwd) - omega_at(bwd)) / (2 * h_step);
  }
  out.domega = RealTensor3(static_cast<int>(m), static_cast<int>(m), static_cast<int>(m));
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      for (Eigen::Index k = 0; k < m; ++k)
        out.domega(i, j, k) = d_omega[i](j, k) - d_omega[j](i, k) + d_omega[k](i, j);
  return out;
}

namespace {

// Real orthonormal basis of T⁰ = range(P⁰).
MatrixXd zero_basis(const FStructurePoint& fs) {
  const int dim0 = static_cast<int>(fs.F.rows()) - fs.rank;
  if (dim0 == 0) return MatrixXd(fs.F.rows(), 0);
  const MatrixXd Z = fs.Pzero.real();
  Eigen::ColPivHouseholderQR<MatrixXd> qr(Z);
  return qr.householderQ() * MatrixXd::Identity(Z.rows(), dim0);
}

}  // namespace

double domega_12_residual(const MetricField& g, const FField& field, const VectorXd& p, double h_step) {
  const TwoFormPoint two = fundamental_two_form(g, field, p, h_step);
  const FStructurePoint fs = field(p);
  std::vector<std::vector<VectorXcd>> types(3);
  for (Eigen::Index c = 0; c < fs.basis.cols(); ++c) {
    types[0].push_back(fs.basis.col(c));
    types[1].push_back(fs.basis.col(c).conjugate());
  }
  const MatrixXd z = zero_basis(fs);
  for (Eigen::Index c = 0; c < z.cols(); ++c) types[2].push_back(z.col(c).cast<Complex>());

  const Eigen::Index m = p.size();
  auto eval = [&](const VectorXcd& u, const VectorXcd& v, const VectorXcd& w) {
    Complex s = 0.0;
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < m; ++j)
        for (Eigen::Index k = 0; k < m; ++k) s += two.domega(i, j, k) * u(i) * v(j) * w(k);
    return std::abs(s);
  };
  double worst = 0.0;
  for (int same = 0; same < 3; ++same) {
    for (int other = 0; other < 3; ++other) {
      if (other == same) continue;
      for (const auto& u : types[same])
        for (const auto& v : types[same])
          for (const auto& w : types[other]) worst = std::max(worst, eval(u, v, w));
    }
  }
  return worst;
}

double met_residual(const MetricField& g, const FField& field, const VectorXd& p, double h_step) {
  const FStructurePoint center = field(p);
  const MatrixXd x0 = zero_basis(center);
  if (x0.cols() == 0 || center.basis.cols() == 0) return 0.0;
  const FFieldJet jet = stencil_jet(field, p, h_step);
  const MetricPoint mp = evaluate_metric(g, p);
  const RealTensor3 gamma = christoffel_from(mp);
  const Eigen::Index m = p.size();
  // Frame of T*⁺ near p: θ_a(x) = r_a P⁺(x) with r_a = e_a^H g(p), so θ_a(p) = r_a.
  const MatrixXcd rows = center.basis.adjoint() * mp.g.cast<Complex>();
  double worst = 0.0;
  for (Eigen::Index a = 0; a < rows.rows(); ++a) {
    const Eigen::RowVectorXcd theta = rows.row(a);
    // cov(k, j) = (∇_k θ)_j
    MatrixXcd cov(m, m);
    for (Eigen::Index k = 0; k < m; ++k) {
      const Eigen::RowVectorXcd dtheta = theta * jet.dPplus[k];
      for (Eigen::Index j = 0; j < m; ++j) {
        Complex v = dtheta(j);
        for (Eigen::Index l = 0; l < m; ++l) v -= gamma(l, k, j) * theta(l);
        cov(k, j) = v;
      }
    }
    for (Eigen::Index c = 0; c < x0.cols(); ++c) {
      const Eigen::RowVectorXcd along = x0.col(c).cast<Complex>().transpose() * cov;
      worst = std::max(worst, (along * center.Pzero).norm());
    }
  }
  return worst;
}

int TheoremSuiteReport::evaluated() const {
  int n = 0;
  for (const auto& s : samples) n += s.status == "evaluated";
  return n;
}

int TheoremSuiteReport::skipped() const { return static_cast<int>(samples.size()) - evaluated(); }

TheoremSuiteReport theorem_suite(const std::vector<SuiteCase>& cases, const ImplicationTolerances& tol) {
  TheoremSuiteReport report;
  for (const SuiteCase& sc : cases) {
    const FField field = associated_f_field(sc.map, sc.g, tol.rank_tol);
    for (size_t k = 0; k < sc.points.size(); ++k) {
      SampleDiagnostics d;
      d.case_name = sc.name;
      d.point_index = static_cast<int>(k);
      d.point = sc.points[k];
      try {
        const VectorXd& p = sc.points[k];
        d.phwc = phwc_residual_coord(sc.map, sc.g, p);
        if (d.phwc > tol.phwc_gate)
          throw Error(ErrorKind::NotPHWCAtPoint, "gate");
        d.rank = field(p).rank;
        d.harmonic = tension_levi_civita(sc.map, sc.g, sc.h, p).harmonic_residual();
        d.harmonic_kaehler = tension(sc.map, sc.g, sc.h, p).harmonic_residual();
        d.parallel = parallel_residual(field, sc.g, p, sc.h_step);
        d.nijenhuis = nijenhuis_residual(field, p, sc.h_step);
        d.met = met_residual(sc.g, field, p, sc.h_step);
        d.domega12 = domega_12_residual(sc.g, field, p, sc.h_step);
        d.status = "evaluated";
      } catch (const Error& e) {
        d.status = "skipped: " + std::string(to_string(e.kind()));
        report.samples.push_back(std::move(d));
        continue;
      }
      const bool harmonic = d.harmonic <= tol.delta;
      if (d.parallel <= tol.eps) {
        ++report.premise_parallel;
        if (!harmonic) report.counterexamples.push_back({"parallel=>harmonic", d});
      }
      if (d.nijenhuis <= tol.eps && d.met <= tol.eps && d.domega12 <= tol.eps) {
        ++report.premise_prop;
        if (!harmonic) report.counterexamples.push_back({"integrable+met+domega12=>harmonic", d});
      }
      report.samples.push_back(std::move(d));
    }
  }
  return report;
}

}  // namespace phm
