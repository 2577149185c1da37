#include "phm/flow.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "phm/error.hpp"
#include "phm/jet.hpp"

namespace phm {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
constexpr int kMaxHalvings = 20;
constexpr double kEnergySlack = 1e-12;

// Periodic interpolation kernel on N nodes and its first two derivatives at t.
void kernel(int n, double t, double& d0, double& d1, double& d2) {
  d0 = 1.0;
  d1 = 0.0;
  d2 = 0.0;
  const int top = (n - 1) / 2;
  for (int k = 1; k <= top; ++k) {
    const double c = std::cos(k * t), s = std::sin(k * t);
    d0 += 2 * c;
    d1 -= 2 * k * s;
    d2 -= 2.0 * k * k * c;
  }
  if (n % 2 == 0) {
    const int k = n / 2;
    const double c = std::cos(k * t), s = std::sin(k * t);
    d0 += c;
    d1 -= k * s;
    d2 -= static_cast<double>(k) * k * c;
  }
  d0 /= n;
  d1 /= n;
  d2 /= n;
}

}  // namespace

GridMap::GridMap(std::vector<int> dims_in, int cdim) : dims(std::move(dims_in)) {
  long total = 1;
  for (int d : dims) {
    if (d < 3) throw Error(ErrorKind::ValidationError, "grid resolution must be at least 3 per axis");
    total *= d;
  }
  values = MatrixXcd::Zero(cdim, total);
}

double GridMap::spacing(int axis) const { return kTwoPi / dims[axis]; }

double GridMap::cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < domain_dim(); ++a) v *= spacing(a);
  return v;
}

VectorXd GridMap::coordinate(int node) const {
  VectorXd x(domain_dim());
  for (int a = 0; a < domain_dim(); ++a) {
    x(a) = spacing(a) * (node % dims[a]);
    node /= dims[a];
  }
  return x;
}

int GridMap::neighbour(int node, int axis, int step) const {
  int stride = 1;
  for (int a = 0; a < axis; ++a) stride *= dims[a];
  const int j = (node / stride) % dims[axis];
  const int moved = ((j + step) % dims[axis] + dims[axis]) % dims[axis];
  return node + (moved - j) * stride;
}

GridMap GridMap::sample(const SmoothMap& phi, std::vector<int> dims) {
  if (static_cast<int>(dims.size()) != phi.domain_dim())
    throw Error(ErrorKind::DimensionMismatch, "grid has " + std::to_string(dims.size()) + " axes, map has " +
                                                  std::to_string(phi.domain_dim()) + " variables");
  GridMap u(std::move(dims), phi.target_cdim());
  for (int node = 0; node < u.nodes(); ++node) {
    const VectorXd x = u.coordinate(node);
    for (int a = 0; a < u.cdim(); ++a) u.values(a, node) = eval_value(phi[a], x);
  }
  return u;
}

void FlowConfig::validate(const GridMap& u, const HermitianMetricField& h) const {
  if (!(dt > 0.0)) throw Error(ErrorKind::ValidationError, "flow.dt must be positive");
  if (max_steps < 0) throw Error(ErrorKind::ValidationError, "flow.max_steps must be non-negative");
  if (!(stop_tol >= 0.0)) throw Error(ErrorKind::ValidationError, "flow.stop_tol must be non-negative");
  if (h.cdim() != u.cdim())
    throw Error(ErrorKind::DimensionMismatch, "grid map and target have different complex dimensions");
  if (h.is_constant()) {
    double hmin = u.spacing(0);
    for (int a = 1; a < u.domain_dim(); ++a) hmin = std::min(hmin, u.spacing(a));
    const double bound = hmin * hmin / (2.0 * u.domain_dim());
    if (dt >= bound)
      throw Error(ErrorKind::ValidationError,
                  "flow.dt = " + std::to_string(dt) + " violates the stability bound h^2/(2m) = " + std::to_string(bound));
  }
}

namespace {

// neighbours[a] holds, for every node, the indices one cell forward and back along axis a.
struct Neighbours {
  std::vector<std::vector<int>> fwd, bwd;
  explicit Neighbours(const GridMap& u) : fwd(u.domain_dim()), bwd(u.domain_dim()) {
    for (int a = 0; a < u.domain_dim(); ++a) {
      fwd[a].resize(u.nodes());
      bwd[a].resize(u.nodes());
      for (int node = 0; node < u.nodes(); ++node) {
        fwd[a][node] = u.neighbour(node, a, 1);
        bwd[a][node] = u.neighbour(node, a, -1);
      }
    }
  }
};

}  // namespace

double dirichlet_energy(const GridMap& u, const HermitianMetricField& h) {
  const bool flat = h.is_constant();
  const int n = u.cdim();
  MatrixXcd hn;
  if (flat) hn = evaluate_hermitian(h, VectorXd::Zero(2 * h.cdim())).h;
  const Neighbours nb(u);
  double total = 0.0;
  VectorXcd d(n);
  for (int node = 0; node < u.nodes(); ++node) {
    if (!flat) hn = evaluate_hermitian(h, real_point(u.values.col(node))).h;
    for (int a = 0; a < u.domain_dim(); ++a) {
      const double scale = 1.0 / (2 * u.spacing(a));
      for (int al = 0; al < n; ++al) d(al) = (u.values(al, nb.fwd[a][node]) - u.values(al, nb.bwd[a][node])) * scale;
      // h_{αβ̄} d^α conj(d^β)
      for (int al = 0; al < n; ++al)
        for (int be = 0; be < n; ++be) total += (hn(al, be) * d(al) * std::conj(d(be))).real();
    }
  }
  return 0.5 * total * u.cell_volume();
}

MatrixXcd discrete_tension(const GridMap& u, const HermitianMetricField& h) {
  const bool flat = h.is_constant();
  if (!flat && !h.kaehler()) throw Error(ErrorKind::TargetNotKaehler, "discrete tension needs a Kaehler target");
  const int n = u.cdim();
  const Neighbours nb(u);
  MatrixXcd tau = MatrixXcd::Zero(n, u.nodes());
  for (int node = 0; node < u.nodes(); ++node) {
    for (int a = 0; a < u.domain_dim(); ++a) {
      const double inv = 1.0 / (u.spacing(a) * u.spacing(a));
      const int f = nb.fwd[a][node], b = nb.bwd[a][node];
      for (int al = 0; al < n; ++al)
        tau(al, node) += (u.values(al, f) - 2.0 * u.values(al, node) + u.values(al, b)) * inv;
    }
    if (!flat) {
      const ComplexTensor3 gamma = christoffel_kaehler(h, real_point(u.values.col(node)));
      VectorXcd d(n);
      for (int a = 0; a < u.domain_dim(); ++a) {
        const double scale = 1.0 / (2 * u.spacing(a));
        for (int al = 0; al < n; ++al)
          d(al) = (u.values(al, nb.fwd[a][node]) - u.values(al, nb.bwd[a][node])) * scale;
        for (int al = 0; al < n; ++al)
          for (int be = 0; be < n; ++be)
            for (int c = 0; c < n; ++c) tau(al, node) += gamma(al, be, c) * d(be) * d(c);
      }
    }
  }
  return tau;
}

FlowResult run_flow(const GridMap& u0, const HermitianMetricField& h, const FlowConfig& cfg) {
  cfg.validate(u0, h);
  FlowResult out;
  out.map = u0;
  double energy = dirichlet_energy(out.map, h);
  MatrixXcd tau = discrete_tension(out.map, h);
  double tmax = tau.size() ? tau.cwiseAbs().maxCoeff() : 0.0;
  out.trace.push_back({0, energy, tmax, 0.0});
  for (int step = 1; step <= cfg.max_steps; ++step) {
    if (tmax < cfg.stop_tol) break;
    double dt = cfg.dt;
    GridMap next = out.map;
    double next_energy = 0.0;
    for (int halving = 0;; ++halving) {
      next.values = out.map.values + dt * tau;
      next_energy = dirichlet_energy(next, h);
      if (!cfg.energy_backtrack || next_energy <= energy + kEnergySlack) break;
      if (halving == kMaxHalvings)
        throw Error(ErrorKind::StepSizeUnderflow, "energy still increases after " + std::to_string(kMaxHalvings) +
                                                      " halvings at step " + std::to_string(step));
      dt *= 0.5;
    }
    out.map = std::move(next);
    energy = next_energy;
    tau = discrete_tension(out.map, h);
    tmax = tau.size() ? tau.cwiseAbs().maxCoeff() : 0.0;
    out.trace.push_back({step, energy, tmax, dt});
  }
  out.converged = tmax < cfg.stop_tol;
  return out;
}

DifferentialPoint interpolate(const GridMap& u, const VectorXd& x) {
  const int m = u.domain_dim();
  const int n = u.cdim();
  if (x.size() != m) throw Error(ErrorKind::DimensionMismatch, "interpolation point has the wrong dimension");
  // w[k][a][j]: k-th derivative of the axis-a kernel centred on grid index j.
  std::vector<std::vector<std::vector<double>>> w(3, std::vector<std::vector<double>>(m));
  for (int a = 0; a < m; ++a) {
    for (auto& level : w) level[a].resize(u.dims[a]);
    for (int j = 0; j < u.dims[a]; ++j)
      kernel(u.dims[a], x(a) - u.spacing(a) * j, w[0][a][j], w[1][a][j], w[2][a][j]);
  }
  DifferentialPoint dp;
  dp.value = VectorXcd::Zero(n);
  dp.dphi = MatrixXcd::Zero(n, m);
  dp.second.assign(n, MatrixXcd::Zero(m, m));
  std::vector<int> idx(m);
  for (int node = 0; node < u.nodes(); ++node) {
    int rest = node;
    for (int a = 0; a < m; ++a) {
      idx[a] = rest % u.dims[a];
      rest /= u.dims[a];
    }
    // Products of kernel values with derivative orders ord[a] on each axis.
    auto weight = [&](int i, int j) {
      double prod = 1.0;
      for (int a = 0; a < m; ++a) {
        const int order = (a == i) + (a == j);
        prod *= w[order][a][idx[a]];
      }
      return prod;
    };
    const VectorXcd v = u.values.col(node);
    dp.value += weight(-1, -1) * v;
    for (int i = 0; i < m; ++i) {
      dp.dphi.col(i) += weight(i, -1) * v;
      for (int j = i; j < m; ++j) {
        const double wij = weight(i, j);
        for (int al = 0; al < n; ++al) dp.second[al](i, j) += wij * v(al);
      }
    }
  }
  for (auto& s : dp.second) s.triangularView<Eigen::StrictlyLower>() = s.transpose();
  return dp;
}

void write_snapshot(std::ostream& os, const GridMap& u) {
  os << "# phm grid snapshot v1\n# dims";
  for (int d : u.dims) os << ' ' << d;
  os << "\n# cdim " << u.cdim() << "\n# columns: x1..xm, then re(u^a) im(u^a) for each component\n";
  char buf[40];
  for (int node = 0; node < u.nodes(); ++node) {
    const VectorXd x = u.coordinate(node);
    bool first = true;
    auto put = [&](double v) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      if (!first) os << ' ';
      os << buf;
      first = false;
    };
    for (int a = 0; a < x.size(); ++a) put(x(a));
    for (int al = 0; al < u.cdim(); ++al) {
      put(u.values(al, node).real());
      put(u.values(al, node).imag());
    }
    os << '\n';
  }
}

}  // namespace phm
