#include "phm/jet.hpp"

#include <string>
#include <unordered_map>

#include "phm/error.hpp"

namespace phm {

namespace {

// Mirror the upper triangle so symmetry holds bit for bit whatever the
// vectorized kernels did with rounding.
void mirror_upper(MatrixXcd& h) {
  for (Eigen::Index j = 0; j < h.cols(); ++j)
    for (Eigen::Index i = j + 1; i < h.rows(); ++i) h(i, j) = h(j, i);
}

}  // namespace

Jet2 operator+(const Jet2& a, const Jet2& b) {
  Jet2 r;
  r.value = a.value + b.value;
  r.grad = a.grad + b.grad;
  r.hess = a.hess + b.hess;
  return r;
}

Jet2 operator-(const Jet2& a, const Jet2& b) {
  Jet2 r;
  r.value = a.value - b.value;
  r.grad = a.grad - b.grad;
  r.hess = a.hess - b.hess;
  return r;
}

Jet2 operator*(const Jet2& a, const Jet2& b) {
  Jet2 r;
  r.value = a.value * b.value;
  r.grad = a.value * b.grad + b.value * a.grad;
  MatrixXcd cross = a.grad * b.grad.transpose();
  r.hess = a.value * b.hess + b.value * a.hess + cross + cross.transpose();
  mirror_upper(r.hess);
  return r;
}

Jet2 operator*(Complex s, const Jet2& a) {
  Jet2 r;
  r.value = s * a.value;
  r.grad = s * a.grad;
  r.hess = s * a.hess;
  return r;
}

Jet2 operator-(const Jet2& a) {
  Jet2 r;
  r.value = -a.value;
  r.grad = -a.grad;
  r.hess = -a.hess;
  return r;
}

Jet2 chain(const Jet2& u, Complex f, Complex df, Complex d2f) {
  Jet2 r;
  r.value = f;
  r.grad = df * u.grad;
  r.hess = df * u.hess + d2f * (u.grad * u.grad.transpose());
  mirror_upper(r.hess);
  return r;
}

namespace {

Complex int_power(Complex base, int n) {
  Complex result(1.0, 0.0);
  unsigned k = static_cast<unsigned>(n < 0 ? -n : n);
  while (k) {
    if (k & 1u) result *= base;
    base *= base;
    k >>= 1u;
  }
  return n < 0 ? Complex(1.0, 0.0) / result : result;
}

void guard_divisor(Complex v) {
  if (std::abs(v) < kDivEps)
    throw Error(ErrorKind::DivisionNearZero,
                "divisor modulus " + std::to_string(std::abs(v)) + " below 1e-12");
}

}  // namespace

Jet2 reciprocal(const Jet2& u) {
  guard_divisor(u.value);
  const Complex inv = Complex(1.0, 0.0) / u.value;
  return chain(u, inv, -inv * inv, 2.0 * inv * inv * inv);
}

Jet2 ipow(const Jet2& u, int n) {
  if (n == 0) return Jet2::constant(1.0, u.dim());
  if (n < 0) guard_divisor(u.value);
  const double dn = n;
  return chain(u, int_power(u.value, n), dn * int_power(u.value, n - 1),
               dn * (dn - 1.0) * int_power(u.value, n - 2));
}

Jet2 conj_jet(const Jet2& j) {
  Jet2 r;
  r.value = std::conj(j.value);
  r.grad = j.grad.conjugate();
  r.hess = j.hess.conjugate();
  return r;
}

Jet2 re_jet(const Jet2& j) {
  Jet2 r;
  r.value = j.value.real();
  r.grad = j.grad.real().cast<Complex>();
  r.hess = j.hess.real().cast<Complex>();
  return r;
}

Jet2 im_jet(const Jet2& j) {
  Jet2 r;
  r.value = j.value.imag();
  r.grad = j.grad.imag().cast<Complex>();
  r.hess = j.hess.imag().cast<Complex>();
  return r;
}

namespace {

void check_vars(const Expr& e, const VectorXd& p) {
  if (e.num_vars() > p.size())
    throw Error(ErrorKind::VariableIndexOutOfRange,
                "expression uses x" + std::to_string(e.num_vars()) + " but the point has dimension " +
                    std::to_string(p.size()));
}

class JetEvaluator {
 public:
  explicit JetEvaluator(const VectorXd& p) : p_(p), m_(static_cast<int>(p.size())) {}

  const Jet2& run(const Expr& e) {
    if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second;
    Jet2 j = build(e);
    return memo_.emplace(e.id(), std::move(j)).first->second;
  }

 private:
  Jet2 build(const Expr& e) {
    using Op = Expr::Op;
    switch (e.op()) {
      case Op::Const: return Jet2::constant(e.literal(), m_);
      case Op::Var: return Jet2::variable(e.index(), p_(e.index()), m_);
      case Op::Add: return run(e.lhs()) + run(e.rhs());
      case Op::Sub: return run(e.lhs()) - run(e.rhs());
      case Op::Mul: return run(e.lhs()) * run(e.rhs());
      case Op::Div: {
        Jet2 inv = reciprocal(run(e.rhs()));
        return run(e.lhs()) * inv;
      }
      case Op::Neg: return -run(e.lhs());
      case Op::Pow: return ipow(run(e.lhs()), e.index());
      case Op::Sin: {
        const Jet2& u = run(e.lhs());
        const Complex s = std::sin(u.value), c = std::cos(u.value);
        return chain(u, s, c, -s);
      }
      case Op::Cos: {
        const Jet2& u = run(e.lhs());
        const Complex s = std::sin(u.value), c = std::cos(u.value);
        return chain(u, c, -s, -c);
      }
      case Op::Exp: {
        const Jet2& u = run(e.lhs());
        const Complex x = std::exp(u.value);
        return chain(u, x, x, x);
      }
      case Op::Conj: return conj_jet(run(e.lhs()));
      case Op::Re: return re_jet(run(e.lhs()));
      case Op::Im: return im_jet(run(e.lhs()));
    }
    return Jet2(m_);
  }

  const VectorXd& p_;
  int m_;
  std::unordered_map<const void*, Jet2> memo_;
};

class ValueEvaluator {
 public:
  explicit ValueEvaluator(const VectorXd& p) : p_(p) {}

  Complex run(const Expr& e) {
    if (e.op() == Expr::Op::Const) return e.literal();
    if (e.op() == Expr::Op::Var) return p_(e.index());
    if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second;
    Complex v = build(e);
    memo_.emplace(e.id(), v);
    return v;
  }

 private:
  Complex build(const Expr& e) {
    using Op = Expr::Op;
    switch (e.op()) {
      case Op::Add: return run(e.lhs()) + run(e.rhs());
      case Op::Sub: return run(e.lhs()) - run(e.rhs());
      case Op::Mul: return run(e.lhs()) * run(e.rhs());
      case Op::Div: {
        const Complex d = run(e.rhs());
        guard_divisor(d);
        return run(e.lhs()) / d;
      }
      case Op::Neg: return -run(e.lhs());
      case Op::Pow: {
        const Complex b = run(e.lhs());
        if (e.index() < 0) guard_divisor(b);
        return int_power(b, e.index());
      }
      case Op::Sin: return std::sin(run(e.lhs()));
      case Op::Cos: return std::cos(run(e.lhs()));
      case Op::Exp: return std::exp(run(e.lhs()));
      case Op::Conj: return std::conj(run(e.lhs()));
      case Op::Re: return run(e.lhs()).real();
      case Op::Im: return run(e.lhs()).imag();
      default: break;
    }
    return 0.0;
  }

  const VectorXd& p_;
  std::unordered_map<const void*, Complex> memo_;
};

}  // namespace

Jet2 eval_jet2(const Expr& e, const VectorXd& p) {
  check_vars(e, p);
  return JetEvaluator(p).run(e);
}

Complex eval_value(const Expr& e, const VectorXd& p) {
  check_vars(e, p);
  return ValueEvaluator(p).run(e);
}

}  // namespace phm
