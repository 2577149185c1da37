#pragma once

#include <complex>

#include <Eigen/Dense>

#include "phm/expr.hpp"
#include "phm/tensor.hpp"

namespace phm {

/// Division guard: a divisor (or negative-power base) with modulus below this
/// raises DivisionNearZero instead of producing inf/NaN.
inline constexpr double kDivEps = 1e-12;

/// Value, gradient and Hessian of a complex scalar with respect to m real
/// variables. The Hessian is exactly symmetric: every update adds symmetric
/// terms only.
struct Jet2 {
  Complex value{0.0, 0.0};
  VectorXcd grad;
  MatrixXcd hess;

  Jet2() = default;
  explicit Jet2(int m) : grad(VectorXcd::Zero(m)), hess(MatrixXcd::Zero(m, m)) {}

  int dim() const { return static_cast<int>(grad.size()); }

  static Jet2 constant(Complex c, int m) {
    Jet2 j(m);
    j.value = c;
    return j;
  }
  static Jet2 variable(int index, double x, int m) {
    Jet2 j(m);
    j.value = x;
    j.grad(index) = 1.0;
    return j;
  }
};

Jet2 operator+(const Jet2& a, const Jet2& b);
Jet2 operator-(const Jet2& a, const Jet2& b);
Jet2 operator*(const Jet2& a, const Jet2& b);
Jet2 operator*(Complex s, const Jet2& a);
Jet2 operator-(const Jet2& a);

/// Jet of f(u) given f(u.value), f'(u.value), f''(u.value).
Jet2 chain(const Jet2& u, Complex f, Complex df, Complex d2f);

Jet2 reciprocal(const Jet2& u);
Jet2 ipow(const Jet2& u, int n);
Jet2 conj_jet(const Jet2& j);
Jet2 re_jet(const Jet2& j);
Jet2 im_jet(const Jet2& j);

/// Second-order forward evaluation of e at p.
/// Errors: DivisionNearZero, VariableIndexOutOfRange (e uses x_k with k > p.size()).
Jet2 eval_jet2(const Expr& e, const VectorXd& p);

/// Value-only evaluation with the same error semantics.
Complex eval_value(const Expr& e, const VectorXd& p);

}  // namespace phm
