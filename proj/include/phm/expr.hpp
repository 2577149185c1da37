#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

namespace phm {

/// Immutable expression tree over m real variables with complex literals.
///
/// Nodes are shared, so copying an Expr is cheap and substitution produces a
/// DAG rather than duplicating subtrees. Builders fold literal arithmetic and
/// the identities 0+e, 0*e, 1*e, e^1 so that symbolic derivatives stay small;
/// nothing else is rewritten.
class Expr {
 public:
  enum class Op { Const, Var, Add, Sub, Mul, Div, Neg, Pow, Sin, Cos, Exp, Conj, Re, Im };

  Expr();  // literal 0
  Expr(double value);                // NOLINT(google-explicit-constructor)
  Expr(std::complex<double> value);  // NOLINT(google-explicit-constructor)

  /// Variable x_{index+1}; indices are zero-based in code, one-based in text.
  static Expr var(int index);
  /// x_{2k} + i x_{2k+1}: the k-th complex coordinate of an interleaved chart.
  static Expr complex_coord(int k);

  Op op() const;
  std::complex<double> literal() const;  // Const only
  int index() const;                     // Var index or Pow exponent
  const Expr& lhs() const;
  const Expr& rhs() const;

  bool is_literal() const { return op() == Op::Const; }
  bool is_literal(std::complex<double> v) const { return is_literal() && literal() == v; }

  /// One more than the largest variable index used, 0 for closed expressions.
  int num_vars() const;

  /// Identity of the underlying node, used for memoized traversals.
  const void* id() const { return node_.get(); }

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);
  friend Expr pow(const Expr& a, int n);
  friend Expr sin(const Expr& a);
  friend Expr cos(const Expr& a);
  friend Expr exp(const Expr& a);
  friend Expr conj(const Expr& a);
  friend Expr re(const Expr& a);
  friend Expr im(const Expr& a);

  Expr& operator+=(const Expr& b) { return *this = *this + b; }
  Expr& operator*=(const Expr& b) { return *this = *this * b; }

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Expr make(Op op, Expr a, Expr b = Expr(std::shared_ptr<const Node>()), int index = 0);

  std::shared_ptr<const Node> node_;
};

Expr pow(const Expr& a, int n);
Expr sin(const Expr& a);
Expr cos(const Expr& a);
Expr exp(const Expr& a);
Expr conj(const Expr& a);
Expr re(const Expr& a);
Expr im(const Expr& a);

/// The imaginary unit as an expression.
Expr imag_unit();

/// Replace variable k with replacements[k] everywhere.
/// Throws VariableIndexOutOfRange if e uses a variable with no replacement.
Expr substitute(const Expr& e, const std::vector<Expr>& replacements);

/// Symbolic partial derivative with respect to variable `index`.
Expr differentiate(const Expr& e, int index);

/// Text form in the expression grammar; parse(to_string(e)) evaluates identically.
std::string to_string(const Expr& e);

}  // namespace phm
