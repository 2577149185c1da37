#include "phm/expr.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_map>

#include "phm/error.hpp"

namespace phm {

// Children of leaves and the second child of unary nodes hold a null node.
struct Expr::Node {
  Op op = Op::Const;
  std::complex<double> value{0.0, 0.0};
  int index = 0;
  Expr a{std::shared_ptr<const Node>()};
  Expr b{std::shared_ptr<const Node>()};
  int num_vars = 0;
};

Expr::Expr() : Expr(std::complex<double>(0.0, 0.0)) {}

Expr::Expr(double value) : Expr(std::complex<double>(value, 0.0)) {}

Expr::Expr(std::complex<double> value) {
  auto n = std::make_shared<Node>();
  n->op = Op::Const;
  n->value = value;
  node_ = std::move(n);
}

Expr Expr::make(Op op, Expr a, Expr b, int index) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->index = index;
  n->num_vars = std::max(a.num_vars(), b.node_ ? b.num_vars() : 0);
  n->a = std::move(a);
  n->b = std::move(b);
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::var(int index) {
  if (index < 0) throw Error(ErrorKind::VariableIndexOutOfRange, "negative variable index");
  auto n = std::make_shared<Node>();
  n->op = Op::Var;
  n->index = index;
  n->num_vars = index + 1;
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::complex_coord(int k) { return var(2 * k) + imag_unit() * var(2 * k + 1); }

Expr::Op Expr::op() const { return node_->op; }
std::complex<double> Expr::literal() const { return node_->value; }
int Expr::index() const { return node_->index; }
const Expr& Expr::lhs() const { return node_->a; }
const Expr& Expr::rhs() const { return node_->b; }
int Expr::num_vars() const { return node_->num_vars; }

Expr imag_unit() { return Expr(std::complex<double>(0.0, 1.0)); }

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_literal() && b.is_literal()) return Expr(a.literal() + b.literal());
  if (a.is_literal(0.0)) return b;
  if (b.is_literal(0.0)) return a;
  return Expr::make(Expr::Op::Add, a, b);
}

Expr operator-(const Expr& a, const Expr& b) {
  if (a.is_literal() && b.is_literal()) return Expr(a.literal() - b.literal());
  if (b.is_literal(0.0)) return a;
  if (a.is_literal(0.0)) return -b;
  return Expr::make(Expr::Op::Sub, a, b);
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_literal() && b.is_literal()) return Expr(a.literal() * b.literal());
  if (a.is_literal(0.0) || b.is_literal(0.0)) return Expr(0.0);
  if (a.is_literal(1.0)) return b;
  if (b.is_literal(1.0)) return a;
  return Expr::make(Expr::Op::Mul, a, b);
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_literal(1.0)) return a;
  if (a.is_literal(0.0) && !b.is_literal(0.0)) return Expr(0.0);
  return Expr::make(Expr::Op::Div, a, b);
}

Expr operator-(const Expr& a) {
  if (a.is_literal()) return Expr(-a.literal());
  return Expr::make(Expr::Op::Neg, a);
}

Expr pow(const Expr& a, int n) {
  if (n == 0) return Expr(1.0);
  if (n == 1) return a;
  return Expr::make(Expr::Op::Pow, a, Expr(std::shared_ptr<const Expr::Node>()), n);
}

Expr sin(const Expr& a) {
  if (a.is_literal()) return Expr(std::sin(a.literal()));
  return Expr::make(Expr::Op::Sin, a);
}

Expr cos(const Expr& a) {
  if (a.is_literal()) return Expr(std::cos(a.literal()));
  return Expr::make(Expr::Op::Cos, a);
}

Expr exp(const Expr& a) {
  if (a.is_literal()) return Expr(std::exp(a.literal()));
  return Expr::make(Expr::Op::Exp, a);
}

Expr conj(const Expr& a) {
  if (a.is_literal()) return Expr(std::conj(a.literal()));
  return Expr::make(Expr::Op::Conj, a);
}

Expr re(const Expr& a) {
  if (a.is_literal()) return Expr(a.literal().real());
  return Expr::make(Expr::Op::Re, a);
}

Expr im(const Expr& a) {
  if (a.is_literal()) return Expr(a.literal().imag());
  return Expr::make(Expr::Op::Im, a);
}

namespace {

class Substituter {
 public:
  explicit Substituter(const std::vector<Expr>& repl) : repl_(repl) {}

  Expr run(const Expr& e) {
    if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second;
    Expr out = build(e);
    memo_.emplace(e.id(), out);
    return out;
  }

 private:
  Expr build(const Expr& e) {
    using Op = Expr::Op;
    switch (e.op()) {
      case Op::Const: return e;
      case Op::Var:
        if (e.index() >= static_cast<int>(repl_.size()))
          throw Error(ErrorKind::VariableIndexOutOfRange,
                      "substitution has no replacement for x" + std::to_string(e.index() + 1));
        return repl_[e.index()];
      case Op::Add: return run(e.lhs()) + run(e.rhs());
      case Op::Sub: return run(e.lhs()) - run(e.rhs());
      case Op::Mul: return run(e.lhs()) * run(e.rhs());
      case Op::Div: return run(e.lhs()) / run(e.rhs());
      case Op::Neg: return -run(e.lhs());
      case Op::Pow: return pow(run(e.lhs()), e.index());
      case Op::Sin: return sin(run(e.lhs()));
      case Op::Cos: return cos(run(e.lhs()));
      case Op::Exp: return exp(run(e.lhs()));
      case Op::Conj: return conj(run(e.lhs()));
      case Op::Re: return re(run(e.lhs()));
      case Op::Im: return im(run(e.lhs()));
    }
    return e;
  }

  const std::vector<Expr>& repl_;
  std::unordered_map<const void*, Expr> memo_;
};

class Differentiator {
 public:
  explicit Differentiator(int index) : index_(index) {}

  Expr run(const Expr& e) {
    if (e.num_vars() <= index_) return Expr(0.0);
    if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second;
    Expr out = build(e);
    memo_.emplace(e.id(), out);
    return out;
  }

 private:
  Expr build(const Expr& e) {
    using Op = Expr::Op;
    const Expr& a = e.lhs();
    switch (e.op()) {
      case Op::Const: return Expr(0.0);
      case Op::Var: return Expr(e.index() == index_ ? 1.0 : 0.0);
      case Op::Add: return run(a) + run(e.rhs());
      case Op::Sub: return run(a) - run(e.rhs());
      case Op::Mul: return run(a) * e.rhs() + a * run(e.rhs());
      case Op::Div: {
        const Expr& b = e.rhs();
        return (run(a) * b - a * run(b)) / pow(b, 2);
      }
      case Op::Neg: return -run(a);
      case Op::Pow: {
        const int n = e.index();
        return Expr(static_cast<double>(n)) * pow(a, n - 1) * run(a);
      }
      case Op::Sin: return cos(a) * run(a);
      case Op::Cos: return -(sin(a) * run(a));
      case Op::Exp: return e * run(a);
      // Variables are real, so these commute with differentiation.
      case Op::Conj: return conj(run(a));
      case Op::Re: return re(run(a));
      case Op::Im: return im(run(a));
    }
    return Expr(0.0);
  }

  int index_;
  std::unordered_map<const void*, Expr> memo_;
};

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (v < 0 || (v == 0 && std::signbit(v))) return "(" + s + ")";
  return s;
}

std::string format_literal(std::complex<double> c) {
  if (c.imag() == 0.0) return format_real(c.real());
  std::string im_part = format_real(c.imag()) + "*i";
  if (c.real() == 0.0) return "(" + im_part + ")";
  return "(" + format_real(c.real()) + "+" + im_part + ")";
}

void print(const Expr& e, std::string& out) {
  using Op = Expr::Op;
  auto unary = [&](const char* name) {
    out += name;
    out += '(';
    print(e.lhs(), out);
    out += ')';
  };
  auto binary = [&](char sym) {
    out += '(';
    print(e.lhs(), out);
    out += sym;
    print(e.rhs(), out);
    out += ')';
  };
  switch (e.op()) {
    case Op::Const: out += format_literal(e.literal()); break;
    case Op::Var: out += "x" + std::to_string(e.index() + 1); break;
    case Op::Add: binary('+'); break;
    case Op::Sub: binary('-'); break;
    case Op::Mul: binary('*'); break;
    case Op::Div: binary('/'); break;
    case Op::Neg:
      out += "(-";
      print(e.lhs(), out);
      out += ')';
      break;
    case Op::Pow:
      out += '(';
      print(e.lhs(), out);
      out += ")^" + std::to_string(e.index());
      break;
    case Op::Sin: unary("sin"); break;
    case Op::Cos: unary("cos"); break;
    case Op::Exp: unary("exp"); break;
    case Op::Conj: unary("conj"); break;
    case Op::Re: unary("re"); break;
    case Op::Im: unary("im"); break;
  }
}

}  // namespace

Expr substitute(const Expr& e, const std::vector<Expr>& replacements) {
  return Substituter(replacements).run(e);
}

Expr differentiate(const Expr& e, int index) { return Differentiator(index).run(e); }

std::string to_string(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

}  // namespace phm
