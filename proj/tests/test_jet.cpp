#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "phm/error.hpp"
#include "phm/jet.hpp"
#include "phm/parser.hpp"
#include "phm/random.hpp"

using namespace phm;

namespace {

VectorXd pt(std::initializer_list<double> v) {
  VectorXd p(static_cast<Eigen::Index>(v.size()));
  Eigen::Index k = 0;
  for (double x : v) p(k++) = x;
  return p;
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::ValidationError;
}

}  // namespace

TEST_CASE("x1*x2 + sin(x1) at (1, 2)") {
  const Expr e = parse_expr("x1*x2 + sin(x1)");
  const Jet2 j = eval_jet2(e, pt({1, 2}));
  CHECK(j.value.real() == doctest::Approx(2 + std::sin(1.0)).epsilon(1e-15));
  CHECK(j.grad(0).real() == doctest::Approx(2 + std::cos(1.0)).epsilon(1e-15));
  CHECK(j.grad(1).real() == doctest::Approx(1.0));
  CHECK(j.hess(0, 0).real() == doctest::Approx(-std::sin(1.0)).epsilon(1e-15));
  CHECK(j.hess(0, 1).real() == doctest::Approx(1.0));
  CHECK(j.hess(1, 1).real() == 0.0);
}

TEST_CASE("complex coordinate z = x1 + i x2 has constant gradient and zero Hessian") {
  const Jet2 j = eval_jet2(parse_expr("x1 + i*x2"), pt({0.3, -0.4}));
  CHECK(j.grad(0) == Complex(1, 0));
  CHECK(j.grad(1) == Complex(0, 1));
  CHECK(j.hess.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("z^2 satisfies Laplace's equation through the jet") {
  const Jet2 j = eval_jet2(parse_expr("(x1 + i*x2)^2"), pt({0.7, 1.1}));
  CHECK(std::abs(j.hess(0, 0) + j.hess(1, 1)) < 1e-15);
}

TEST_CASE("division near zero raises") {
  CHECK(kind_of([] { eval_jet2(parse_expr("1/x1"), pt({1e-13})); }) == ErrorKind::DivisionNearZero);
  CHECK(kind_of([] { eval_value(parse_expr("x1^-2"), pt({0.0})); }) == ErrorKind::DivisionNearZero);
  CHECK_NOTHROW(eval_jet2(parse_expr("1/x1"), pt({1e-6})));
}

TEST_CASE("variable outside the point raises") {
  CHECK(kind_of([] { eval_jet2(parse_expr("x3"), pt({1, 2})); }) == ErrorKind::VariableIndexOutOfRange);
  CHECK(kind_of([] { substitute(parse_expr("x1 + x2"), {Expr(1.0)}); }) == ErrorKind::VariableIndexOutOfRange);
}

TEST_CASE("Hessians are exactly symmetric") {
  Rng rng(7);
  for (int t = 0; t < 50; ++t) {
    const Expr e = random_expression(rng, 3, 4);
    const Jet2 j = eval_jet2(e, rng.point(3, -1, 1));
    CHECK((j.hess - j.hess.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("AD agrees with finite differences of an independent evaluator") {
  Rng rng(2024);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const int m = rng.integer(1, 4);
    const Expr e = random_expression(rng, m, 4);
    const VectorXd p = rng.point(m, -1, 1);
    const Jet2 j = eval_jet2(e, p);
    auto f = [&](const VectorXd& x) { return oracle::eval(e, x); };
    CHECK(std::abs(j.value - f(p)) <= 1e-12 * std::max(1.0, std::abs(f(p))));
    worst = std::max({worst, oracle::relative_error(j.grad, oracle::gradient(f, p)),
                      oracle::relative_error(j.hess, oracle::hessian(f, p))});
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("symbolic differentiation matches the jet gradient") {
  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    const Expr e = random_expression(rng, 3, 3);
    const VectorXd p = rng.point(3, -1, 1);
    const Jet2 j = eval_jet2(e, p);
    for (int k = 0; k < 3; ++k) {
      const Complex d = eval_value(differentiate(e, k), p);
      CHECK(std::abs(d - j.grad(k)) <= 1e-12 * std::max(1.0, std::abs(d)));
    }
  }
}

TEST_CASE("substitution composes") {
  // f(y1, y2) = y1*y2 with y1 = x1^2, y2 = sin(x1): f = x1^2 sin(x1)
  const Expr f = substitute(parse_expr("x1*x2"), {parse_expr("x1^2"), parse_expr("sin(x1)")});
  const double x = 0.8;
  const Jet2 j = eval_jet2(f, pt({x}));
  CHECK(j.value.real() == doctest::Approx(x * x * std::sin(x)));
  CHECK(j.grad(0).real() == doctest::Approx(2 * x * std::sin(x) + x * x * std::cos(x)));
}

TEST_CASE("printing and parsing round-trip") {
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    const Expr e = random_expression(rng, 3, 4);
    const VectorXd p = rng.point(3, -1, 1);
    const Expr back = parse_expr(to_string(e));
    CHECK(std::abs(eval_value(back, p) - eval_value(e, p)) <= 1e-12 * std::max(1.0, std::abs(eval_value(e, p))));
  }
}

TEST_CASE("parser grammar") {
  CHECK(eval_value(parse_expr("2^3 - 4/2"), VectorXd(0)).real() == 6.0);
  CHECK(eval_value(parse_expr("-x1^2"), pt({3})).real() == -9.0);
  CHECK(eval_value(parse_expr("x1^-1"), pt({4})).real() == 0.25);
  CHECK(eval_value(parse_expr("1.5e2"), VectorXd(0)).real() == 150.0);
  CHECK(eval_value(parse_expr("re(i*x1) + im(i*x1) + conj(i)"), pt({2})) == Complex(2, -1));
  CHECK(eval_value(parse_expr("exp(0) + cos(0)"), VectorXd(0)).real() == 2.0);
}

TEST_CASE("parse errors carry line and column") {
  auto message = [](const char* text) {
    try {
      parse_expr(text);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ParseError);
      return std::string(e.what());
    }
    FAIL("expected ParseError");
    return std::string();
  };
  CHECK(message("x1 + * 2").find("line 1, column 6") != std::string::npos);
  CHECK(message("x0").find("column 2: variable indices start at 1") != std::string::npos);
  CHECK(message("x1 +\n  foo(x1)").find("line 2, column 3") != std::string::npos);
  CHECK(message("(x1").find("line 1") != std::string::npos);
  CHECK(message("x1^x2").find("integer exponent") != std::string::npos);
  CHECK(message("") .find("empty") != std::string::npos);
}
