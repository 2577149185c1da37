#include "phm/parser.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <string>

#include "phm/error.hpp"

namespace phm {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse() {
    skip_space();
    if (at_end()) fail("empty expression");
    Expr e = expr();
    skip_space();
    if (!at_end()) fail(std::string("unexpected '") + peek() + "'");
    return e;
  }

 private:
  Expr expr() {
    Expr lhs = term();
    for (;;) {
      skip_space();
      if (accept('+')) lhs = lhs + term();
      else if (accept('-')) lhs = lhs - term();
      else return lhs;
    }
  }

  Expr term() {
    Expr lhs = factor();
    for (;;) {
      skip_space();
      if (accept('*')) lhs = lhs * factor();
      else if (accept('/')) lhs = lhs / factor();
      else return lhs;
    }
  }

  Expr factor() {
    skip_space();
    if (accept('-')) return -factor();
    Expr b = base();
    skip_space();
    if (accept('^')) {
      skip_space();
      const bool negative = accept('-');
      skip_space();
      if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer exponent");
      const int n = integer();
      return pow(b, negative ? -n : n);
    }
    return b;
  }

  Expr base() {
    skip_space();
    if (at_end()) fail("unexpected end of input");
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return Expr(number());
    if (accept('(')) {
      Expr e = expr();
      skip_space();
      expect(')');
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const size_t start = pos_;
      std::string word;
      while (!at_end() && std::isalpha(static_cast<unsigned char>(peek()))) word += text_[pos_++];
      if (word == "i") return imag_unit();
      if (word == "x") {
        if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected variable index after 'x'");
        const size_t at = pos_;
        const int k = integer();
        if (k < 1) fail_at(at, "variable indices start at 1");
        return Expr::var(k - 1);
      }
      Expr (*fn)(const Expr&) = nullptr;
      if (word == "sin") fn = &sin;
      else if (word == "cos") fn = &cos;
      else if (word == "exp") fn = &exp;
      else if (word == "conj") fn = &conj;
      else if (word == "re") fn = &re;
      else if (word == "im") fn = &im;
      else fail_at(start, "unknown identifier '" + word + "'");
      skip_space();
      expect('(');
      Expr arg = expr();
      skip_space();
      expect(')');
      return fn(arg);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  double number() {
    const size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (!at_end() && peek() == '.') {
      ++pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }
    if (!at_end() && (peek() == 'e' || peek() == 'E')) {
      // Only an exponent if digits follow; otherwise leave 'e' for the caller.
      size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      }
    }
    const std::string token(text_.substr(start, pos_ - start));
    if (token == ".") fail_at(start, "malformed number");
    return std::strtod(token.c_str(), nullptr);
  }

  int integer() {
    const size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    int value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc()) fail_at(start, "integer out of range");
    return value;
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  bool accept(char c) {
    if (!at_end() && peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) {
      if (at_end()) fail(std::string("expected '") + c + "' before end of input");
      fail(std::string("expected '") + c + "' but found '" + peek() + "'");
    }
  }

  [[noreturn]] void fail(const std::string& what) const { fail_at(pos_, what); }
  [[noreturn]] void fail_at(size_t at, const std::string& what) const {
    int line = 1, col = 1;
    for (size_t k = 0; k < at && k < text_.size(); ++k) {
      if (text_[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorKind::ParseError,
                "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what);
  }

  std::string_view text_;
  size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(std::string_view text) { return Parser(text).parse(); }

}  // namespace phm
