#pragma once

#include <string_view>

#include "phm/expr.hpp"

namespace phm {

/// Parse an expression in the text grammar
///
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := '-' factor | base ('^' ['-'] int)?
///   base   := number | 'i' | 'x' int | func '(' expr ')' | '(' expr ')'
///   func   := sin | cos | exp | conj | re | im
///
/// Variables are one-based (`x1` is the first coordinate). Throws
/// Error(ParseError) with the line and column of the offending token.
Expr parse_expr(std::string_view text);

}  // namespace phm
