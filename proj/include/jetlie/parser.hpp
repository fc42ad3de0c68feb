#pragma once

#include <memory>
#include <string>
#include <vector>

#include "jetlie/expr.hpp"

namespace jetlie {

/// Unnormalized syntax tree produced by the parser.
struct ExprTree {
  enum class Kind { number, symbol, add, sub, mul, div, neg, pow, sqrt };

  Kind kind = Kind::number;
  Rational value;             // number
  Symbol symbol = Symbol::u();  // symbol
  int exponent = 0;           // pow
  std::vector<ExprTree> children;
  int line = 1;
  int column = 1;
};

/// Grammar (ASCII):
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := ('+' | '-') unary | power
///   power   := primary ('^' ['-'] integer)?
///   primary := integer | symbol | 'sqrt' '(' expr ')' | 'exp' '(' ['-'] [integer '*'] eps ')' | '(' expr ')'
///   symbol  := x | t | u | u[i,j] | a | b | p | q | c<N> | z | w | w[k] | eps | eps<N>
/// 'a' and 'b' denote the equation parameters alpha and beta. Division is
/// accepted only by rational constants, radical powers and group exponentials.
ExprTree parse_tree(const std::string& text);

/// Evaluates a syntax tree into canonical form.
Expr normalize(const ExprTree& tree);

inline Expr parse(const std::string& text) { return normalize(parse_tree(text)); }

/// Prints in the same grammar; parse(print(e)) == e for every canonical e
/// without opaque function symbols.
std::string print(const Expr& e);

}  // namespace jetlie
