#pragma once

#include <string>
#include <vector>

#include "jetlie/expr.hpp"

namespace jetlie {

/// Null space of a homogeneous linear system over the field of fractions of
/// polynomials in the parameters.
struct LinearSolution {
  /// Basis vectors, one entry per unknown; entries are polynomials in the parameters.
  std::vector<std::vector<Poly>> basis;
  /// Non-constant pivots assumed nonzero, in primitive form (e.g. "b").
  std::vector<Poly> assumptions;
  std::size_t equations = 0;
  std::size_t rank = 0;

  std::vector<std::string> assumption_texts() const;
};

/// Solves sum_k coeff_k * unknowns[k] = 0 for every expression in `system`.
///
/// Every symbol that is neither an unknown nor a parameter is treated as a
/// free coordinate: each expression is split into one equation per monomial
/// (and radical stratum) in those symbols. Pivots are chosen among rational
/// constants first, then monomials in the parameters, then general
/// polynomials; non-constant pivots are recorded as assumptions.
///
/// Throws NonlinearSystem when an expression has a term without an unknown or
/// with a product of unknowns.
LinearSolution linear_solve(const std::vector<Expr>& system, const std::vector<Symbol>& unknowns);

/// Sparse matrix rows over Q[parameters], as produced from a system by coefficient collection.
struct CoefficientMatrix {
  std::vector<std::vector<std::pair<std::size_t, Poly>>> rows;
  std::size_t columns = 0;
};

CoefficientMatrix coefficient_matrix(const std::vector<Expr>& system, const std::vector<Symbol>& unknowns);

/// Null space of a coefficient matrix (see linear_solve).
LinearSolution null_space(CoefficientMatrix matrix);

/// Reduced row echelon form of a set of rational vectors (canonical basis of their span).
std::vector<std::vector<Rational>> rational_row_echelon(std::vector<std::vector<Rational>> vectors);

}  // namespace jetlie
