#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jetlie/jet_space.hpp"
#include "jetlie/linear_solve.hpp"
#include "jetlie/vector_fields.hpp"

namespace jetlie {

/// Linearized symmetry condition D_x D_t Q - F'[Q] on the reduced jet space.
struct Residual {
  Expr value;
  bool is_zero = false;
  /// Jet coordinates, x and t occurring in value.
  std::vector<Symbol> free_coordinates;
};

/// Fails with OrderCapExceeded when the order of q exceeds max_order - 2.
Residual residual(const JetSpace& jet, const Expr& q);

/// Numeric cross-check of a zero test: evaluates value at random rational
/// points (exactly, in Q(sqrt r) when a radical is present).
struct SpotCheck {
  int points = 0;
  int nonzero = 0;
  /// True when the sampled values agree with the symbolic verdict.
  bool agrees = false;
  /// A point with a nonzero value, as "symbol=value" pairs (empty when none).
  std::string witness;
};

SpotCheck spot_check(const Expr& value, bool symbolic_zero, std::uint64_t seed, int points = 100);

/// The opaque characteristic Q(arity...) used by determining_system.
Symbol opaque_characteristic(const std::vector<Symbol>& arity);

struct DeterminingSystem {
  std::vector<Expr> equations;
  std::vector<Symbol> collected_by;
};

/// Residual of an opaque Q split into coefficient equations.
///
/// The residual is collected in `collect_in`, in every other jet symbol not in
/// the arity, and in the parameters listed in `split_parameters`; each
/// coefficient is divided by its rational and monomial content and duplicates
/// are dropped.
DeterminingSystem determining_system(const JetSpace& jet, const std::vector<Symbol>& arity,
                                     const std::vector<Symbol>& collect_in,
                                     const std::vector<Symbol>& split_parameters = {});

struct AnsatzResult {
  std::vector<Expr> basis;            // the ansatz monomials
  std::vector<Expr> characteristics;  // solution basis
  std::vector<std::vector<Poly>> coefficients;  // one coefficient vector per characteristic
  std::vector<std::string> assumptions;
  std::vector<bool> verified;  // independent residual re-check per characteristic
  std::size_t equations = 0;
  std::size_t rank = 0;
};

/// Q = sum c_k basis[k]; solves residual(Q) = 0 for the c_k. The residual is
/// linear in Q, so it is computed once per basis element.
AnsatzResult ansatz_solve(const JetSpace& jet, const std::vector<Expr>& basis);

/// Residual coefficient matrix of an ansatz (one column per basis element).
CoefficientMatrix residual_matrix(const std::vector<Expr>& residuals);

/// Monomials x^a t^b * (jet monomial) with a + b <= xt_degree, jet symbols of
/// order <= order (u included) and jet degree <= degree.
std::vector<Expr> monomial_basis(int order, int degree, int xt_degree = 1);

/// The ten monomials of the point-affine ansatz.
std::vector<Expr> point_affine_basis();

struct PointAlgebra {
  AnsatzResult solve;
  /// v1 = d/dx, v2 = d/dt, v3 = x d/dx - t d/dt + weight u d/du
  std::vector<PointVectorField> fields;
  Rational scaling_weight;
};

/// Solves the point-affine ansatz and orders the solution as translations in
/// x and t followed by the scaling. Throws Error when the solution space does
/// not have that shape.
PointAlgebra point_symmetry_algebra(const JetSpace& jet);

struct NonexistenceReport {
  int order = 0;
  int degree = 0;
  std::size_t basis_size = 0;
  std::size_t dimension = 0;      // total solution space
  std::size_t lower_order = 0;    // solutions of order < `order`
  std::size_t new_dimensions = 0;
  std::vector<Expr> solutions;
  std::vector<std::string> assumptions;
  std::string label;              // always states that the check is ansatz-bounded
};

/// Solves over monomial_basis(order, degree) (plus `extra` elements) and counts
/// solution dimensions not accounted for by lower-order characteristics.
/// Throws Unsupported when the basis is larger than `limit`.
NonexistenceReport bounded_nonexistence(const JetSpace& jet, int order, int degree, std::size_t limit = 4000,
                                        const std::vector<Expr>& extra = {});

}  // namespace jetlie
