#pragma once

#include <string>
#include <vector>

#include "jetlie/expr.hpp"
#include "jetlie/vector_fields.hpp"

namespace jetlie {

using QMatrix = std::vector<std::vector<Rational>>;
using ExprMatrix = std::vector<std::vector<Expr>>;

QMatrix identity_matrix(std::size_t n);
QMatrix multiply(const QMatrix& a, const QMatrix& b);
std::vector<Rational> multiply(const QMatrix& a, const std::vector<Rational>& v);
ExprMatrix multiply(const ExprMatrix& a, const ExprMatrix& b);
std::vector<Expr> multiply(const ExprMatrix& a, const std::vector<Expr>& v);
ExprMatrix to_expr_matrix(const QMatrix& m);
/// Coefficients of det(x*I - m), lowest degree first (Faddeev-LeVerrier).
std::vector<Rational> characteristic_polynomial(const QMatrix& m);

/// Eigenvalue with algebraic multiplicity.
struct IntegerEigenvalue {
  Integer value;
  int multiplicity;
};

/// Eigenvalues when they are all integers, Unsupported otherwise.
std::vector<IntegerEigenvalue> integer_spectrum(const QMatrix& m);

/// exp(eps * m) for a matrix with integer spectrum. Entries are polynomials
/// in `eps` and Laurent polynomials in exp(eps) (the symbol Symbol::exp_eps
/// with the same index as `eps`).
ExprMatrix matrix_exponential(const QMatrix& m, const Symbol& eps);

/// Matrix of w -> [v_i, w] in basis coordinates.
QMatrix ad_matrix(const StructureTable& table, std::size_t i);

/// Ad(exp(eps v_i)) acting on coefficient vectors, from the Lie series
/// w - eps [v_i, w] + eps^2/2 [v_i, [v_i, w]] - ..., i.e. exp(-eps ad v_i).
struct AdjointMap {
  std::size_t generator = 0;
  Symbol eps = Symbol::eps();
  ExprMatrix matrix;
};

AdjointMap adjoint_exp(std::size_t i, const Symbol& eps, const StructureTable& table);

/// Binds eps (and exp(eps)) to a rational value; exp(eps) must then be free
/// of the matrix, otherwise Unsupported.
QMatrix evaluate_map(const ExprMatrix& m, const Symbol& eps, const Rational& value);

/// True when m[x, y] = [m x, m y] for all basis pairs, symbolically.
bool is_automorphism(const ExprMatrix& m, const StructureTable& table);

/// The table of the three-dimensional symmetry algebra:
/// [v1, v3] = v1, [v2, v3] = -v2, [v1, v2] = 0.
StructureTable symmetry_algebra_table();

/// The one-parameter maps used as normalization witnesses on that algebra:
///   F1(eps): c1 -> c1 + eps*c3          = Ad(exp(-eps v1))
///   F2(eps): c2 -> c2 + eps*c3          = Ad(exp(eps v2))
///   F3(eps): (c1, c2) -> (e^-eps c1, e^eps c2) = Ad(exp(-eps v3))
/// i.e. F_k(eps) = Ad(exp(orientation(k) * eps * v_k)).
int witness_orientation(std::size_t generator);
ExprMatrix witness_map(std::size_t generator, const Symbol& eps, const StructureTable& table);

struct WitnessStep {
  std::size_t generator;  // 0-based
  Rational eps;
};

struct Normalization1D {
  enum class Family { first, second, scaling };  // v1 + a v2, b v1 + v2, v3
  Family family = Family::scaling;
  /// a for the first family, b for the second, 0 for v3.
  Rational parameter;
  std::vector<Rational> representative;
  /// Applied in order to the input before scaling.
  std::vector<WitnessStep> steps;
  Rational scalar;
  /// Sign of the family parameter: the finer real class (+1, -1 or 0) under
  /// F3 and rescaling.
  int finer_class = 0;

  std::string to_string() const;
};

/// Representative of the one-dimensional subalgebra spanned by v under the
/// adjoint action. When c3 = 0 and c1 != 0 the first family is chosen.
Normalization1D normalize_1d(const std::vector<Rational>& v, const StructureTable& table = symmetry_algebra_table());

/// Applies steps and scalar of a witness to v.
std::vector<Rational> apply_witness(const std::vector<Rational>& v, const std::vector<WitnessStep>& steps,
                                    const Rational& scalar, const StructureTable& table = symmetry_algebra_table());

struct Normalization2D {
  std::pair<std::vector<Rational>, std::vector<Rational>> representative;
  std::vector<WitnessStep> steps;
  /// representative[k] = sum_l change_of_basis[k][l] * (steps applied to input[l]).
  QMatrix change_of_basis;

  std::string to_string() const;
};

/// Representative of a two-dimensional subalgebra among (v1, v2), (v1, v3),
/// (v2, v3). Throws ClosureError when [h1, h2] leaves span{h1, h2} (the
/// message carries the bracket) and Error when h1, h2 are dependent.
Normalization2D normalize_2d(const std::vector<Rational>& h1, const std::vector<Rational>& h2,
                             const StructureTable& table = symmetry_algebra_table());

/// The bracket [h1, h2] when it leaves span{h1, h2}, nullopt when the pair closes.
std::optional<std::vector<Rational>> closure_failure(const std::vector<Rational>& h1, const std::vector<Rational>& h2,
                                                     const StructureTable& table);

}  // namespace jetlie
