#pragma once

#include <string>
#include <vector>

#include "jetlie/expr.hpp"

namespace jetlie {

/// xi*d/dx + tau*d/dt + eta*d/du. Components of a point field depend on x, t,
/// u only; contact fields may also involve u[1,0] and u[0,1].
struct PointVectorField {
  Expr xi;
  Expr tau;
  Expr eta;

  friend bool operator==(const PointVectorField& a, const PointVectorField& b) {
    return a.xi == b.xi && a.tau == b.tau && a.eta == b.eta;
  }
  bool is_point() const;
  std::string to_string() const;
};

/// Highest jet order among the jet symbols of q (0 when only u or none occur).
int jet_order(const Expr& q);

/// Q = xi*u_x + tau*u_t - eta.
Expr characteristic_of(const PointVectorField& v);

struct ContactField {
  PointVectorField field;
  Expr eta_x;  // coefficient of d/du_x
  Expr eta_t;  // coefficient of d/du_t
  bool is_point = false;
};

/// Contact field generated by a first-order characteristic:
/// xi = Q_{u_x}, tau = Q_{u_t}, eta = u_x Q_{u_x} + u_t Q_{u_t} - Q,
/// eta^x = -Q_x - u_x Q_u, eta^t = -Q_t - u_t Q_u.
ContactField point_field_of(const Expr& q);

/// Applies a point field as a derivation on functions of (x, t, u).
Expr apply_field(const PointVectorField& v, const Expr& f);

/// Lie bracket of two point fields.
PointVectorField commutator(const PointVectorField& v, const PointVectorField& w);

/// Structure constants c[i][j][k] with [v_i, v_j] = sum_k c[i][j][k] v_k.
class StructureTable {
 public:
  StructureTable() = default;
  explicit StructureTable(std::size_t dimension);

  std::size_t dimension() const { return dim_; }
  const Rational& operator()(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * dim_ + j) * dim_ + k]; }
  /// Sets [v_i, v_j] = coeffs and [v_j, v_i] = -coeffs.
  void set_bracket(std::size_t i, std::size_t j, const std::vector<Rational>& coeffs);
  std::vector<Rational> bracket(std::size_t i, std::size_t j) const;
  /// Bracket of two coefficient vectors.
  std::vector<Rational> bracket(const std::vector<Rational>& a, const std::vector<Rational>& b) const;

  friend bool operator==(const StructureTable& a, const StructureTable& b) { return a.dim_ == b.dim_ && a.c_ == b.c_; }

 private:
  std::size_t dim_ = 0;
  std::vector<Rational> c_;
};

/// Exact decomposition of f in the span of basis over Q, by coefficient
/// collection in x, t, u; nullopt when f is outside the span.
std::optional<std::vector<Rational>> decompose(const PointVectorField& f, const std::vector<PointVectorField>& basis);

/// Throws ClosureError naming the bracket and its field when a commutator
/// leaves the span, Error when the basis is linearly dependent.
StructureTable structure_table(const std::vector<PointVectorField>& basis);

/// Text such as "v1 - 2*v3" for a coefficient vector (generator names v1, v2, ...).
std::string format_combination(const std::vector<Rational>& coeffs, const std::string& prefix = "v");
std::string format_combination(const std::vector<Expr>& coeffs, const std::string& prefix = "v");

}  // namespace jetlie
