#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "jetlie/poly.hpp"

namespace jetlie {

/// Value of an expression in the quadratic extension Q(sqrt(r)): a + b*sqrt(r).
struct QuadraticValue {
  Rational a;
  Rational b;
  Rational radicand;
  bool is_zero() const { return sgn(a) == 0 && sgn(b) == 0; }
};

/// Exact symbolic expression: a polynomial over Q, optionally combined with
/// half-integer powers of a single radical kernel R.
///
/// Canonical form: A * R^(-p) + B * R^(1/2 - q) with p, q >= 0 minimal, i.e. A
/// is not divisible by R when p > 0 and B is not divisible by R when q > 0.
/// The kernel is dropped when the value is a polynomial. Two expressions are
/// equal iff their canonical forms are identical (for R not a perfect square).
class Expr {
 public:
  /// One radical stratum: poly * R^(power/2).
  struct Stratum {
    int power;
    Poly poly;
    friend bool operator==(const Stratum& a, const Stratum& b) { return a.power == b.power && a.poly == b.poly; }
  };

  Expr();
  Expr(const Rational& c);  // NOLINT(google-explicit-constructor)
  Expr(long c) : Expr(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  Expr(int c) : Expr(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  Expr(const Symbol& s);  // NOLINT(google-explicit-constructor)
  Expr(Poly p);  // NOLINT(google-explicit-constructor)

  /// R^(k/2) for a radical-free, nonzero R.
  static Expr radical_power(const Poly& radicand, int k);
  static Expr sqrt(const Expr& radicand) { return radical_power(radicand.as_poly(), 1); }
  /// Builds and normalizes sum_k polys[k] * R^(k/2).
  static Expr from_strata(std::optional<Poly> radicand, std::map<int, Poly> strata);

  bool is_zero() const { return node_->strata.empty(); }
  bool has_radical() const { return node_->radicand != nullptr; }
  const Poly* radicand() const { return node_->radicand.get(); }
  const std::vector<Stratum>& strata() const { return node_->strata; }
  bool is_polynomial() const { return !has_radical(); }
  /// The polynomial itself; throws when the expression carries a radical.
  const Poly& as_poly() const;
  bool is_rational() const;
  Rational rational_value() const;

  Expr operator-() const;
  Expr operator+(const Expr& other) const;
  Expr operator-(const Expr& other) const;
  Expr operator*(const Expr& other) const;
  Expr& operator+=(const Expr& other) { return *this = *this + other; }
  Expr& operator-=(const Expr& other) { return *this = *this - other; }
  Expr& operator*=(const Expr& other) { return *this = *this * other; }
  /// Integer power; negative powers only for invertible expressions (see inverse).
  Expr pow(int n) const;
  /// Inverse of c * m * R^(k/2) where m is a monomial in group exponentials only.
  Expr inverse() const;

  friend bool operator==(const Expr& a, const Expr& b);
  friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

  /// Partial derivative; d(R^(k/2))/ds = (k/2) R_s R^((k-2)/2).
  Expr diff(const Symbol& s) const;
  /// Simultaneous substitution, then normalization.
  Expr substitute(const std::map<Symbol, Expr>& bindings) const;
  /// All symbols, including those of the radical kernel.
  std::set<Symbol> symbols() const;
  bool contains(const Symbol& s) const;

  /// Exact value; requires every symbol bound and, when odd strata are
  /// present, a radicand that is the square of a rational.
  Rational eval(const std::map<Symbol, Rational>& point) const;
  /// Exact value in Q(sqrt(r)); never needs a perfect square.
  QuadraticValue eval_quadratic(const std::map<Symbol, Rational>& point) const;
  /// Double-precision value (relative precision about 1e-12 for moderate inputs).
  double eval_float(const std::map<Symbol, Rational>& point) const;

  std::string to_string() const;

 private:
  struct Node {
    std::shared_ptr<const Poly> radicand;
    std::vector<Stratum> strata;
  };

  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static std::shared_ptr<const Poly> common_radicand(const Expr& a, const Expr& b);
  static Expr canonical(std::shared_ptr<const Poly> radicand, std::map<int, Poly> strata);
  std::map<int, Poly> strata_map() const;

  std::shared_ptr<const Node> node_;
};

inline Expr operator+(const Rational& c, const Expr& e) { return Expr(c) + e; }
inline Expr operator*(const Rational& c, const Expr& e) { return Expr(c) * e; }
inline Expr operator-(const Rational& c, const Expr& e) { return Expr(c) - e; }

std::ostream& operator<<(std::ostream& out, const Expr& e);

/// Balanced summation; avoids quadratic merging when adding many terms.
Expr sum_of(std::vector<Expr> parts);

}  // namespace jetlie
