#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "jetlie/rational.hpp"
#include "jetlie/symbol.hpp"

namespace jetlie {

/// Power product of symbols; sorted by symbol, no zero exponents. Only
/// group_exponential symbols may carry negative exponents.
class Monomial {
 public:
  using Factor = std::pair<Symbol, int>;

  Monomial() = default;
  explicit Monomial(Symbol s, int exponent = 1);
  static Monomial from_factors(std::vector<Factor> factors);

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_unit() const { return factors_.empty(); }
  int degree() const { return degree_; }
  int exponent(const Symbol& s) const;
  bool contains(const Symbol& s) const { return exponent(s) != 0; }

  Monomial operator*(const Monomial& other) const;
  /// Quotient when every exponent of `divisor` is covered, nullopt otherwise.
  std::optional<Monomial> divide(const Monomial& divisor) const;
  Monomial without(const Symbol& s) const;
  Monomial inverse() const;
  /// Split into (factors satisfying pred, the rest).
  std::pair<Monomial, Monomial> split(const std::function<bool(const Symbol&)>& pred) const;

  /// Graded lexicographic comparison: total degree first, then lexicographic
  /// over the symbol order. Returns <0, 0, >0.
  int compare(const Monomial& other) const;
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.degree_ == b.degree_ && a.factors_ == b.factors_;
  }
  friend bool operator<(const Monomial& a, const Monomial& b) { return a.compare(b) < 0; }

  std::size_t hash() const;

 private:
  std::vector<Factor> factors_;
  int degree_ = 0;
};

Monomial monomial_gcd(const Monomial& a, const Monomial& b);

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// Sparse multivariate polynomial with rational coefficients; terms are kept
/// sorted by descending monomial order with nonzero coefficients.
class Poly {
 public:
  struct Term {
    Monomial monomial;
    Rational coeff;
    friend bool operator==(const Term& a, const Term& b) {
      return a.monomial == b.monomial && a.coeff == b.coeff;
    }
  };

  Poly() = default;
  Poly(const Rational& c);  // NOLINT(google-explicit-constructor)
  Poly(long c) : Poly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  Poly(const Symbol& s);  // NOLINT(google-explicit-constructor)
  Poly(const Monomial& m, const Rational& c = 1);
  static Poly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_unit()); }
  Rational constant_value() const;
  bool is_monomial() const { return terms_.size() == 1; }
  const Term& leading() const { return terms_.front(); }

  Poly operator-() const;
  Poly operator+(const Poly& other) const;
  Poly operator-(const Poly& other) const;
  Poly operator*(const Poly& other) const;
  Poly operator*(const Rational& c) const;
  Poly& operator+=(const Poly& other) { return *this = *this + other; }
  Poly& operator-=(const Poly& other) { return *this = *this - other; }
  Poly& operator*=(const Poly& other) { return *this = *this * other; }
  Poly pow(int n) const;
  Poly mul_monomial(const Monomial& m, const Rational& c) const;

  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  /// Exact quotient by `divisor`, nullopt when the division leaves a remainder.
  std::optional<Poly> divide_exact(const Poly& divisor) const;

  Poly diff(const Symbol& s) const;
  int degree_in(const Symbol& s) const;
  std::set<Symbol> symbols() const;
  bool contains(const Symbol& s) const;
  bool contains_if(const std::function<bool(const Symbol&)>& pred) const;

  /// Collect with respect to the symbols accepted by `pred`: returns a map from
  /// the accepted part of each monomial to its coefficient polynomial.
  std::map<Monomial, Poly> collect(const std::function<bool(const Symbol&)>& pred) const;

  Rational eval(const std::function<Rational(const Symbol&)>& value) const;
  double eval_float(const std::function<double(const Symbol&)>& value) const;

  /// gcd of the monomials of all terms (minimum exponent per symbol).
  Monomial monomial_content() const;
  /// Positive rational c such that this / c has coprime integer coefficients.
  Rational rational_content() const;
  /// Divides out rational and monomial content and makes the leading coefficient positive.
  Poly primitive() const;

  std::size_t hash() const;

 private:
  std::vector<Term> terms_;
};

/// Merges unsorted terms into canonical order, summing duplicates and dropping zeros.
std::vector<Poly::Term> canonical_terms(std::vector<Poly::Term> terms);

}  // namespace jetlie
