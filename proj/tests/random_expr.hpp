#pragma once

#include <random>
#include <vector>

#include "jetlie/expr.hpp"
#include "jetlie/parser.hpp"

namespace jetlie::testing {

inline Rational random_rational(std::mt19937_64& rng, int range = 9) {
  std::uniform_int_distribution<int> num(-range, range);
  std::uniform_int_distribution<int> den(1, range);
  return make_rational(num(rng), den(rng));
}

inline const std::vector<Symbol>& sample_symbols() {
  static const std::vector<Symbol> symbols = {Symbol::x(),         Symbol::t(),         Symbol::u(),
                                              Symbol::jet(1, 0),   Symbol::jet(0, 1),   Symbol::jet(2, 0),
                                              Symbol::jet(3, 0),   Symbol::alpha(),     Symbol::beta()};
  return symbols;
}

inline Poly random_poly(std::mt19937_64& rng, int max_terms = 4, int max_degree = 3) {
  const auto& symbols = sample_symbols();
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::uniform_int_distribution<int> degree(0, max_degree);
  std::uniform_int_distribution<std::size_t> pick(0, symbols.size() - 1);
  std::vector<Poly::Term> terms;
  int n = nterms(rng);
  for (int k = 0; k < n; ++k) {
    std::vector<Monomial::Factor> factors;
    int d = degree(rng);
    for (int j = 0; j < d; ++j) factors.emplace_back(symbols[pick(rng)], 1);
    terms.push_back({Monomial::from_factors(std::move(factors)), random_rational(rng)});
  }
  return Poly::from_terms(std::move(terms));
}

/// The kernel used by the randomized suites: 2*b*u[3,0]^2 + a.
inline Poly sample_kernel() { return parse("2*b*u[3,0]^2 + a").as_poly(); }

/// Random expression; with probability 1/2 it carries powers of sample_kernel().
inline Expr random_expr(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> power(-3, 3);
  Expr e(random_poly(rng));
  if (coin(rng)) {
    e = e * Expr::radical_power(sample_kernel(), power(rng)) + Expr(random_poly(rng, 2, 2));
  }
  return e;
}

inline std::map<Symbol, Rational> random_point(std::mt19937_64& rng, const std::vector<Symbol>& symbols) {
  std::map<Symbol, Rational> point;
  for (const auto& s : symbols) point[s] = random_rational(rng);
  return point;
}

/// Random point where sample_kernel() is positive (so values are real).
inline std::map<Symbol, Rational> random_sample_point(std::mt19937_64& rng) {
  while (true) {
    auto point = random_point(rng, sample_symbols());
    if (sgn(sample_kernel().eval([&](const Symbol& s) { return point.at(s); })) > 0) return point;
  }
}

inline QuadraticValue multiply(const QuadraticValue& p, const QuadraticValue& q, const Rational& r) {
  return {p.a * q.a + p.b * q.b * r, p.a * q.b + p.b * q.a, r};
}

inline QuadraticValue add(const QuadraticValue& p, const QuadraticValue& q, const Rational& r) {
  return {p.a + q.a, p.b + q.b, r};
}

inline bool same_value(const QuadraticValue& p, const QuadraticValue& q) { return p.a == q.a && p.b == q.b; }

// Rank of a rational matrix by plain Gaussian elimination with division.
inline std::size_t rational_rank(std::vector<std::vector<Rational>> m) {
  std::size_t rank = 0;
  std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t p = rank;
    while (p < m.size() && sgn(m[p][c]) == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || sgn(m[r][c]) == 0) continue;
      Rational f = m[r][c] / m[rank][c];
      for (std::size_t k = 0; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace jetlie::testing
