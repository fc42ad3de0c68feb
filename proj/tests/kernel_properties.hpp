#pragma once

#include <random>

#include "jetlie/linear_solve.hpp"
#include "random_expr.hpp"

namespace jetlie::testing {

// Each property runs `cases` seeded random cases and returns the number of failures.

/// + and * of normal forms agree with + and * of their values in Q(sqrt r).
inline int normal_form_soundness(std::uint64_t seed, int cases) {
  std::mt19937_64 rng(seed);
  int failures = 0;
  for (int n = 0; n < cases; ++n) {
    Expr e1 = random_expr(rng), e2 = random_expr(rng);
    auto p = random_sample_point(rng);
    QuadraticValue v1 = e1.eval_quadratic(p), v2 = e2.eval_quadratic(p);
    Rational radicand = sample_kernel().eval([&](const Symbol& s) { return p.at(s); });
    if (!same_value((e1 * e2).eval_quadratic(p), multiply(v1, v2, radicand))) ++failures;
    if (!same_value((e1 + e2).eval_quadratic(p), add(v1, v2, radicand))) ++failures;
  }
  return failures;
}

inline int diff_commutation(std::uint64_t seed, int cases) {
  std::mt19937_64 rng(seed);
  const auto& symbols = sample_symbols();
  std::uniform_int_distribution<std::size_t> pick(0, symbols.size() - 1);
  int failures = 0;
  for (int n = 0; n < cases; ++n) {
    Expr e = random_expr(rng);
    Symbol s1 = symbols[pick(rng)], s2 = symbols[pick(rng)];
    if (e.diff(s1).diff(s2) != e.diff(s2).diff(s1)) ++failures;
  }
  return failures;
}

inline int parse_print_round_trip(std::uint64_t seed, int cases) {
  std::mt19937_64 rng(seed);
  int failures = 0;
  for (int n = 0; n < cases; ++n) {
    Expr e = random_expr(rng);
    std::string text = print(e);
    if (parse(text) != e || print(parse(text)) != text) ++failures;
  }
  return failures;
}

/// Every returned vector solves the system, the vectors are independent, and
/// their number is the unknown count minus the generic rank. The generic rank
/// is the largest rank over random parameter points.
inline int null_space_verification(std::uint64_t seed, int cases) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> size(1, 5);
  std::uniform_int_distribution<int> coin(0, 3);
  const Symbol a = Symbol::alpha(), b = Symbol::beta();
  const std::vector<Symbol> coords{Symbol::x(), Symbol::u(), Symbol::jet(1, 0)};
  int failures = 0;
  for (int n = 0; n < cases; ++n) {
    int nu = size(rng), ne = size(rng);
    std::vector<Symbol> unknowns;
    for (int k = 0; k < nu; ++k) unknowns.push_back(Symbol::unknown(k + 1));
    std::vector<Expr> system;
    // one row per (equation, coordinate monomial); coefficients polynomial in a, b
    std::vector<std::vector<Poly>> rows;
    for (int e = 0; e < ne; ++e) {
      std::vector<Expr> parts;
      for (const auto& c : coords) {
        std::vector<Poly> row;
        for (int k = 0; k < nu; ++k) {
          Poly coeff = coin(rng) ? Poly() : Poly(a) * Poly(random_rational(rng)) + Poly(random_rational(rng));
          if (coin(rng) == 0) coeff = coeff * Poly(b);
          row.push_back(coeff);
          parts.push_back(Expr(coeff) * Expr(unknowns[k]) * Expr(c));
        }
        rows.push_back(row);
      }
      system.push_back(sum_of(std::move(parts)));
    }
    LinearSolution sol = linear_solve(system, unknowns);
    bool ok = true;
    for (const auto& v : sol.basis) {
      std::map<Symbol, Expr> bind;
      for (int k = 0; k < nu; ++k) bind.emplace(unknowns[k], Expr(v[k]));
      for (const auto& eq : system) ok = ok && eq.substitute(bind).is_zero();
    }
    std::size_t rank = 0, vector_rank = 0;
    for (int trial = 0; trial < 4; ++trial) {
      std::map<Symbol, Rational> point{{a, random_rational(rng, 50)}, {b, random_rational(rng, 50)}};
      auto at = [&](const Poly& c) { return c.eval([&](const Symbol& s) { return point.at(s); }); };
      std::vector<std::vector<Rational>> numeric, vectors;
      for (const auto& row : rows) {
        std::vector<Rational> nr;
        for (const auto& c : row) nr.push_back(at(c));
        numeric.push_back(nr);
      }
      for (const auto& v : sol.basis) {
        std::vector<Rational> nv;
        for (const auto& c : v) nv.push_back(at(c));
        vectors.push_back(nv);
      }
      rank = std::max(rank, rational_rank(numeric));
      vector_rank = std::max(vector_rank, rational_rank(vectors));
    }
    ok = ok && vector_rank == sol.basis.size() && sol.basis.size() == static_cast<std::size_t>(nu) - rank;
    if (!ok) ++failures;
  }
  return failures;
}

}  // namespace jetlie::testing
