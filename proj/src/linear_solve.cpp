#include "jetlie/linear_solve.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "jetlie/error.hpp"
#include "jetlie/parser.hpp"

namespace jetlie {

namespace {

using Row = std::vector<std::pair<std::size_t, Poly>>;

const Poly* find_entry(const Row& row, std::size_t col) {
  auto it = std::lower_bound(row.begin(), row.end(), col, [](const auto& e, std::size_t c) { return e.first < c; });
  return (it != row.end() && it->first == col) ? &it->second : nullptr;
}

// a*lhs - b*rhs, entrywise
Row combine(const Poly& a, const Row& lhs, const Poly& b, const Row& rhs) {
  Row out;
  out.reserve(lhs.size() + rhs.size());
  auto p = lhs.begin();
  auto q = rhs.begin();
  while (p != lhs.end() || q != rhs.end()) {
    if (q == rhs.end() || (p != lhs.end() && p->first < q->first)) {
      out.emplace_back(p->first, a * p->second);
      ++p;
    } else if (p == lhs.end() || q->first < p->first) {
      out.emplace_back(q->first, -(b * q->second));
      ++q;
    } else {
      Poly v = a * p->second - b * q->second;
      if (!v.is_zero()) out.emplace_back(p->first, std::move(v));
      ++p;
      ++q;
    }
  }
  return out;
}

// Divides a row (or vector) by the rational and monomial content shared by all
// its entries; returns the monomial part.
template <typename Entries, typename Get>
Monomial remove_content(Entries& entries, Get get) {
  bool first = true;
  Monomial mono;
  Integer num_gcd = 0;
  Integer den_lcm = 1;
  for (auto& e : entries) {
    const Poly& p = get(e);
    if (p.is_zero()) continue;
    for (const auto& t : p.terms()) {
      mono = first ? t.monomial : monomial_gcd(mono, t.monomial);
      first = false;
      Integer n = abs(t.coeff.get_num());
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coeff.get_den_mpz_t());
    }
  }
  if (first) return {};
  Rational c(num_gcd, den_lcm);
  c.canonicalize();
  if (c == 1 && mono.is_unit()) return mono;
  Rational inv = 1 / c;
  for (auto& e : entries) {
    Poly& p = get(e);
    std::vector<Poly::Term> terms;
    for (const auto& t : p.terms()) terms.push_back({*t.monomial.divide(mono), t.coeff * inv});
    p = Poly::from_terms(std::move(terms));
  }
  return mono;
}

int pivot_score(const Poly& p) {
  if (p.is_constant()) return 0;
  if (p.is_monomial()) return 1 + p.leading().monomial.degree();
  return 100 + static_cast<int>(p.size());
}

}  // namespace

std::vector<std::string> LinearSolution::assumption_texts() const {
  std::vector<std::string> out;
  for (const auto& a : assumptions) out.push_back(print(Expr(a)) + " != 0");
  return out;
}

CoefficientMatrix coefficient_matrix(const std::vector<Expr>& system, const std::vector<Symbol>& unknowns) {
  std::map<Symbol, std::size_t> column;
  for (std::size_t k = 0; k < unknowns.size(); ++k) column.emplace(unknowns[k], k);
  std::map<std::tuple<std::size_t, int, Monomial>, std::map<std::size_t, std::vector<Poly::Term>>> groups;
  for (std::size_t i = 0; i < system.size(); ++i) {
    for (const auto& stratum : system[i].strata()) {
      for (const auto& term : stratum.poly.terms()) {
        auto [unknown_part, rest] = term.monomial.split([](const Symbol& s) { return s.is_unknown(); });
        auto [param_part, coordinate_part] = rest.split([](const Symbol& s) { return s.is_parameter(); });
        if (unknown_part.degree() != 1 || unknown_part.factors().size() != 1) {
          throw NonlinearSystem("term " + print(Expr(Poly(term.monomial, term.coeff))) +
                                " is not linear and homogeneous in the unknowns");
        }
        auto col = column.find(unknown_part.factors().front().first);
        if (col == column.end()) {
          throw NonlinearSystem("unknown " + unknown_part.factors().front().first.name() + " is not in the unknown list");
        }
        groups[{i, stratum.power, coordinate_part}][col->second].push_back({param_part, term.coeff});
      }
    }
  }
  CoefficientMatrix matrix;
  matrix.columns = unknowns.size();
  for (auto& [key, entries] : groups) {
    Row row;
    for (auto& [col, terms] : entries) {
      Poly p = Poly::from_terms(std::move(terms));
      if (!p.is_zero()) row.emplace_back(col, std::move(p));
    }
    if (!row.empty()) matrix.rows.push_back(std::move(row));
  }
  return matrix;
}

LinearSolution null_space(CoefficientMatrix matrix) {
  LinearSolution solution;
  solution.equations = matrix.rows.size();
  std::vector<Row> rows = std::move(matrix.rows);
  std::vector<Poly> assumptions;
  // dividing an equation by a parameter monomial assumes it is nonzero
  auto strip = [&](Row& r) {
    Monomial removed = remove_content(r, [](auto& e) -> Poly& { return e.second; });
    for (const auto& [sym, e] : removed.factors()) assumptions.push_back(Poly(sym));
  };
  for (auto& r : rows) strip(r);
  std::vector<bool> is_pivot_row(rows.size(), false);
  std::vector<long> pivot_col_of_row(rows.size(), -1);
  std::vector<bool> column_done(matrix.columns, false);

  while (true) {
    long best_row = -1;
    std::size_t best_col = 0;
    int best_score = 0;
    std::size_t best_len = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (is_pivot_row[r] || rows[r].empty()) continue;
      for (const auto& [col, entry] : rows[r]) {
        int score = pivot_score(entry);
        if (best_row < 0 || score < best_score || (score == best_score && rows[r].size() < best_len)) {
          best_row = static_cast<long>(r);
          best_col = col;
          best_score = score;
          best_len = rows[r].size();
        }
      }
    }
    if (best_row < 0) break;
    const Row pivot_row = rows[best_row];
    const Poly pivot = *find_entry(pivot_row, best_col);
    if (!pivot.is_constant()) {
      if (pivot.is_monomial()) {
        for (const auto& [s, e] : pivot.leading().monomial.factors()) assumptions.push_back(Poly(s));
      } else {
        assumptions.push_back(pivot.primitive());
      }
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (static_cast<long>(r) == best_row) continue;
      const Poly* e = find_entry(rows[r], best_col);
      if (!e) continue;
      Poly factor = *e;
      rows[r] = combine(pivot, rows[r], factor, pivot_row);
      strip(rows[r]);
    }
    is_pivot_row[best_row] = true;
    pivot_col_of_row[best_row] = static_cast<long>(best_col);
    column_done[best_col] = true;
    ++solution.rank;
  }

  // one basis vector per free column
  for (std::size_t f = 0; f < matrix.columns; ++f) {
    if (column_done[f]) continue;
    std::vector<std::size_t> involved;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (is_pivot_row[r] && find_entry(rows[r], f)) involved.push_back(r);
    }
    bool monomial_pivots = true;
    for (auto r : involved) monomial_pivots = monomial_pivots && find_entry(rows[r], pivot_col_of_row[r])->is_monomial();
    std::vector<Poly> vec(matrix.columns);
    if (monomial_pivots) {
      Monomial lcm;
      Rational coeff = 1;
      for (auto r : involved) {
        const auto& lead = find_entry(rows[r], pivot_col_of_row[r])->leading();
        Monomial g = monomial_gcd(lcm, lead.monomial);
        lcm = lcm * *lead.monomial.divide(g);
        coeff *= lead.coeff;
      }
      Poly scale(lcm, coeff);
      vec[f] = scale;
      for (auto r : involved) {
        const auto& lead = find_entry(rows[r], pivot_col_of_row[r])->leading();
        Poly quotient(*lcm.divide(lead.monomial), coeff / lead.coeff);
        vec[pivot_col_of_row[r]] = -(*find_entry(rows[r], f) * quotient);
      }
    } else {
      Poly scale(1);
      for (auto r : involved) scale = scale * *find_entry(rows[r], pivot_col_of_row[r]);
      vec[f] = scale;
      for (auto r : involved) {
        Poly others(1);
        for (auto s : involved) {
          if (s != r) others = others * *find_entry(rows[s], pivot_col_of_row[s]);
        }
        vec[pivot_col_of_row[r]] = -(*find_entry(rows[r], f) * others);
      }
    }
    remove_content(vec, [](Poly& p) -> Poly& { return p; });
    solution.basis.push_back(std::move(vec));
  }

  // canonical basis when everything is rational
  bool rational = true;
  for (const auto& v : solution.basis) {
    for (const auto& p : v) rational = rational && p.is_constant();
  }
  if (rational && !solution.basis.empty()) {
    std::vector<std::vector<Rational>> vectors;
    for (const auto& v : solution.basis) {
      std::vector<Rational> q;
      for (const auto& p : v) q.push_back(p.constant_value());
      vectors.push_back(std::move(q));
    }
    vectors = rational_row_echelon(std::move(vectors));
    solution.basis.clear();
    for (const auto& v : vectors) {
      std::vector<Poly> p;
      for (const auto& c : v) p.emplace_back(c);
      solution.basis.push_back(std::move(p));
    }
  }

  std::sort(assumptions.begin(), assumptions.end(), [](const Poly& a, const Poly& b) {
    return print(Expr(a)) < print(Expr(b));
  });
  assumptions.erase(std::unique(assumptions.begin(), assumptions.end()), assumptions.end());
  solution.assumptions = std::move(assumptions);
  return solution;
}

LinearSolution linear_solve(const std::vector<Expr>& system, const std::vector<Symbol>& unknowns) {
  return null_space(coefficient_matrix(system, unknowns));
}

std::vector<std::vector<Rational>> rational_row_echelon(std::vector<std::vector<Rational>> vectors) {
  if (vectors.empty()) return vectors;
  std::size_t n = vectors.front().size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < vectors.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < vectors.size() && sgn(vectors[pivot][col]) == 0) ++pivot;
    if (pivot == vectors.size()) continue;
    std::swap(vectors[rank], vectors[pivot]);
    Rational inv = 1 / vectors[rank][col];
    for (auto& v : vectors[rank]) v *= inv;
    for (std::size_t r = 0; r < vectors.size(); ++r) {
      if (r == rank || sgn(vectors[r][col]) == 0) continue;
      Rational f = vectors[r][col];
      for (std::size_t c = 0; c < n; ++c) vectors[r][c] -= f * vectors[rank][c];
    }
    ++rank;
  }
  vectors.resize(rank);
  return vectors;
}

}  // namespace jetlie
