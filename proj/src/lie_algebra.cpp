#include "jetlie/lie_algebra.hpp"

#include <sstream>

#include "jetlie/error.hpp"
#include "jetlie/linear_solve.hpp"
#include "jetlie/parser.hpp"

namespace jetlie {

QMatrix identity_matrix(std::size_t n) {
  QMatrix out(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) out[i][i] = 1;
  return out;
}

QMatrix multiply(const QMatrix& a, const QMatrix& b) {
  std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), inner = b.size();
  QMatrix out(n, std::vector<Rational>(m));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < inner; ++k) {
      if (sgn(a[i][k]) == 0) continue;
      for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  }
  return out;
}

std::vector<Rational> multiply(const QMatrix& a, const std::vector<Rational>& v) {
  std::vector<Rational> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < v.size(); ++k) out[i] += a[i][k] * v[k];
  }
  return out;
}

ExprMatrix multiply(const ExprMatrix& a, const ExprMatrix& b) {
  std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), inner = b.size();
  ExprMatrix out(n, std::vector<Expr>(m));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<Expr> parts;
      for (std::size_t k = 0; k < inner; ++k) parts.push_back(a[i][k] * b[k][j]);
      out[i][j] = sum_of(std::move(parts));
    }
  }
  return out;
}

std::vector<Expr> multiply(const ExprMatrix& a, const std::vector<Expr>& v) {
  std::vector<Expr> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::vector<Expr> parts;
    for (std::size_t k = 0; k < v.size(); ++k) parts.push_back(a[i][k] * v[k]);
    out[i] = sum_of(std::move(parts));
  }
  return out;
}

ExprMatrix to_expr_matrix(const QMatrix& m) {
  ExprMatrix out;
  for (const auto& row : m) {
    std::vector<Expr> r;
    for (const auto& c : row) r.emplace_back(c);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Rational> characteristic_polynomial(const QMatrix& a) {
  std::size_t n = a.size();
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  QMatrix m(n, std::vector<Rational>(n));
  for (std::size_t k = 1; k <= n; ++k) {
    QMatrix next = multiply(a, m);
    for (std::size_t i = 0; i < n; ++i) next[i][i] += c[n - k + 1];
    m = std::move(next);
    QMatrix am = multiply(a, m);
    Rational trace;
    for (std::size_t i = 0; i < n; ++i) trace += am[i][i];
    c[n - k] = -trace / static_cast<long>(k);
  }
  return c;
}

namespace {

// Synthetic division by (x - r); returns false when r is not a root.
bool divide_root(std::vector<Rational>& poly, const Rational& r) {
  std::size_t n = poly.size() - 1;
  std::vector<Rational> q(n);
  Rational carry = 0;
  for (std::size_t k = n + 1; k-- > 0;) {
    Rational value = poly[k] + carry;
    if (k == 0) {
      if (sgn(value) != 0) return false;
      break;
    }
    q[k - 1] = value;
    carry = value * r;
  }
  poly = std::move(q);
  return true;
}

std::vector<Integer> divisors(Integer n) {
  n = abs(n);
  std::vector<Integer> out;
  for (Integer d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  }
  return out;
}

// Null space basis of a rational matrix (columns as vectors).
std::vector<std::vector<Rational>> rational_null_space(QMatrix m, std::size_t cols) {
  std::vector<long> pivot_of_col(cols, -1);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < m.size(); ++col) {
    std::size_t p = rank;
    while (p < m.size() && sgn(m[p][col]) == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[rank], m[p]);
    Rational inv = 1 / m[rank][col];
    for (auto& x : m[rank]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || sgn(m[r][col]) == 0) continue;
      Rational f = m[r][col];
      for (std::size_t c = 0; c < cols; ++c) m[r][c] -= f * m[rank][c];
    }
    pivot_of_col[col] = static_cast<long>(rank++);
  }
  std::vector<std::vector<Rational>> out;
  for (std::size_t free = 0; free < cols; ++free) {
    if (pivot_of_col[free] >= 0) continue;
    std::vector<Rational> v(cols);
    v[free] = 1;
    for (std::size_t col = 0; col < cols; ++col) {
      if (pivot_of_col[col] >= 0) v[col] = -m[pivot_of_col[col]][free];
    }
    out.push_back(std::move(v));
  }
  return out;
}

QMatrix inverse(QMatrix m) {
  std::size_t n = m.size();
  QMatrix inv = identity_matrix(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && sgn(m[p][col]) == 0) ++p;
    if (p == n) throw Error("singular matrix");
    std::swap(m[col], m[p]);
    std::swap(inv[col], inv[p]);
    Rational f = 1 / m[col][col];
    for (std::size_t c = 0; c < n; ++c) {
      m[col][c] *= f;
      inv[col][c] *= f;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || sgn(m[r][col]) == 0) continue;
      Rational g = m[r][col];
      for (std::size_t c = 0; c < n; ++c) {
        m[r][c] -= g * m[col][c];
        inv[r][c] -= g * inv[col][c];
      }
    }
  }
  return inv;
}

QMatrix shifted(const QMatrix& m, const Rational& lambda) {
  QMatrix out = m;
  for (std::size_t i = 0; i < m.size(); ++i) out[i][i] -= lambda;
  return out;
}

}  // namespace

std::vector<IntegerEigenvalue> integer_spectrum(const QMatrix& m) {
  std::vector<Rational> poly = characteristic_polynomial(m);
  std::vector<IntegerEigenvalue> out;
  int zeros = 0;
  while (poly.size() > 1 && sgn(poly[0]) == 0) {
    poly.erase(poly.begin());
    ++zeros;
  }
  if (zeros > 0) out.push_back({0, zeros});
  if (poly.size() > 1) {
    Integer scale = 1;
    for (const auto& c : poly) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), c.get_den_mpz_t());
    Integer constant = Rational(poly[0] * scale).get_num();
    for (const auto& d : divisors(constant)) {
      for (int sign : {1, -1}) {
        Rational r(d * sign);
        int mult = 0;
        while (poly.size() > 1 && divide_root(poly, r)) ++mult;
        if (mult > 0) out.push_back({d * sign, mult});
      }
    }
  }
  if (poly.size() > 1) {
    throw Unsupported("matrix exponential needs an integer spectrum; the characteristic polynomial has a factor of degree " +
                      std::to_string(poly.size() - 1) + " without integer roots");
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.value < b.value; });
  return out;
}

ExprMatrix matrix_exponential(const QMatrix& m, const Symbol& eps) {
  std::size_t n = m.size();
  auto spectrum = integer_spectrum(m);
  // generalized eigenspaces as columns of V
  QMatrix basis_columns;
  std::vector<std::size_t> block_start;
  for (const auto& ev : spectrum) {
    QMatrix power = identity_matrix(n);
    QMatrix shift = shifted(m, Rational(ev.value));
    for (int k = 0; k < ev.multiplicity; ++k) power = multiply(power, shift);
    auto space = rational_null_space(power, n);
    if (static_cast<int>(space.size()) != ev.multiplicity) throw Error("generalized eigenspace has the wrong dimension");
    block_start.push_back(basis_columns.size());
    for (auto& v : space) basis_columns.push_back(std::move(v));
  }
  block_start.push_back(n);
  QMatrix v(n, std::vector<Rational>(n));
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t r = 0; r < n; ++r) v[r][c] = basis_columns[c][r];
  }
  QMatrix v_inv = inverse(v);
  Symbol exp_symbol = Symbol::exp_eps(eps.index());
  ExprMatrix out(n, std::vector<Expr>(n));
  for (std::size_t b = 0; b < spectrum.size(); ++b) {
    QMatrix projector(n, std::vector<Rational>(n));
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t k = block_start[b]; k < block_start[b + 1]; ++k) projector[r][c] += v[r][k] * v_inv[k][c];
      }
    }
    QMatrix nilpotent = multiply(shifted(m, Rational(spectrum[b].value)), projector);
    Expr scale = Expr(Poly(Monomial(exp_symbol, static_cast<int>(spectrum[b].value.get_si()))));
    QMatrix term = projector;
    Rational factorial = 1;
    for (int j = 0; j < spectrum[b].multiplicity; ++j) {
      if (j > 0) {
        term = multiply(nilpotent, term);
        factorial *= j;
      }
      Expr weight = scale * Expr(Poly(Monomial(eps, j), 1 / factorial));
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
          if (sgn(term[r][c]) != 0) out[r][c] += Expr(term[r][c]) * weight;
        }
      }
    }
  }
  return out;
}

QMatrix ad_matrix(const StructureTable& table, std::size_t i) {
  std::size_t n = table.dimension();
  if (i >= n) throw Error("generator index out of range");
  QMatrix out(n, std::vector<Rational>(n));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t r = 0; r < n; ++r) out[r][k] = table(i, k, r);
  }
  return out;
}

AdjointMap adjoint_exp(std::size_t i, const Symbol& eps, const StructureTable& table) {
  QMatrix minus_ad = ad_matrix(table, i);
  for (auto& row : minus_ad) {
    for (auto& c : row) c = -c;
  }
  return {i, eps, matrix_exponential(minus_ad, eps)};
}

QMatrix evaluate_map(const ExprMatrix& m, const Symbol& eps, const Rational& value) {
  Symbol exp_symbol = Symbol::exp_eps(eps.index());
  std::map<Symbol, Expr> bindings{{eps, Expr(value)}};
  if (sgn(value) == 0) bindings.emplace(exp_symbol, Expr(1));
  QMatrix out;
  for (const auto& row : m) {
    std::vector<Rational> r;
    for (const auto& e : row) {
      Expr v = e.substitute(bindings);
      if (!v.is_rational()) throw Unsupported("map entry " + print(e) + " is not rational at eps = " + to_string(value));
      r.push_back(v.rational_value());
    }
    out.push_back(std::move(r));
  }
  return out;
}

bool is_automorphism(const ExprMatrix& m, const StructureTable& table) {
  std::size_t n = table.dimension();
  auto column = [&](std::size_t k) {
    std::vector<Expr> out;
    for (std::size_t r = 0; r < n; ++r) out.push_back(m[r][k]);
    return out;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      std::vector<Expr> bracket(n);
      for (std::size_t k = 0; k < n; ++k) bracket[k] = Expr(table(i, j, k));
      std::vector<Expr> lhs = multiply(m, bracket);
      std::vector<Expr> a = column(i), b = column(j);
      std::vector<Expr> rhs(n);
      for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
          Expr f = a[p] * b[q];
          if (f.is_zero()) continue;
          for (std::size_t k = 0; k < n; ++k) {
            if (sgn(table(p, q, k)) != 0) rhs[k] += f * Expr(table(p, q, k));
          }
        }
      }
      if (lhs != rhs) return false;
    }
  }
  return true;
}

StructureTable symmetry_algebra_table() {
  StructureTable table(3);
  table.set_bracket(0, 2, {1, 0, 0});
  table.set_bracket(1, 2, {0, -1, 0});
  return table;
}

int witness_orientation(std::size_t generator) {
  static const int orientation[] = {-1, 1, -1};
  if (generator > 2) throw Error("witness maps exist for v1, v2, v3 only");
  return orientation[generator];
}

ExprMatrix witness_map(std::size_t generator, const Symbol& eps, const StructureTable& table) {
  // Ad(exp(s eps v)) = exp(-s eps ad v)
  QMatrix m = ad_matrix(table, generator);
  Rational s = -witness_orientation(generator);
  for (auto& row : m) {
    for (auto& c : row) c *= s;
  }
  return matrix_exponential(m, eps);
}

namespace {

void require_symmetry_algebra(const StructureTable& table) {
  if (!(table == symmetry_algebra_table())) {
    throw Unsupported("normalization is implemented for the algebra [v1,v3] = v1, [v2,v3] = -v2 only");
  }
}

std::vector<Rational> apply_step(const std::vector<Rational>& v, const WitnessStep& step, const StructureTable& table) {
  return multiply(evaluate_map(witness_map(step.generator, Symbol::eps(), table), Symbol::eps(), step.eps), v);
}

std::string format_steps(const std::vector<WitnessStep>& steps) {
  std::string out;
  for (const auto& s : steps) {
    if (!out.empty()) out += ", ";
    out += "F" + std::to_string(s.generator + 1) + "(eps" + std::to_string(s.generator + 1) + " = " + to_string(s.eps) +
           ")";
  }
  return out.empty() ? "none" : out;
}

bool is_zero_vector(const std::vector<Rational>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& c) { return sgn(c) == 0; });
}

}  // namespace

std::vector<Rational> apply_witness(const std::vector<Rational>& v, const std::vector<WitnessStep>& steps,
                                    const Rational& scalar, const StructureTable& table) {
  std::vector<Rational> out = v;
  for (const auto& step : steps) out = apply_step(out, step, table);
  for (auto& c : out) c *= scalar;
  return out;
}

std::string Normalization1D::to_string() const {
  std::ostringstream out;
  out << format_combination(representative);
  switch (family) {
    case Family::first:
      out << " (family v1 + a*v2, a = " << jetlie::to_string(parameter) << ")";
      break;
    case Family::second:
      out << " (family b*v1 + v2, b = " << jetlie::to_string(parameter) << ")";
      break;
    case Family::scaling:
      out << " (v3)";
      break;
  }
  out << "; maps: " << format_steps(steps) << "; scalar " << jetlie::to_string(scalar);
  return out.str();
}

Normalization1D normalize_1d(const std::vector<Rational>& v, const StructureTable& table) {
  require_symmetry_algebra(table);
  if (v.size() != 3) throw Error("expected three coefficients");
  if (is_zero_vector(v)) throw Error("the zero element has no normal form");
  Normalization1D out;
  const Rational &c1 = v[0], &c2 = v[1], &c3 = v[2];
  if (sgn(c3) != 0) {
    out.family = Normalization1D::Family::scaling;
    if (sgn(c1) != 0) out.steps.push_back({0, -c1 / c3});
    if (sgn(c2) != 0) out.steps.push_back({1, -c2 / c3});
    out.scalar = 1 / c3;
  } else if (sgn(c1) != 0) {
    out.family = Normalization1D::Family::first;
    out.parameter = c2 / c1;
    out.scalar = 1 / c1;
    out.finer_class = sgn(out.parameter);
  } else {
    out.family = Normalization1D::Family::second;
    out.parameter = 0;
    out.scalar = 1 / c2;
  }
  out.representative = apply_witness(v, out.steps, out.scalar, table);
  return out;
}

std::optional<std::vector<Rational>> closure_failure(const std::vector<Rational>& h1, const std::vector<Rational>& h2,
                                                     const StructureTable& table) {
  std::vector<Rational> b = table.bracket(h1, h2);
  auto spanned = rational_row_echelon({h1, h2, b});
  auto base = rational_row_echelon({h1, h2});
  if (spanned.size() > base.size()) return b;
  return std::nullopt;
}

std::string Normalization2D::to_string() const {
  return "(" + format_combination(representative.first) + ", " + format_combination(representative.second) +
         "); maps: " + format_steps(steps);
}

Normalization2D normalize_2d(const std::vector<Rational>& h1, const std::vector<Rational>& h2,
                             const StructureTable& table) {
  require_symmetry_algebra(table);
  if (rational_row_echelon({h1, h2}).size() != 2) throw Error("the pair does not span a two-dimensional space");
  if (auto b = closure_failure(h1, h2, table)) {
    throw ClosureError("not a subalgebra: [h1, h2] = " + format_combination(*b) + " is outside span{h1, h2}");
  }
  Normalization2D out;
  std::vector<Rational> v1{1, 0, 0}, v2{0, 1, 0}, v3{0, 0, 1};
  if (sgn(h1[2]) == 0 && sgn(h2[2]) == 0) {
    out.representative = {v1, v2};
  } else {
    const auto& with = sgn(h1[2]) != 0 ? h1 : h2;
    const auto& other = sgn(h1[2]) != 0 ? h2 : h1;
    std::vector<Rational> y(3), x(3);
    for (int k = 0; k < 3; ++k) y[k] = with[k] / with[2];
    for (int k = 0; k < 3; ++k) x[k] = other[k] - other[2] * y[k];
    if (sgn(x[0]) != 0 && sgn(x[1]) != 0) throw Error("unexpected subalgebra shape");
    if (sgn(x[0]) != 0) {
      // reduce y inside the span, then clear its v2 component with F2
      Rational y2 = y[1];
      if (sgn(y2) != 0) out.steps.push_back({1, -y2});
      out.representative = {v1, v3};
    } else {
      Rational y1 = y[0];
      if (sgn(y1) != 0) out.steps.push_back({0, -y1});
      out.representative = {v2, v3};
    }
  }
  // change of basis from the transformed inputs
  std::vector<Rational> g1 = apply_witness(h1, out.steps, 1, table);
  std::vector<Rational> g2 = apply_witness(h2, out.steps, 1, table);
  out.change_of_basis.assign(2, std::vector<Rational>(2));
  for (int k = 0; k < 2; ++k) {
    const auto& target = k == 0 ? out.representative.first : out.representative.second;
    // solve target = a g1 + b g2 on two independent coordinates
    bool solved = false;
    for (int p = 0; p < 3 && !solved; ++p) {
      for (int q = p + 1; q < 3 && !solved; ++q) {
        Rational det = g1[p] * g2[q] - g1[q] * g2[p];
        if (sgn(det) == 0) continue;
        Rational a = (target[p] * g2[q] - target[q] * g2[p]) / det;
        Rational b = (g1[p] * target[q] - g1[q] * target[p]) / det;
        for (int r = 0; r < 3; ++r) {
          if (a * g1[r] + b * g2[r] != target[r]) throw Error("representative is outside the transformed span");
        }
        out.change_of_basis[k] = {a, b};
        solved = true;
      }
    }
    if (!solved) throw Error("degenerate transformed pair");
  }
  return out;
}

}  // namespace jetlie
