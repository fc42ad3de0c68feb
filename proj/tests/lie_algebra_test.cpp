#include <random>

#include "doctest.h"
#include "jetlie/claims.hpp"
#include "jetlie/error.hpp"
#include "jetlie/lie_algebra.hpp"
#include "jetlie/parser.hpp"
#include "random_expr.hpp"

using namespace jetlie;
using namespace jetlie::testing;

namespace {

using Vec = std::vector<Rational>;

const Symbol eps = Symbol::eps();
const Symbol E = Symbol::exp_eps();

bool is_identity(const ExprMatrix& m) { return m == to_expr_matrix(identity_matrix(m.size())); }

// d/d eps of an entry in eps and exp(eps).
Expr d_eps(const Expr& e) { return e.diff(eps) + e.diff(E) * Expr(E); }

// The one-parameter maps of the optimal-system argument, written out by hand:
// F1: c1 += e*c3, F2: c2 += e*c3.
Vec apply_closed_form(Vec v, const std::vector<WitnessStep>& steps, const Rational& scalar) {
  for (const auto& s : steps) {
    REQUIRE(s.generator < 2);
    v[s.generator] += s.eps * v[2];
  }
  for (auto& c : v) c *= scalar;
  return v;
}

Vec random_nonzero(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coin(0, 2);
  while (true) {
    Vec v(3);
    for (auto& c : v) c = coin(rng) ? random_rational(rng) : Rational(0);
    if (sgn(v[0]) || sgn(v[1]) || sgn(v[2])) return v;
  }
}

}  // namespace

TEST_CASE("ad matrices") {
  StructureTable table = symmetry_algebra_table();
  QMatrix ad3 = ad_matrix(table, 2);
  CHECK(ad3 == QMatrix{{-1, 0, 0}, {0, 1, 0}, {0, 0, 0}});
  QMatrix ad1 = ad_matrix(table, 0);
  CHECK(ad1 != QMatrix(3, Vec(3)));
  CHECK(multiply(ad1, ad1) == QMatrix(3, Vec(3)));
  CHECK(ad_matrix(StructureTable(3), 1) == QMatrix(3, Vec(3)));
}

TEST_CASE("characteristic polynomial and spectrum") {
  QMatrix m{{2, 1}, {0, 2}};
  CHECK(characteristic_polynomial(m) == Vec{4, -4, 1});
  auto spectrum = integer_spectrum(m);
  REQUIRE(spectrum.size() == 1);
  CHECK(spectrum[0].value == 2);
  CHECK(spectrum[0].multiplicity == 2);
  CHECK_THROWS_AS(integer_spectrum(QMatrix{{0, 1}, {2, 0}}), Unsupported);
}

TEST_CASE("matrix exponential") {
  ExprMatrix jordan = matrix_exponential(QMatrix{{2, 1}, {0, 2}}, eps);
  Expr e2 = Expr(E).pow(2);
  CHECK(jordan == ExprMatrix{{e2, Expr(eps) * e2}, {Expr(0), e2}});
  // d/d eps exp(eps m) = m exp(eps m) for a mixed spectrum
  QMatrix m{{1, 2, 0}, {0, -1, 0}, {3, 0, 0}};
  ExprMatrix x = matrix_exponential(m, eps);
  ExprMatrix dx = x;
  for (auto& row : dx) {
    for (auto& entry : row) entry = d_eps(entry);
  }
  CHECK(dx == multiply(to_expr_matrix(m), x));
  for (auto& row : x) {
    for (auto& entry : row) entry = entry.substitute({{eps, Expr(0)}, {E, Expr(1)}});
  }
  CHECK(is_identity(x));
}

TEST_CASE("adjoint maps from the Lie series") {
  StructureTable table = symmetry_algebra_table();
  std::vector<Expr> c{parse("c1"), parse("c2"), parse("c3")};
  AdjointMap a1 = adjoint_exp(0, eps, table);
  AdjointMap a2 = adjoint_exp(1, eps, table);
  AdjointMap a3 = adjoint_exp(2, eps, table);
  // ad(v1) is nilpotent, so the series stops after the linear term: v3 -> v3 - eps*v1
  CHECK(multiply(a1.matrix, std::vector<Expr>{Expr(0), Expr(0), Expr(1)}) ==
        std::vector<Expr>{-Expr(eps), Expr(0), Expr(1)});
  CHECK(multiply(a1.matrix, c) == std::vector<Expr>{parse("c1 - eps*c3"), parse("c2"), parse("c3")});
  CHECK(multiply(a2.matrix, c) == std::vector<Expr>{parse("c1"), parse("c2 + eps*c3"), parse("c3")});
  CHECK(multiply(a3.matrix, c) == std::vector<Expr>{parse("exp(eps)*c1"), parse("exp(-eps)*c2"), parse("c3")});
  for (std::size_t i = 0; i < 3; ++i) {
    ExprMatrix m = adjoint_exp(i, eps, table).matrix;
    // d/d eps Ad(exp(eps v_i)) = -ad(v_i) Ad(exp(eps v_i))
    ExprMatrix dm = m;
    for (auto& row : dm) {
      for (auto& entry : row) entry = d_eps(entry);
    }
    QMatrix minus_ad = ad_matrix(table, i);
    for (auto& row : minus_ad) {
      for (auto& entry : row) entry = -entry;
    }
    CHECK(dm == multiply(to_expr_matrix(minus_ad), m));
    CHECK(is_identity(to_expr_matrix(evaluate_map(m, eps, 0))));
    ExprMatrix inverse = m;
    for (auto& row : inverse) {
      for (auto& entry : row) entry = entry.substitute({{eps, -Expr(eps)}, {E, Expr(E).pow(-1)}});
    }
    CHECK(is_identity(multiply(m, inverse)));
    CHECK(is_automorphism(m, table));
  }
  CHECK_FALSE(is_automorphism(to_expr_matrix(QMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 2}}), table));
}

TEST_CASE("claimed closed forms against the Lie series") {
  StructureTable table = symmetry_algebra_table();
  CHECK(compare_maps(adjoint_exp(0, eps, table).matrix, claimed_adjoint_map(0, eps), eps) ==
        MapAgreement::reversed_parameter);
  CHECK(compare_maps(adjoint_exp(1, eps, table).matrix, claimed_adjoint_map(1, eps), eps) == MapAgreement::exact);
  CHECK(compare_maps(adjoint_exp(2, eps, table).matrix, claimed_adjoint_map(2, eps), eps) ==
        MapAgreement::reversed_parameter);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(witness_map(i, eps, table) == claimed_adjoint_map(i, eps));
    CHECK(is_automorphism(claimed_adjoint_map(i, eps), table));
  }
}

TEST_CASE("one-dimensional normal forms") {
  Normalization1D n = normalize_1d({0, 0, 5});
  CHECK(n.family == Normalization1D::Family::scaling);
  CHECK(n.representative == Vec{0, 0, 1});
  CHECK(n.steps.empty());
  CHECK(n.scalar == make_rational(1, 5));

  n = normalize_1d({1, 1, 4});
  CHECK(n.representative == Vec{0, 0, 1});
  REQUIRE(n.steps.size() == 2);
  CHECK(n.steps[0].generator == 0);
  CHECK(n.steps[0].eps == make_rational(-1, 4));
  CHECK(n.steps[1].generator == 1);
  CHECK(n.steps[1].eps == make_rational(-1, 4));
  CHECK(n.scalar == make_rational(1, 4));

  n = normalize_1d({2, 3, 0});
  CHECK(n.family == Normalization1D::Family::first);
  CHECK(n.parameter == make_rational(3, 2));
  CHECK(n.representative == Vec{1, make_rational(3, 2), 0});
  CHECK(n.scalar == make_rational(1, 2));
  CHECK(n.finer_class == 1);

  n = normalize_1d({0, 7, 0});
  CHECK(n.family == Normalization1D::Family::second);
  CHECK(n.parameter == 0);
  CHECK(n.representative == Vec{0, 1, 0});
  CHECK(n.scalar == make_rational(1, 7));

  CHECK_THROWS_AS(normalize_1d({0, 0, 0}), Error);
}

TEST_CASE("two-dimensional normal forms") {
  StructureTable table = symmetry_algebra_table();
  Normalization2D n = normalize_2d({1, 0, 0}, {0, 1, 0});
  CHECK(n.representative.first == Vec{1, 0, 0});
  CHECK(n.representative.second == Vec{0, 1, 0});

  try {
    normalize_2d({1, 1, 0}, {0, 0, 1});
    FAIL("expected ClosureError");
  } catch (const ClosureError& e) {
    CHECK(std::string(e.what()).find("v1 - v2") != std::string::npos);
  }
  CHECK(closure_failure({1, 1, 0}, {0, 0, 1}, table) == Vec{1, -1, 0});

  n = normalize_2d({2, 0, 0}, {1, 0, 5});
  CHECK(n.representative.first == Vec{1, 0, 0});
  CHECK(n.representative.second == Vec{0, 0, 1});

  for (auto [h1, h2] : std::vector<std::pair<Vec, Vec>>{{{1, 0, 0}, {0, 1, 0}}, {{1, 0, 0}, {0, 0, 1}}, {{0, 1, 0}, {0, 0, 1}}}) {
    CHECK_FALSE(closure_failure(h1, h2, table));
    n = normalize_2d(h1, h2);
    CHECK(n.representative == std::make_pair(h1, h2));
  }
  CHECK_THROWS_AS(normalize_2d({1, 0, 0}, {2, 0, 0}), Error);
}

TEST_CASE("property: normal forms of random elements") {
  std::mt19937_64 rng(51);
  for (int k = 0; k < 1000; ++k) {
    Vec v = random_nonzero(rng);
    Normalization1D n = normalize_1d(v);
    // the witness reproduces the representative through the hand-written maps
    CHECK(apply_closed_form(v, n.steps, n.scalar) == n.representative);
    // and through the library's adjoint maps
    CHECK(apply_witness(v, n.steps, n.scalar) == n.representative);
    // the representative is one of v1 + a v2, b v1 + v2 with b = 0, v3
    const Vec& r = n.representative;
    switch (n.family) {
      case Normalization1D::Family::first:
        CHECK(r == Vec{1, n.parameter, 0});
        CHECK(sgn(v[2]) == 0);
        CHECK(n.finer_class == sgn(v[0] * v[1]));
        break;
      case Normalization1D::Family::second:
        CHECK(r == Vec{n.parameter, 1, 0});
        CHECK(sgn(v[2]) == 0);
        break;
      case Normalization1D::Family::scaling:
        CHECK(r == Vec{0, 0, 1});
        CHECK(sgn(v[2]) != 0);
        break;
    }
    // idempotence
    Normalization1D again = normalize_1d(r);
    CHECK(again.representative == r);
    CHECK(again.steps.empty());
    CHECK(again.scalar == 1);
  }
}

TEST_CASE("property: random pairs either close or are rejected with their bracket") {
  std::mt19937_64 rng(52);
  StructureTable table = symmetry_algebra_table();
  for (int k = 0; k < 300; ++k) {
    Vec h1 = random_nonzero(rng), h2 = random_nonzero(rng);
    if (rational_row_echelon({h1, h2}).size() != 2) continue;
    auto failure = closure_failure(h1, h2, table);
    if (failure) {
      CHECK_THROWS_AS(normalize_2d(h1, h2), ClosureError);
      CHECK(*failure == table.bracket(h1, h2));
      continue;
    }
    Normalization2D n = normalize_2d(h1, h2);
    Vec moved1 = apply_closed_form(h1, n.steps, 1), moved2 = apply_closed_form(h2, n.steps, 1);
    for (int row = 0; row < 2; ++row) {
      Vec expected(3);
      for (int j = 0; j < 3; ++j) expected[j] = n.change_of_basis[row][0] * moved1[j] + n.change_of_basis[row][1] * moved2[j];
      CHECK(expected == (row == 0 ? n.representative.first : n.representative.second));
    }
  }
}
