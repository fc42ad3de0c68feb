#include <random>

#include "doctest.h"
#include "jetlie/error.hpp"
#include "jetlie/jet_space.hpp"
#include "jetlie/parser.hpp"
#include "random_expr.hpp"

using namespace jetlie;
using namespace jetlie::testing;

namespace {

Equation spe() { return expand_equation(Expr(Symbol::alpha()), Expr(Symbol::beta())); }

// Random polynomial in x, t, u and pure derivatives up to order 4.
Expr random_reduced(std::mt19937_64& rng) {
  static const std::vector<Symbol> symbols = {
      Symbol::x(),       Symbol::t(),       Symbol::u(),       Symbol::jet(1, 0), Symbol::jet(2, 0), Symbol::jet(3, 0),
      Symbol::jet(4, 0), Symbol::jet(0, 1), Symbol::jet(0, 2), Symbol::jet(0, 3), Symbol::jet(0, 4), Symbol::alpha()};
  std::uniform_int_distribution<int> nterms(1, 4), degree(1, 3);
  std::uniform_int_distribution<std::size_t> pick(0, symbols.size() - 1);
  std::vector<Expr> parts;
  int n = nterms(rng);
  for (int k = 0; k < n; ++k) {
    Expr term(random_rational(rng));
    int d = degree(rng);
    for (int j = 0; j < d; ++j) term *= Expr(symbols[pick(rng)]);
    parts.push_back(term);
  }
  return sum_of(std::move(parts));
}

}  // namespace

TEST_CASE("equation expansion") {
  // hand expansion of (u^3)_xx / 3 = 2 u u_x^2 + u^2 u_xx
  CHECK(spe().rhs() == parse("a*u + 2*b*u*u[1,0]^2 + b*u^2*u[2,0]"));
  CHECK(expand_equation(Expr(1), Expr(make_rational(1, 2))).rhs() == parse("u + u*u[1,0]^2 + 1/2*u^2*u[2,0]"));
  CHECK(expand_equation(Expr(Symbol::alpha()), Expr(0)).rhs() == parse("a*u"));
  CHECK(spe().order() == 2);
  CHECK_THROWS_AS(Equation(parse("u[0,1]")), Error);
  CHECK_THROWS_AS(Equation(parse("x*u")), Error);
}

TEST_CASE("mixed coordinates on the manifold") {
  JetSpace jet(spe());
  CHECK(jet.reduce_mixed(1, 1) == parse("a*u + 2*b*u*u[1,0]^2 + b*u^2*u[2,0]"));
  CHECK(jet.reduce_mixed(2, 1) == parse("a*u[1,0] + 2*b*u[1,0]^3 + 6*b*u*u[1,0]*u[2,0] + b*u^2*u[3,0]"));
  CHECK(jet.total_dx(Expr(Symbol::u())) == Expr(Symbol::jet(1, 0)));
  CHECK(jet.total_dx(Expr(Symbol::jet(0, 1))) == jet.reduce_mixed(1, 1));
  CHECK(jet.total_dt(Expr(Symbol::jet(1, 0))) == jet.total_dx(Expr(Symbol::jet(0, 1))));
  for (int i = 1; i <= 5; ++i) {
    for (const auto& s : jet.reduce_mixed(i, 1).symbols()) CHECK_FALSE(s.is_mixed_jet());
  }
}

TEST_CASE("linear case closed form") {
  // u_xt = a u: u[i,j] = a^min(i,j) u[i-m, j-m]
  JetSpace jet(expand_equation(Expr(Symbol::alpha()), Expr(0)));
  for (int i = 1; i <= 6; ++i) {
    for (int j = 1; i + j <= 12; ++j) {
      int m = std::min(i, j);
      Expr expected = Expr(Symbol::alpha()).pow(m) * Expr(Symbol::jet(i - m, j - m));
      CHECK(jet.reduce_mixed(i, j) == expected);
    }
  }
  CHECK(jet.reduce_mixed(2, 2) == parse("a^2*u"));
}

TEST_CASE("total derivative of an opaque function") {
  JetSpace jet(spe());
  std::vector<Symbol> arity{Symbol::x(), Symbol::t(), Symbol::u(), Symbol::jet(1, 0), Symbol::jet(0, 1)};
  Symbol q = Symbol::function("Q", arity, {0, 0, 0, 0, 0});
  Expr expected = Expr(q.function_derivative(0)) + Expr(Symbol::jet(1, 0)) * Expr(q.function_derivative(2)) +
                  Expr(Symbol::jet(2, 0)) * Expr(q.function_derivative(3)) +
                  parse("a*u + 2*b*u*u[1,0]^2 + b*u^2*u[2,0]") * Expr(q.function_derivative(4));
  CHECK(jet.total_dx(Expr(q)) == expected);
}

TEST_CASE("order cap") {
  JetSpace jet(spe(), 6);
  CHECK_NOTHROW(jet.reduce_mixed(3, 3));
  try {
    jet.reduce_mixed(4, 3);
    FAIL("expected OrderCapExceeded");
  } catch (const OrderCapExceeded& e) {
    CHECK(std::string(e.what()).find("u[4,3]") != std::string::npos);
  }
}

TEST_CASE("property: total derivatives commute on the manifold") {
  JetSpace jet(spe());
  std::mt19937_64 rng(21);
  for (int n = 0; n < 300; ++n) {
    Expr e = random_reduced(rng);
    CHECK(jet.total_dx(jet.total_dt(e)) == jet.total_dt(jet.total_dx(e)));
  }
}

TEST_CASE("property: consistency with reduce_mixed") {
  JetSpace jet(spe());
  for (int i = 1; i <= 6; ++i) {
    CHECK(jet.total_dt(Expr(Symbol::jet(i, 0))) == jet.reduce_mixed(i, 1));
    CHECK(jet.total_dx(Expr(Symbol::jet(0, i))) == jet.reduce_mixed(1, i));
  }
}

TEST_CASE("property: memoization is transparent") {
  JetSpace cached(spe());
  JetSpace plain(spe(), 12, false);
  for (int i = 1; i <= 5; ++i) {
    for (int j = 1; i + j <= 8; ++j) CHECK(cached.reduce_mixed(i, j) == plain.reduce_mixed(i, j));
  }
  std::mt19937_64 rng(22);
  for (int n = 0; n < 50; ++n) {
    Expr e = random_reduced(rng);
    CHECK(cached.total_derivative(e, 2, 1) == plain.total_derivative(e, 2, 1));
  }
}

TEST_CASE("property: free total derivative matches finite differences") {
  // u = U(x, t) explicit; e(x, t) = e with every u[i,j] -> d^i_x d^j_t U
  std::mt19937_64 rng(23);
  const Symbol x = Symbol::x(), t = Symbol::t();
  Expr U = parse("x^3*t^2 - 2*x*t^3 + x^2 + 3*t - 1/2*x^4*t");
  auto evaluate = [&](const Expr& e, const Rational& xv, const Rational& tv) {
    std::map<Symbol, Rational> point{{x, xv}, {t, tv}, {Symbol::alpha(), 3}, {Symbol::beta(), -2}};
    for (const auto& s : e.symbols()) {
      if (!s.is_jet()) continue;
      Expr d = U;
      for (int k = 0; k < s.jet_i(); ++k) d = d.diff(x);
      for (int k = 0; k < s.jet_j(); ++k) d = d.diff(t);
      point[s] = d.eval({{x, xv}, {t, tv}});
    }
    return e.eval(point);
  };
  // central differences: the error is c*h^2 + O(h^4), so halving h divides it by 4
  auto error_ratio_ok = [](const Rational& e1, const Rational& e2) {
    if (sgn(e1) == 0) return sgn(e2) == 0;
    if (sgn(e2) == 0) return false;
    double ratio = Rational(e1 / e2).get_d();
    return ratio > 3.99 && ratio < 4.01;
  };
  const Rational h = make_rational(1, 1000);
  for (int n = 0; n < 100; ++n) {
    Expr e = random_reduced(rng) + Expr(Symbol::jet(1, 1)) * Expr(Symbol::jet(0, 1));
    Rational xv = random_rational(rng), tv = random_rational(rng);
    Rational dx = evaluate(free_total_dx(e), xv, tv);
    Rational dt = evaluate(free_total_dt(e), xv, tv);
    auto fd_x = [&](const Rational& step) {
      return Rational((evaluate(e, xv + step, tv) - evaluate(e, xv - step, tv)) / (2 * step));
    };
    auto fd_t = [&](const Rational& step) {
      return Rational((evaluate(e, xv, tv + step) - evaluate(e, xv, tv - step)) / (2 * step));
    };
    CHECK(error_ratio_ok(fd_x(h) - dx, fd_x(h / 2) - dx));
    CHECK(error_ratio_ok(fd_t(h) - dt, fd_t(h / 2) - dt));
  }
}
