#include <random>

#include "doctest.h"
#include "jetlie/claims.hpp"
#include "jetlie/error.hpp"
#include "jetlie/parser.hpp"
#include "jetlie/symmetry_engine.hpp"
#include "random_expr.hpp"

using namespace jetlie;
using namespace jetlie::testing;

namespace {

Equation spe() { return expand_equation(Expr(Symbol::alpha()), Expr(Symbol::beta())); }

const Symbol ux = Symbol::jet(1, 0);
const Symbol ut = Symbol::jet(0, 1);

// Weight of the scaling x -> L x, t -> t / L, u -> L^c u that makes every
// monomial of F scale like u_xt (weight c). A monomial with u-degree d and
// i x-derivatives has weight c*d - i, so c = i / (d - 1) when d != 1.
std::optional<Rational> scaling_weight_oracle(const Equation& eq) {
  std::optional<Rational> c;
  for (const auto& term : eq.rhs().as_poly().terms()) {
    int d = 0, i = 0;
    for (const auto& [s, e] : term.monomial.factors()) {
      if (!s.is_jet()) continue;
      d += e;
      i += e * s.jet_i();
    }
    if (d == 1) {
      if (i != 0) return std::nullopt;
      continue;
    }
    Rational w = make_rational(i, d - 1);
    if (c && *c != w) return std::nullopt;
    c = w;
  }
  return c;
}

Symbol q_derivative(std::initializer_list<std::size_t> args) {
  Symbol s = opaque_characteristic(point_arity());
  for (auto k : args) s = s.function_derivative(k);
  return s;
}

// Sets every derivative of Q taken at least `count` times in each listed argument to zero.
Expr drop_derivatives(const Expr& e, std::size_t first, std::size_t second) {
  std::map<Symbol, Expr> zero;
  for (const auto& s : e.symbols()) {
    if (!s.is_function()) continue;
    const auto& orders = s.function_data().orders;
    if (orders[first] >= 1 && orders[second] >= 1) zero.emplace(s, Expr(0));
  }
  return e.substitute(zero);
}

}  // namespace

TEST_CASE("translation characteristics are symmetries") {
  JetSpace jet(spe());
  CHECK(residual(jet, Expr(ux)).is_zero);
  CHECK(residual(jet, Expr(ut)).is_zero);
}

TEST_CASE("residual of non-symmetries") {
  JetSpace jet(spe());
  // D_x D_t u = F and F'[u] = F + 4 b u u_x^2 + 2 b u^2 u_xx
  Residual r = residual(jet, parse("u"));
  CHECK(r.value == parse("-2*b*u*(2*u[1,0]^2 + u*u[2,0])"));
  CHECK_FALSE(r.is_zero);
  CHECK(r.free_coordinates == std::vector<Symbol>{Symbol::u(), ux, Symbol::jet(2, 0)});
  // F'[1] = dF/du
  CHECK(residual(jet, parse("1")).value == -spe().rhs().diff(Symbol::u()));
  JetSpace small(spe(), 6);
  CHECK_THROWS_AS(residual(small, parse("u[5,0]")), OrderCapExceeded);
}

TEST_CASE("scaling weight is determined by the equation") {
  JetSpace jet(spe());
  auto oracle = scaling_weight_oracle(spe());
  REQUIRE(oracle);
  Symbol c = Symbol::unknown(1);
  Expr q = parse("x*u[1,0] - t*u[0,1]") - Expr(c) * Expr(Symbol::u());
  Expr r = residual(jet, q).value;
  // linear in c: r = A + c*B with a single rational root
  Expr B = r.diff(c);
  Expr A = r - Expr(c) * B;
  REQUIRE_FALSE(B.is_zero());
  CHECK(A + Expr(*oracle) * B == Expr(0));
  CHECK(residual(jet, q.substitute({{c, Expr(*oracle)}})).is_zero);
  CHECK_FALSE(residual(jet, q.substitute({{c, Expr(claimed_scaling_weight)}})).is_zero);
  CHECK(point_symmetry_algebra(jet).scaling_weight == *oracle);
}

TEST_CASE("radical candidate gets a verdict and a consistent spot check") {
  JetSpace jet(spe());
  Residual r = residual(jet, parse("u[3,0]/sqrt(2*b*u[3,0]^2 + a)"));
  SpotCheck s = spot_check(r.value, r.is_zero, 7);
  CHECK(s.points == 100);
  CHECK(s.agrees);
  CHECK(s.agrees == (r.is_zero ? s.nonzero == 0 : s.nonzero > 0));
}

TEST_CASE("spot check detects disagreement") {
  Expr nonzero = parse("u[1,0]^2 + 1");
  CHECK(spot_check(nonzero, false, 1).agrees);
  CHECK_FALSE(spot_check(nonzero, true, 1).agrees);
  CHECK(spot_check(Expr(0), true, 1).agrees);
  CHECK(spot_check(Expr(0), true, 1).witness.empty());
}

TEST_CASE("determining system for point characteristics") {
  JetSpace jet(spe());
  DeterminingSystem ds = determining_system(jet, point_arity(), {Symbol::jet(2, 0), Symbol::jet(0, 2)}, {Symbol::beta()});
  enum { X, T, U, UX, UT };
  Expr a(Symbol::alpha()), u(Symbol::u());
  Expr ux_ut = Expr(q_derivative({UX, UT}));
  Expr ut_ut = Expr(q_derivative({UT, UT}));
  Expr ux_ux = Expr(q_derivative({UX, UX}));
  Expr mixed = Expr(ut) * Expr(q_derivative({U, UX})) + a * u * ux_ux + Expr(q_derivative({T, UX}));
  CHECK(contains_up_to_sign(ds.equations, ux_ut));
  CHECK(contains_up_to_sign(ds.equations, ut_ut));
  CHECK(contains_up_to_sign(ds.equations, mixed));
  // the u_xx^2 terms cancel, so Q_{ux,ux} = 0 is not itself a coefficient equation
  CHECK_FALSE(contains_up_to_sign(ds.equations, ux_ux));
  // it is a differential consequence: d/du_t of the mixed equation modulo Q_{ux,ut} = 0
  // gives Q_{u,ux} = 0, and d/du of the remainder gives a*Q_{ux,ux} = 0
  Expr step1 = drop_derivatives(mixed.diff(ut), UX, UT);
  CHECK(step1 == Expr(q_derivative({U, UX})));
  Expr rest = drop_derivatives(mixed, U, UX);
  Expr step2 = drop_derivatives(rest.diff(Symbol::u()), U, UX);
  CHECK(step2 == a * ux_ux);
  for (const auto& e : ds.equations) CHECK_FALSE(e.is_zero());
  CHECK_THROWS_AS(determining_system(jet, point_arity(), {ux}), Error);
}

TEST_CASE("determining system of the linear equation in Q(u)") {
  JetSpace jet(expand_equation(Expr(Symbol::alpha()), Expr(0)));
  std::vector<Symbol> arity{Symbol::u()};
  DeterminingSystem ds = determining_system(jet, arity, {});
  Symbol q = opaque_characteristic(arity);
  Expr quu = Expr(q.function_derivative(0).function_derivative(0));
  Expr linear = Expr(Symbol::u()) * Expr(q.function_derivative(0)) - Expr(q);
  REQUIRE(ds.equations.size() == 2);
  CHECK(contains_up_to_sign(ds.equations, quu));
  CHECK(contains_up_to_sign(ds.equations, linear));
  // Q = L*u solves both
  std::map<Symbol, Expr> lam{{q, parse("c1*u")}, {q.function_derivative(0), parse("c1")},
                             {q.function_derivative(0).function_derivative(0), Expr(0)}};
  for (const auto& e : ds.equations) CHECK(e.substitute(lam).is_zero());
}

TEST_CASE("ansatz examples") {
  JetSpace jet(spe());
  AnsatzResult r = ansatz_solve(jet, point_affine_basis());
  CHECK(point_affine_basis().size() == 10);
  REQUIRE(r.characteristics.size() == 3);
  for (bool v : r.verified) CHECK(v);
  std::vector<Expr> expected{parse("u[1,0]"), parse("u[0,1]"), parse("x*u[1,0] - t*u[0,1] - u")};
  for (const auto& e : expected) CHECK(in_span(e, r.characteristics));
  for (const auto& q : r.characteristics) CHECK(in_span(q, expected));

  r = ansatz_solve(jet, {parse("u[1,0]")});
  REQUIRE(r.characteristics.size() == 1);
  CHECK(r.characteristics[0] == parse("u[1,0]"));
  r = ansatz_solve(jet, {parse("u"), parse("1")});
  CHECK(r.characteristics.empty());
}

TEST_CASE("bounded nonexistence") {
  JetSpace jet(spe());
  NonexistenceReport first = bounded_nonexistence(jet, 1, 1);
  CHECK(first.dimension == 3);
  CHECK(first.new_dimensions == 3);
  for (const auto& q : first.solutions) CHECK(point_field_of(q).is_point);

  NonexistenceReport second = bounded_nonexistence(jet, 2, 3);
  CHECK(second.dimension == 3);
  CHECK(second.lower_order == 3);
  CHECK(second.new_dimensions == 0);
  CHECK(second.label.find("ansatz-bounded") == 0);

  NonexistenceReport fourth = bounded_nonexistence(jet, 4, 2);
  CHECK(fourth.new_dimensions == 0);
  CHECK_THROWS_AS(bounded_nonexistence(jet, 3, 3, 100), Unsupported);
}

TEST_CASE("property: solutions are sound and translations always survive") {
  JetSpace jet(spe());
  std::mt19937_64 rng(41);
  std::vector<Expr> pool = monomial_basis(2, 2);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int n = 0; n < 20; ++n) {
    std::vector<Expr> basis{Expr(ux), Expr(ut)};
    for (int k = 0; k < 12; ++k) {
      Expr e = pool[pick(rng)];
      if (std::find(basis.begin(), basis.end(), e) == basis.end()) basis.push_back(e);
    }
    AnsatzResult r = ansatz_solve(jet, basis);
    for (const auto& q : r.characteristics) CHECK(residual(jet, q).is_zero);
    CHECK(in_span(Expr(ux), r.characteristics));
    CHECK(in_span(Expr(ut), r.characteristics));
  }
}

TEST_CASE("property: numeric cross-validation of zero tests") {
  JetSpace jet(spe());
  std::mt19937_64 rng(42);
  std::vector<Expr> pool = monomial_basis(2, 2);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<int> coin(0, 2);
  for (int n = 0; n < 60; ++n) {
    Expr q = coin(rng) ? Expr(random_rational(rng)) * pool[pick(rng)] : Expr(0);
    if (coin(rng) == 0) q += Expr(ux);
    if (coin(rng) == 0) q += Expr(ut);
    Residual r = residual(jet, q);
    SpotCheck s = spot_check(r.value, r.is_zero, 100 + n);
    CHECK(s.agrees);
  }
}
