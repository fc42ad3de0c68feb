#include "jetlie/group_actions.hpp"

#include <random>

#include "jetlie/error.hpp"
#include "jetlie/lie_algebra.hpp"
#include "jetlie/parser.hpp"

namespace jetlie {

namespace {

const Symbol kX = Symbol::x();
const Symbol kT = Symbol::t();
const Symbol kU = Symbol::u();

bool is_base_coordinate(const Symbol& s) { return s == kX || s == kT || s == kU; }

bool free_of_coordinates(const Expr& e) {
  for (const auto& s : e.symbols()) {
    if (s.kind() == SymbolKind::independent || s.is_jet() || s.is_function()) return false;
  }
  return true;
}

// Coefficients of x, t, u and the constant term of an affine rational component.
std::vector<Rational> affine_row(const Expr& e, const char* name) {
  if (e.has_radical()) throw Unsupported(std::string(name) + " component is not affine in (x, t, u)");
  auto groups = e.as_poly().collect([](const Symbol& s) { return !s.is_parameter(); });
  std::vector<Rational> row(4);
  for (const auto& [mono, coeff] : groups) {
    if (!coeff.is_constant()) throw Unsupported(std::string(name) + " component has non-rational coefficients");
    if (mono.is_unit()) {
      row[3] = coeff.constant_value();
      continue;
    }
    if (mono.degree() != 1 || !is_base_coordinate(mono.factors().front().first)) {
      throw Unsupported(std::string(name) + " component is not affine in (x, t, u): " + print(e));
    }
    const Symbol& s = mono.factors().front().first;
    row[s == kX ? 0 : s == kT ? 1 : 2] = coeff.constant_value();
  }
  return row;
}

struct AffineGraphMap {
  Expr p, x0, q, t0, m, n;
};

AffineGraphMap split_affine(const GroupElement& g) {
  AffineGraphMap out;
  out.p = g.x.diff(kX);
  out.x0 = g.x - out.p * Expr(kX);
  out.q = g.t.diff(kT);
  out.t0 = g.t - out.q * Expr(kT);
  out.m = g.u.diff(kU);
  out.n = g.u - out.m * Expr(kU);
  for (const Expr* e : {&out.p, &out.x0, &out.q, &out.t0, &out.m, &out.n}) {
    if (!free_of_coordinates(*e)) {
      throw Unsupported("map is not of the form (p x + x0, q t + t0, m u + n): " + g.to_string());
    }
  }
  return out;
}

}  // namespace

std::string GroupElement::to_string() const {
  return "(x, t, u) -> (" + print(x) + ", " + print(t) + ", " + print(u) + ")";
}

GroupElement flow(const PointVectorField& v, const Symbol& eps) {
  QMatrix m{affine_row(v.xi, "xi"), affine_row(v.tau, "tau"), affine_row(v.eta, "eta"), {0, 0, 0, 0}};
  ExprMatrix e = matrix_exponential(m, eps);
  std::vector<Expr> point{Expr(kX), Expr(kT), Expr(kU), Expr(1)};
  std::vector<Expr> image = multiply(e, point);
  GroupElement g;
  g.generator = v;
  g.eps = eps;
  g.x = image[0];
  g.t = image[1];
  g.u = image[2];
  return g;
}

GroupElement compose(const GroupElement& outer, const GroupElement& inner) {
  std::map<Symbol, Expr> bindings{{kX, inner.x}, {kT, inner.t}, {kU, inner.u}};
  GroupElement out = outer;
  out.x = outer.x.substitute(bindings);
  out.t = outer.t.substitute(bindings);
  out.u = outer.u.substitute(bindings);
  return out;
}

GroupElement substitute_parameter(const GroupElement& g, const Expr& value, const Expr& exp_value) {
  std::map<Symbol, Expr> bindings{{g.eps, value}, {Symbol::exp_eps(g.eps.index()), exp_value}};
  GroupElement out = g;
  out.x = g.x.substitute(bindings);
  out.t = g.t.substitute(bindings);
  out.u = g.u.substitute(bindings);
  return out;
}

bool satisfies_group_law(const PointVectorField& v) {
  GroupElement g1 = flow(v, Symbol::eps(1));
  GroupElement g2 = flow(v, Symbol::eps(2));
  GroupElement sum = substitute_parameter(flow(v, Symbol::eps(3)), Expr(Symbol::eps(1)) + Expr(Symbol::eps(2)),
                                          Expr(Symbol::exp_eps(1)) * Expr(Symbol::exp_eps(2)));
  GroupElement composed = compose(g1, g2);
  if (!(composed.x == sum.x && composed.t == sum.t && composed.u == sum.u)) return false;
  GroupElement zero = substitute_parameter(g1, Expr(0), Expr(1));
  return zero.x == Expr(kX) && zero.t == Expr(kT) && zero.u == Expr(kU);
}

Expr equation_invariance(const GroupElement& g, const Equation& equation) {
  AffineGraphMap a = split_affine(g);
  Expr p_inv = a.p.inverse();
  Expr q_inv = a.q.inverse();
  // u~_{i,j} = m p^-i q^-j u_{i,j} (+ n when i = j = 0)
  std::map<Symbol, Expr> bindings;
  for (const auto& s : equation.jet_symbols()) {
    Expr image = a.m * p_inv.pow(s.jet_i()) * Expr(s);
    if (s.jet_i() == 0) image += a.n;
    bindings.emplace(s, image);
  }
  Expr lambda = a.m * p_inv * q_inv;
  Expr mixed = Expr(Symbol::jet(1, 1));
  Expr pulled = lambda * mixed - equation.rhs().substitute(bindings);
  Expr residual = pulled - lambda * (mixed - equation.rhs());
  if (!residual.is_zero()) {
    throw NotASymmetry("pullback is not proportional to the equation; residual " + print(residual));
  }
  return lambda;
}

Expr transform_solution(const GroupElement& g, const Expr& f) {
  for (const auto& s : f.symbols()) {
    if (!(s == kX || s == kT || s.is_parameter())) {
      throw Unsupported("transform_solution takes polynomials in x and t, found " + s.name());
    }
  }
  if (f.has_radical()) throw Unsupported("transform_solution takes polynomials in x and t");
  AffineGraphMap a = split_affine(g);
  std::map<Symbol, Expr> inverse{{kX, (Expr(kX) - a.x0) * a.p.inverse()}, {kT, (Expr(kT) - a.t0) * a.q.inverse()}};
  return a.m * f.substitute(inverse) + a.n;
}

std::string ReducedODE::to_string() const {
  return family + ": z = " + print(invariant) + ", u = " + print(similarity) + "; " + print(lhs) + " = " + print(rhs);
}

namespace {

// Total derivative for u = phi(x, t) * w(z(x, t)) on expressions in x, t, w[k].
Expr ansatz_derivative(const Expr& e, const Symbol& by, const Expr& z_derivative) {
  std::vector<Expr> parts{e.diff(by)};
  for (const auto& s : e.symbols()) {
    if (s.kind() != SymbolKind::ode_dependent) continue;
    parts.push_back(e.diff(s) * Expr(Symbol::w(s.index() + 1)) * z_derivative);
  }
  return sum_of(std::move(parts));
}

// Rewrites x^a t^b -> x^(a-b) z^b; all terms must share one power of x.
std::pair<Expr, int> to_invariant_form(const Expr& e) {
  const Poly& p = e.as_poly();
  std::vector<Poly::Term> terms;
  std::optional<int> power;
  for (const auto& term : p.terms()) {
    int a = term.monomial.exponent(kX);
    int b = term.monomial.exponent(kT);
    if (power && *power != a - b) throw Error("reduction is not invariant: mixed powers of x remain");
    power = a - b;
    Monomial rest = term.monomial.without(kX).without(kT) * Monomial(Symbol::z(), b);
    terms.push_back({rest, term.coeff});
  }
  return {Expr(Poly::from_terms(std::move(terms))), power.value_or(0)};
}

}  // namespace

ReducedODE reduce(const std::vector<Expr>& c, const Equation& equation, const Rational& weight) {
  if (c.size() != 3) throw Error("expected coefficients on v1, v2, v3");
  ReducedODE out;
  Expr x(kX), t(kT);
  Expr w(Symbol::w(0));
  Expr phi(1);
  if (c[0] == Expr(1) && c[2].is_zero()) {
    out.family = "traveling wave (v1 + a*v2, a = " + print(c[1]) + ")";
    out.invariant = t - c[1] * x;
  } else if (c[1] == Expr(1) && c[2].is_zero()) {
    out.family = "traveling wave (b*v1 + v2, b = " + print(c[0]) + ")";
    out.invariant = x - c[0] * t;
  } else if (c[0].is_zero() && c[1].is_zero() && c[2] == Expr(1)) {
    if (weight.get_den() != 1 || sgn(weight) < 0) {
      throw Unsupported("scaling reduction needs a nonnegative integer weight, got " + to_string(weight));
    }
    out.family = "scaling (v3, weight " + to_string(weight) + ")";
    out.invariant = x * t;
    phi = x.pow(static_cast<int>(weight.get_num().get_si()));
  } else {
    throw Unsupported("reduction supports v1 + a*v2, b*v1 + v2 and v3, got " + format_combination(c));
  }
  out.similarity = phi * w;
  Expr zx = out.invariant.diff(kX);
  Expr zt = out.invariant.diff(kT);
  std::map<Symbol, Expr> bindings;
  Expr current = out.similarity;
  int reached = 0;
  for (const auto& s : equation.jet_symbols()) {
    while (reached < s.jet_i()) {
      current = ansatz_derivative(current, kX, zx);
      ++reached;
    }
    bindings.emplace(s, current);
  }
  Expr mixed = ansatz_derivative(ansatz_derivative(out.similarity, kX, zx), kT, zt);
  Expr rhs = equation.rhs().substitute(bindings);
  auto [lhs_z, lhs_power] = to_invariant_form(mixed);
  auto [rhs_z, rhs_power] = to_invariant_form(rhs);
  int power = lhs_z.is_zero() ? rhs_power : lhs_power;
  if (!lhs_z.is_zero() && !rhs_z.is_zero() && lhs_power != rhs_power) {
    throw Error("reduction is not invariant: the two sides scale differently");
  }
  out.multiplier = x.pow(power);
  out.lhs = lhs_z;
  out.rhs = rhs_z;
  return out;
}

Expr back_substitution_residual(const ReducedODE& reduced, const Equation& equation, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 5);
  Symbol z = Symbol::z();
  // random cubic profile
  Expr profile;
  for (int k = 0; k <= 3; ++k) profile += Expr(make_rational(num(rng), den(rng))) * Expr(z).pow(k);
  std::map<Symbol, Expr> to_xt{{z, reduced.invariant}};
  std::map<Symbol, Expr> w_bindings{{Symbol::w(0), profile.substitute(to_xt)}};
  Expr u = reduced.similarity.substitute(w_bindings);
  // plain partial derivatives of the explicit u(x, t)
  std::map<Symbol, Expr> jets;
  Expr current = u;
  int reached = 0;
  for (const auto& s : equation.jet_symbols()) {
    while (reached < s.jet_i()) {
      current = current.diff(kX);
      ++reached;
    }
    jets.emplace(s, current);
  }
  Expr pde = u.diff(kX).diff(kT) - equation.rhs().substitute(jets);
  // the ODE evaluated on the same profile
  std::map<Symbol, Expr> profile_derivatives;
  Expr d = profile;
  int order = 0;
  for (const auto& s : reduced.ode().symbols()) {
    if (s.kind() == SymbolKind::ode_dependent) order = std::max(order, s.index());
  }
  for (int k = 0; k <= order; ++k) {
    profile_derivatives.emplace(Symbol::w(k), d);
    d = d.diff(z);
  }
  Expr ode = reduced.ode().substitute(profile_derivatives).substitute(to_xt);
  return pde - reduced.multiplier * ode;
}

}  // namespace jetlie
