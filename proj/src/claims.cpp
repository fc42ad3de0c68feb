#include "jetlie/claims.hpp"

#include <algorithm>

#include "jetlie/error.hpp"
#include "jetlie/linear_solve.hpp"
#include "jetlie/parser.hpp"

namespace jetlie {

std::string reading_name(Reading reading) {
  return reading == Reading::third_derivative ? "third" : "cubed";
}

Expr apply_reading(const Expr& e, Reading reading) {
  if (reading == Reading::third_derivative) return e;
  return e.substitute({{Symbol::jet(3, 0), Expr(Symbol::jet(1, 0)).pow(3)},
                       {Symbol::jet(0, 3), Expr(Symbol::jet(0, 1)).pow(3)}});
}

PointVectorField scaling_field(const Rational& weight) {
  return {Expr(Symbol::x()), -Expr(Symbol::t()), Expr(weight) * Expr(Symbol::u())};
}

std::vector<ClaimedCharacteristic> claimed_local_characteristics() {
  return {
      {"v4", "u[3,0]/sqrt(2*b*u[3,0]^2 + a)"},
      {"v5", "u[3,0] - b^3*u[2,0]^6*u[3,0] - 3/2*a*b^2*u[1,0]*u[2,0]^4 - a^2*b*u[1,0]^3"},
      {"v5 with u[0,3]", "u[0,3] - b^3*u[2,0]^6*u[3,0] - 3/2*a*b^2*u[1,0]*u[2,0]^4 - a^2*b*u[1,0]^3"},
  };
}

std::vector<ClaimedCharacteristic> claimed_third_order_family() {
  return {
      {"c1", "t*u[0,1] + 3*u - x*u[1,0]"},
      {"c2", "u[0,1]"},
      {"c3", "u[0,3] - b^3*u[2,0]^6*u[3,0] - 3/2*a*b^2*u[1,0]*u[2,0]^4 - a^2*b*u[1,0]^3"},
      {"c4", "u[3,0]/sqrt(2*b*u[3,0]^2 + a)"},
      {"c5", "u[1,0]"},
  };
}

GroupElement claimed_flow(std::size_t generator, const Symbol& eps) {
  GroupElement g;
  g.eps = eps;
  Expr e(eps);
  Expr exp_e(Symbol::exp_eps(eps.index()));
  switch (generator) {
    case 0:
      g.generator = {Expr(1), Expr(0), Expr(0)};
      g.x = g.x + e;
      break;
    case 1:
      g.generator = {Expr(0), Expr(1), Expr(0)};
      g.t = g.t + e;
      break;
    case 2:
      g.generator = scaling_field(claimed_scaling_weight);
      g.x = exp_e * g.x;
      g.t = exp_e.pow(-1) * g.t;
      g.u = exp_e.pow(claimed_scaling_weight) * g.u;
      break;
    default:
      throw Error("no claimed flow for generator " + std::to_string(generator + 1));
  }
  return g;
}

ExprMatrix claimed_adjoint_map(std::size_t generator, const Symbol& eps) {
  ExprMatrix m = to_expr_matrix(identity_matrix(3));
  Expr e(eps);
  Expr exp_e(Symbol::exp_eps(eps.index()));
  switch (generator) {
    case 0:
      m[0][2] = e;
      break;
    case 1:
      m[1][2] = e;
      break;
    case 2:
      m[0][0] = exp_e.pow(-1);
      m[1][1] = exp_e;
      break;
    default:
      throw Error("no claimed adjoint map for generator " + std::to_string(generator + 1));
  }
  return m;
}

std::string agreement_name(MapAgreement agreement) {
  switch (agreement) {
    case MapAgreement::exact:
      return "exact";
    case MapAgreement::reversed_parameter:
      return "equal after eps -> -eps";
    case MapAgreement::differs:
      break;
  }
  return "differs";
}

MapAgreement compare_maps(const ExprMatrix& derived, const ExprMatrix& claimed, const Symbol& eps) {
  if (derived == claimed) return MapAgreement::exact;
  std::map<Symbol, Expr> reverse{{eps, -Expr(eps)}, {Symbol::exp_eps(eps.index()), Expr(Symbol::exp_eps(eps.index())).pow(-1)}};
  ExprMatrix flipped = derived;
  for (auto& row : flipped) {
    for (auto& entry : row) entry = entry.substitute(reverse);
  }
  return flipped == claimed ? MapAgreement::reversed_parameter : MapAgreement::differs;
}

std::vector<Symbol> point_arity() {
  return {Symbol::x(), Symbol::t(), Symbol::u(), Symbol::jet(1, 0), Symbol::jet(0, 1)};
}

std::vector<ClaimedEquation> claimed_determining_equations() {
  const Symbol q = opaque_characteristic(point_arity());
  auto d = [&](std::initializer_list<std::size_t> args) {
    Symbol s = q;
    for (std::size_t k : args) s = s.function_derivative(k);
    return Expr(s);
  };
  enum { X, T, U, UX, UT };
  Expr a(Symbol::alpha());
  Expr u(Symbol::u());
  Expr ux(Symbol::jet(1, 0));
  Expr ut(Symbol::jet(0, 1));
  return {
      {"Q_{ux,ux} = 0", d({UX, UX})},
      {"Q_{ux,ut} = 0", d({UX, UT})},
      {"Q_{ut,ut} = 0", d({UT, UT})},
      {"u_t Q_{u,ux} + a u Q_{ux,ux} + Q_{t,ux} = 0", ut * d({U, UX}) + a * u * d({UX, UX}) + d({T, UX})},
      {"a u Q_{ut,ut} + u_x Q_{u,ut} + Q_{x,ut} = 0", a * u * d({UT, UT}) + ux * d({U, UT}) + d({X, UT})},
      {"u_x^2 Q_{u,u} + 2 u_x Q_{x,u} + Q_{x,x} + a u (a Q_{ut,ut} + 2 u_x Q_{u,ut} + 2 Q_{x,ut}) = 0",
       ux.pow(2) * d({U, U}) + Expr(2) * ux * d({X, U}) + d({X, X}) +
           a * u * (a * d({UT, UT}) + Expr(2) * ux * d({U, UT}) + Expr(2) * d({X, UT}))},
      {"u_t Q_{u,ut} - 5 u_x Q_{u,ux} - 5 Q_{x,ux} + Q_{t,ut} - 4 u Q_{ux,ut} - 2 u_x Q_u = 0",
       ut * d({U, UT}) - Expr(5) * ux * d({U, UX}) - Expr(5) * d({X, UX}) + d({T, UT}) - Expr(4) * u * d({UX, UT}) -
           Expr(2) * ux * d({U})},
      {"u_x u_t Q_{u,u} + u_x Q_{t,u} + u_t Q_{x,u} + Q_{x,t} + a u (u_t Q_{u,ut} + Q_{t,ut} + Q_{x,ux} + Q_u) + "
       "a (u_x Q_{ux} + u_t Q_{ut} - Q) = 0",
       ux * ut * d({U, U}) + ux * d({T, U}) + ut * d({X, U}) + d({X, T}) +
           a * u * (ut * d({U, UT}) + d({T, UT}) + d({X, UX}) + d({U})) +
           a * (ux * d({UX}) + ut * d({UT}) - Expr(q))},
  };
}

bool contains_up_to_sign(const std::vector<Expr>& system, const Expr& eq) {
  return std::any_of(system.begin(), system.end(), [&](const Expr& e) { return e == eq || e == -eq; });
}

bool in_span(const Expr& q, const std::vector<Expr>& span) {
  std::vector<Symbol> unknowns{Symbol::unknown(0)};
  std::vector<Expr> parts{Expr(Symbol::unknown(0)) * q};
  for (std::size_t k = 0; k < span.size(); ++k) {
    unknowns.push_back(Symbol::unknown(static_cast<int>(k + 1)));
    parts.push_back(-(Expr(unknowns.back()) * span[k]));
  }
  LinearSolution sol = linear_solve({sum_of(std::move(parts))}, unknowns);
  return std::any_of(sol.basis.begin(), sol.basis.end(), [](const auto& v) { return !v[0].is_zero(); });
}

FamilyComparison compare_third_order_family(const JetSpace& jet, Reading reading, int degree, std::uint64_t seed) {
  FamilyComparison out;
  out.reading = reading;
  std::vector<Expr> members;
  for (const auto& claim : claimed_third_order_family()) {
    Expr q = apply_reading(parse(claim.text), reading);
    Residual r = residual(jet, q);
    out.members.push_back({claim.name, q, r.is_zero, spot_check(r.value, r.is_zero, seed)});
    members.push_back(q);
  }
  std::vector<Expr> basis = monomial_basis(3, degree);
  auto add = [&](const Expr& e) {
    if (std::find(basis.begin(), basis.end(), e) == basis.end()) basis.push_back(e);
  };
  for (const auto& q : members) {
    if (q.has_radical()) {
      add(q);
      continue;
    }
    for (const auto& term : q.as_poly().terms()) {
      add(Expr(Poly(term.monomial.split([](const Symbol& s) { return s.is_parameter(); }).second)));
    }
  }
  out.ansatz_label = "ansatz-bounded: order-3 monomials of jet degree <= " + std::to_string(degree) +
                     ", affine in x, t, plus every monomial of the claimed family and its radical member (" +
                     std::to_string(basis.size()) + " elements)";
  out.derived = ansatz_solve(jet, basis);
  for (const auto& q : out.derived.characteristics) out.derived_in_claimed_span.push_back(in_span(q, members));
  return out;
}

}  // namespace jetlie
