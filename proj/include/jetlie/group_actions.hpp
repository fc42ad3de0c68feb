#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jetlie/jet_space.hpp"
#include "jetlie/vector_fields.hpp"

namespace jetlie {

/// Closed form of the one-parameter group of a point field: the images of
/// x, t, u as expressions in x, t, u, eps and exp(eps).
struct GroupElement {
  PointVectorField generator;
  Symbol eps = Symbol::eps();
  Expr x = Symbol::x();
  Expr t = Symbol::t();
  Expr u = Symbol::u();

  std::string to_string() const;
};

/// Solves d(x,t,u)/d eps = (xi, tau, eta) exactly for fields affine in (x, t, u)
/// with rational coefficients; Unsupported otherwise.
GroupElement flow(const PointVectorField& v, const Symbol& eps);

/// outer o inner: applies inner first.
GroupElement compose(const GroupElement& outer, const GroupElement& inner);

/// Renames the group parameter: eps -> value, exp(eps) -> exp_value.
GroupElement substitute_parameter(const GroupElement& g, const Expr& value, const Expr& exp_value);

/// True when flow(v, eps1) o flow(v, eps2) = flow(v, eps1 + eps2) and flow(v, 0) is the identity.
bool satisfies_group_law(const PointVectorField& v);

/// Factor lambda with (u_xt - F) pulled back through the prolonged map equal to
/// lambda * (u_xt - F). Handles maps x -> p x + x0, t -> q t + t0, u -> m u + n
/// with p, q, m, x0, t0, n free of x, t, u. Throws NotASymmetry (message
/// carries the residual) when the pullback is not proportional.
Expr equation_invariance(const GroupElement& g, const Equation& equation);

/// The image of the graph of u = f(x, t) under g, as a function of (x, t).
/// f must be a polynomial in x and t.
Expr transform_solution(const GroupElement& g, const Expr& f);

struct ReducedODE {
  std::string family;     // "traveling wave z = t - a*x" and similar
  Expr invariant;         // z as a function of x, t
  Expr similarity;        // u in terms of x, t and w
  Expr multiplier;        // PDE residual = multiplier * (lhs - rhs)
  Expr lhs;               // image of u_xt
  Expr rhs;               // image of F
  Expr ode() const { return lhs - rhs; }
  std::string to_string() const;
};

/// Invariant reduction for an optimal-system representative given by its
/// coefficients on (v1, v2, v3) with v3 = x d/dx - t d/dt + weight*u d/du.
/// Coefficients may be rational or the free parameters p, q. Supported forms:
/// (1, a, 0), (b, 1, 0) and (0, 0, 1); Unsupported otherwise.
ReducedODE reduce(const std::vector<Expr>& coefficients, const Equation& equation, const Rational& weight);

/// Substitutes u = similarity form with a random polynomial w(z) into the PDE
/// using plain partial derivatives and compares with multiplier * ode.
/// Returns the difference (zero when the reduction is consistent).
Expr back_substitution_residual(const ReducedODE& reduced, const Equation& equation, std::uint64_t seed);

}  // namespace jetlie
