#pragma once

#include <string>
#include <vector>

#include "jetlie/group_actions.hpp"
#include "jetlie/lie_algebra.hpp"
#include "jetlie/symmetry_engine.hpp"
#include "jetlie/vector_fields.hpp"

namespace jetlie {

/// Published symmetry claims for the short pulse equation, kept as fixtures to
/// be checked, never as expected values.

/// How the published symbol u_{x^3} (and u_{t^3}) is read.
enum class Reading { third_derivative, cubed };

std::string reading_name(Reading reading);
/// Identity for third_derivative; replaces u[3,0] by u[1,0]^3 and u[0,3] by
/// u[0,1]^3 for cubed.
Expr apply_reading(const Expr& e, Reading reading);

/// Claimed scaling weight of the point symmetry x d/dx - t d/dt + w u d/du.
inline constexpr int claimed_scaling_weight = 3;
PointVectorField scaling_field(const Rational& weight);

struct ClaimedCharacteristic {
  std::string name;
  std::string text;  // expression grammar, third-derivative reading
};

/// v4, v5 and the variant of v5 whose leading term is u[0,3].
std::vector<ClaimedCharacteristic> claimed_local_characteristics();

/// The five members (c1 ... c5) of the claimed third-order family.
std::vector<ClaimedCharacteristic> claimed_third_order_family();

struct MemberVerdict {
  std::string name;
  Expr characteristic;
  bool is_symmetry = false;
  SpotCheck spot_check;
};

struct FamilyComparison {
  Reading reading = Reading::third_derivative;
  std::vector<MemberVerdict> members;
  AnsatzResult derived;
  /// Per derived characteristic: lies in the span of the claimed members.
  std::vector<bool> derived_in_claimed_span;
  std::string ansatz_label;
};

/// Solves the order-3 ansatz made of all jet monomials of degree <= degree,
/// affine in x, t, plus every monomial of the claimed family and its radical
/// member; checks each member separately.
FamilyComparison compare_third_order_family(const JetSpace& jet, Reading reading, int degree = 2,
                                            std::uint64_t seed = 1);

/// Claimed one-parameter groups G1, G2, G3 (generator 0-based), with the
/// claimed scaling weight.
GroupElement claimed_flow(std::size_t generator, const Symbol& eps);

/// Claimed closed forms F1, F2, F3 of the adjoint maps on coefficient vectors.
ExprMatrix claimed_adjoint_map(std::size_t generator, const Symbol& eps);

/// How a derived map compares with a claimed one.
enum class MapAgreement { exact, reversed_parameter, differs };
std::string agreement_name(MapAgreement agreement);
/// Compares two matrices in eps, also under eps -> -eps.
MapAgreement compare_maps(const ExprMatrix& derived, const ExprMatrix& claimed, const Symbol& eps);

/// Arguments (x, t, u, u[1,0], u[0,1]) of the point characteristic.
std::vector<Symbol> point_arity();

struct ClaimedEquation {
  std::string label;
  Expr equation;  // = 0, in derivatives of opaque_characteristic(point_arity())
};

/// The eight published determining equations for point characteristics.
std::vector<ClaimedEquation> claimed_determining_equations();

/// True when system contains eq or -eq.
bool contains_up_to_sign(const std::vector<Expr>& system, const Expr& eq);

/// True when q is a linear combination (over the parameter fraction field) of span.
bool in_span(const Expr& q, const std::vector<Expr>& span);

}  // namespace jetlie
