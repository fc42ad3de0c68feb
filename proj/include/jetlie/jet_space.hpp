#pragma once

#include <map>
#include <mutex>
#include <utility>

#include "jetlie/expr.hpp"

namespace jetlie {

/// An evolution-free equation u_xt = F with F polynomial in u, its pure
/// x-derivatives u[i,0] and the parameters.
class Equation {
 public:
  explicit Equation(Expr rhs);

  const Expr& rhs() const { return rhs_; }
  /// Highest i with u[i,0] in F.
  int order() const { return order_; }
  /// The jet symbols u[i,0] occurring in F, ascending.
  const std::vector<Symbol>& jet_symbols() const { return jets_; }

 private:
  Expr rhs_;
  int order_ = 0;
  std::vector<Symbol> jets_;
};

/// u_xt = alpha*u + (beta/3)*(u^3)_xx, fully expanded.
Equation expand_equation(const Expr& alpha, const Expr& beta);

/// The reduced jet space of an equation: coordinates x, t, u[i,0], u[0,j];
/// mixed coordinates are eliminated through the equation and its differential
/// consequences. Thread-safe; the memo table is the only shared state.
class JetSpace {
 public:
  static constexpr int default_max_order = 12;

  explicit JetSpace(Equation equation, int max_order = default_max_order, bool memoize = true);
  JetSpace(const JetSpace&) = delete;
  JetSpace& operator=(const JetSpace&) = delete;

  const Equation& equation() const { return equation_; }
  int max_order() const { return max_order_; }

  /// u[i,j] (i, j >= 1) expressed in reduced coordinates.
  Expr reduce_mixed(int i, int j) const;
  /// Replaces every mixed coordinate of e by its reduction.
  Expr reduce(const Expr& e) const;

  Expr total_dx(const Expr& e) const;
  Expr total_dt(const Expr& e) const;
  /// D_x^m D_t^n e.
  Expr total_derivative(const Expr& e, int m, int n) const;

 private:
  Expr coordinate_derivative(const Symbol& s, bool in_x) const;
  Expr total(const Expr& e, bool in_x) const;
  void check_order(int i, int j) const;

  Equation equation_;
  int max_order_;
  bool memoize_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<int, int>, Expr> memo_;
};

/// Total derivatives on the free jet space (no equation): D_x u[i,j] = u[i+1,j].
Expr free_total_dx(const Expr& e);
Expr free_total_dt(const Expr& e);

/// Symbols that a total derivative must differentiate by: the non-function
/// symbols of e plus the declared arguments of its opaque functions.
std::set<Symbol> differentiation_symbols(const Expr& e);

}  // namespace jetlie
