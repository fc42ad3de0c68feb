#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace jetlie {

enum class SymbolKind : std::uint8_t {
  parameter,          // a (alpha), b (beta), p, q
  unknown,            // c1, c2, ...
  independent,        // x, t
  jet,                // u[i,j]
  ode_independent,    // z
  ode_dependent,      // w, w[1], w[2], ...
  group_parameter,    // eps, eps1, ...
  group_exponential,  // exp(eps), the only kind allowed negative exponents
  function,           // opaque function derivative, e.g. Q_{u_x,u_t}
};

struct FunctionData;

/// A symbol of the expression language. Symbols are small values compared by
/// content; the order below is the total order used for monomials.
class Symbol {
 public:
  static constexpr int alpha_index = 0;
  static constexpr int beta_index = 1;

  static Symbol x() { return Symbol(SymbolKind::independent, 0, 0); }
  static Symbol t() { return Symbol(SymbolKind::independent, 1, 0); }
  static Symbol u() { return jet(0, 0); }
  static Symbol jet(int i, int j);
  static Symbol alpha() { return Symbol(SymbolKind::parameter, alpha_index, 0); }
  static Symbol beta() { return Symbol(SymbolKind::parameter, beta_index, 0); }
  /// Auxiliary parameters p (index 2) and q (index 3).
  static Symbol parameter(int index);
  static Symbol unknown(int k);
  static Symbol z() { return Symbol(SymbolKind::ode_independent, 0, 0); }
  /// k-th derivative of the ODE unknown w(z).
  static Symbol w(int k);
  static Symbol eps(int k = 0);
  static Symbol exp_eps(int k = 0);
  /// Derivative of the opaque function `name` with `orders[n]` differentiations
  /// with respect to `arguments[n]`.
  static Symbol function(std::string name, std::vector<Symbol> arguments, std::vector<int> orders);

  SymbolKind kind() const { return kind_; }
  int index() const { return a_; }
  int jet_i() const { return a_; }
  int jet_j() const { return b_; }
  int jet_order() const { return a_ + b_; }
  bool is_jet() const { return kind_ == SymbolKind::jet; }
  bool is_mixed_jet() const { return kind_ == SymbolKind::jet && a_ > 0 && b_ > 0; }
  bool is_parameter() const { return kind_ == SymbolKind::parameter; }
  bool is_unknown() const { return kind_ == SymbolKind::unknown; }
  bool is_function() const { return kind_ == SymbolKind::function; }

  const FunctionData& function_data() const { return *fn_; }
  /// For a function symbol: the same function differentiated once more by `argument`.
  Symbol function_derivative(std::size_t argument) const;

  std::string name() const;

  int compare(const Symbol& other) const;
  friend bool operator==(const Symbol& a, const Symbol& b) { return a.compare(b) == 0; }
  friend std::strong_ordering operator<=>(const Symbol& a, const Symbol& b) {
    return a.compare(b) <=> 0;
  }
  std::size_t hash() const;

 private:
  Symbol(SymbolKind kind, int a, int b) : kind_(kind), a_(a), b_(b) {}

  SymbolKind kind_;
  int a_ = 0;
  int b_ = 0;
  std::shared_ptr<const FunctionData> fn_;
};

struct FunctionData {
  std::string name;
  std::vector<Symbol> arguments;
  std::vector<int> orders;
};

struct SymbolHash {
  std::size_t operator()(const Symbol& s) const { return s.hash(); }
};

}  // namespace jetlie
