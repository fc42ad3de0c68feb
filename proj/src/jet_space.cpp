#include "jetlie/jet_space.hpp"

#include "jetlie/error.hpp"
#include "jetlie/parser.hpp"

namespace jetlie {

Equation::Equation(Expr rhs) : rhs_(std::move(rhs)) {
  if (rhs_.has_radical()) throw Unsupported("equation right-hand side must be polynomial");
  for (const auto& s : rhs_.symbols()) {
    if (s.is_parameter()) continue;
    if (!s.is_jet() || s.jet_j() != 0) {
      throw Unsupported("equation right-hand side may only contain u, u[i,0] and parameters, found " + s.name());
    }
    jets_.push_back(s);
    order_ = std::max(order_, s.jet_i());
  }
}

Equation expand_equation(const Expr& alpha, const Expr& beta) {
  Expr u = Symbol::u();
  Expr cube = u * u * u;
  Expr second = free_total_dx(free_total_dx(cube));
  return Equation(alpha * u + beta * Rational(1, 3) * second);
}

std::set<Symbol> differentiation_symbols(const Expr& e) {
  std::set<Symbol> out;
  for (const auto& s : e.symbols()) {
    if (!s.is_function()) {
      out.insert(s);
      continue;
    }
    for (const auto& arg : s.function_data().arguments) out.insert(arg);
  }
  return out;
}

namespace {

Expr free_total(const Expr& e, bool in_x) {
  std::vector<Expr> parts;
  for (const auto& s : differentiation_symbols(e)) {
    if (s.kind() == SymbolKind::independent) {
      if ((s == Symbol::x()) == in_x) parts.push_back(e.diff(s));
    } else if (s.is_jet()) {
      Symbol next = in_x ? Symbol::jet(s.jet_i() + 1, s.jet_j()) : Symbol::jet(s.jet_i(), s.jet_j() + 1);
      parts.push_back(e.diff(s) * Expr(next));
    }
  }
  return sum_of(std::move(parts));
}

}  // namespace

Expr free_total_dx(const Expr& e) { return free_total(e, true); }
Expr free_total_dt(const Expr& e) { return free_total(e, false); }

JetSpace::JetSpace(Equation equation, int max_order, bool memoize)
    : equation_(std::move(equation)), max_order_(max_order), memoize_(memoize) {
  if (max_order_ < 2) throw Error("max order must be at least 2");
}

void JetSpace::check_order(int i, int j) const {
  if (i + j > max_order_) {
    throw OrderCapExceeded("jet coordinate u[" + std::to_string(i) + "," + std::to_string(j) +
                           "] exceeds the order cap " + std::to_string(max_order_));
  }
}

Expr JetSpace::reduce_mixed(int i, int j) const {
  if (i < 1 || j < 1) throw Error("reduce_mixed needs a mixed coordinate");
  check_order(i, j);
  if (memoize_) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = memo_.find({i, j});
    if (it != memo_.end()) return it->second;
  }
  Expr value;
  if (j == 1) {
    value = i == 1 ? equation_.rhs() : total_dx(reduce_mixed(i - 1, 1));
  } else {
    value = total_dt(reduce_mixed(i, j - 1));
  }
  if (memoize_) {
    std::lock_guard<std::mutex> lock(mutex_);
    memo_.emplace(std::make_pair(i, j), value);
  }
  return value;
}

Expr JetSpace::reduce(const Expr& e) const {
  std::map<Symbol, Expr> bindings;
  for (const auto& s : e.symbols()) {
    if (s.is_mixed_jet()) bindings.emplace(s, reduce_mixed(s.jet_i(), s.jet_j()));
  }
  return bindings.empty() ? e : e.substitute(bindings);
}

Expr JetSpace::coordinate_derivative(const Symbol& s, bool in_x) const {
  int i = s.jet_i() + (in_x ? 1 : 0);
  int j = s.jet_j() + (in_x ? 0 : 1);
  check_order(i, j);
  if (i > 0 && j > 0) return reduce_mixed(i, j);
  return Symbol::jet(i, j);
}

Expr JetSpace::total(const Expr& e, bool in_x) const {
  std::vector<Expr> parts;
  for (const auto& s : differentiation_symbols(e)) {
    if (s.kind() == SymbolKind::independent) {
      if ((s == Symbol::x()) == in_x) parts.push_back(e.diff(s));
    } else if (s.is_jet()) {
      if (s.is_mixed_jet()) throw Error("total derivative of an unreduced coordinate " + s.name());
      Expr d = e.diff(s);
      if (!d.is_zero()) parts.push_back(d * coordinate_derivative(s, in_x));
    }
  }
  return sum_of(std::move(parts));
}

Expr JetSpace::total_dx(const Expr& e) const { return total(e, true); }
Expr JetSpace::total_dt(const Expr& e) const { return total(e, false); }

Expr JetSpace::total_derivative(const Expr& e, int m, int n) const {
  Expr out = e;
  for (int k = 0; k < m; ++k) out = total_dx(out);
  for (int k = 0; k < n; ++k) out = total_dt(out);
  return out;
}

}  // namespace jetlie
