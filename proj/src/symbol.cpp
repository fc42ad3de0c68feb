#include "jetlie/symbol.hpp"

#include <functional>
#include <stdexcept>

#include "jetlie/error.hpp"

namespace jetlie {

namespace {

const char* const parameter_names[] = {"a", "b", "p", "q"};

}  // namespace

Symbol Symbol::jet(int i, int j) {
  if (i < 0 || j < 0) throw Error("jet indices must be nonnegative");
  return Symbol(SymbolKind::jet, i, j);
}

Symbol Symbol::parameter(int index) {
  if (index < 0 || index > 3) throw Error("no parameter with index " + std::to_string(index));
  return Symbol(SymbolKind::parameter, index, 0);
}

Symbol Symbol::unknown(int k) {
  if (k < 0) throw Error("unknown constants are numbered from 0");
  return Symbol(SymbolKind::unknown, k, 0);
}

Symbol Symbol::w(int k) {
  if (k < 0) throw Error("negative derivative order");
  return Symbol(SymbolKind::ode_dependent, k, 0);
}

Symbol Symbol::eps(int k) { return Symbol(SymbolKind::group_parameter, k, 0); }
Symbol Symbol::exp_eps(int k) { return Symbol(SymbolKind::group_exponential, k, 0); }

Symbol Symbol::function(std::string name, std::vector<Symbol> arguments, std::vector<int> orders) {
  if (orders.empty()) orders.assign(arguments.size(), 0);
  if (orders.size() != arguments.size()) throw Error("function derivative orders do not match its arity");
  Symbol s(SymbolKind::function, 0, 0);
  int total = 0;
  for (int o : orders) total += o;
  s.a_ = total;
  s.fn_ = std::make_shared<const FunctionData>(FunctionData{std::move(name), std::move(arguments), std::move(orders)});
  return s;
}

Symbol Symbol::function_derivative(std::size_t argument) const {
  const FunctionData& f = *fn_;
  std::vector<int> orders = f.orders;
  ++orders.at(argument);
  return function(f.name, f.arguments, std::move(orders));
}

std::string Symbol::name() const {
  switch (kind_) {
    case SymbolKind::parameter:
      return parameter_names[a_];
    case SymbolKind::unknown:
      return "c" + std::to_string(a_);
    case SymbolKind::independent:
      return a_ == 0 ? "x" : "t";
    case SymbolKind::jet:
      if (a_ == 0 && b_ == 0) return "u";
      return "u[" + std::to_string(a_) + "," + std::to_string(b_) + "]";
    case SymbolKind::ode_independent:
      return "z";
    case SymbolKind::ode_dependent:
      return a_ == 0 ? "w" : "w[" + std::to_string(a_) + "]";
    case SymbolKind::group_parameter:
      return a_ == 0 ? "eps" : "eps" + std::to_string(a_);
    case SymbolKind::group_exponential:
      return "exp(" + Symbol::eps(a_).name() + ")";
    case SymbolKind::function: {
      std::string out = fn_->name;
      std::string subs;
      for (std::size_t n = 0; n < fn_->arguments.size(); ++n) {
        for (int r = 0; r < fn_->orders[n]; ++r) {
          if (!subs.empty()) subs += ",";
          subs += fn_->arguments[n].name();
        }
      }
      if (!subs.empty()) out += "_{" + subs + "}";
      return out;
    }
  }
  return "?";
}

int Symbol::compare(const Symbol& other) const {
  if (kind_ != other.kind_) return kind_ < other.kind_ ? -1 : 1;
  if (kind_ == SymbolKind::jet) {
    // order by total order, then by x-order
    if (jet_order() != other.jet_order()) return jet_order() < other.jet_order() ? -1 : 1;
  }
  if (a_ != other.a_) return a_ < other.a_ ? -1 : 1;
  if (b_ != other.b_) return b_ < other.b_ ? -1 : 1;
  if (kind_ != SymbolKind::function) return 0;
  if (fn_ == other.fn_) return 0;
  const FunctionData& f = *fn_;
  const FunctionData& g = *other.fn_;
  if (int c = f.name.compare(g.name); c != 0) return c < 0 ? -1 : 1;
  if (f.arguments.size() != g.arguments.size()) return f.arguments.size() < g.arguments.size() ? -1 : 1;
  for (std::size_t n = 0; n < f.arguments.size(); ++n) {
    if (int c = f.arguments[n].compare(g.arguments[n]); c != 0) return c;
  }
  // higher derivative in an earlier argument sorts first
  for (std::size_t n = 0; n < f.orders.size(); ++n) {
    if (f.orders[n] != g.orders[n]) return f.orders[n] > g.orders[n] ? -1 : 1;
  }
  return 0;
}

std::size_t Symbol::hash() const {
  std::size_t h = static_cast<std::size_t>(kind_) * 0x9e3779b97f4a7c15ULL;
  h ^= std::hash<int>()(a_) + 0x9e3779b9 + (h << 6) + (h >> 2);
  h ^= std::hash<int>()(b_) + 0x9e3779b9 + (h << 6) + (h >> 2);
  if (fn_) {
    h ^= std::hash<std::string>()(fn_->name) + (h << 6) + (h >> 2);
    for (int o : fn_->orders) h ^= std::hash<int>()(o) + 0x9e3779b9 + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace jetlie
