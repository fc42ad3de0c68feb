#include "jetlie/vector_fields.hpp"

#include "jetlie/error.hpp"
#include "jetlie/linear_solve.hpp"
#include "jetlie/parser.hpp"

namespace jetlie {

namespace {

const Symbol kX = Symbol::x();
const Symbol kT = Symbol::t();
const Symbol kU = Symbol::u();
const Symbol kUx = Symbol::jet(1, 0);
const Symbol kUt = Symbol::jet(0, 1);

bool point_component(const Expr& e) {
  for (const auto& s : e.symbols()) {
    if (s.is_jet() && s.jet_order() > 0) return false;
    if (s.is_function()) return false;
  }
  return true;
}

}  // namespace

bool PointVectorField::is_point() const {
  return point_component(xi) && point_component(tau) && point_component(eta);
}

std::string PointVectorField::to_string() const {
  return "(" + print(xi) + ", " + print(tau) + ", " + print(eta) + ")";
}

int jet_order(const Expr& q) {
  int order = 0;
  for (const auto& s : q.symbols()) {
    if (s.is_jet()) order = std::max(order, s.jet_order());
    if (s.is_function()) {
      for (const auto& arg : s.function_data().arguments) {
        if (arg.is_jet()) order = std::max(order, arg.jet_order());
      }
    }
  }
  return order;
}

Expr characteristic_of(const PointVectorField& v) {
  return v.xi * Expr(kUx) + v.tau * Expr(kUt) - v.eta;
}

ContactField point_field_of(const Expr& q) {
  if (jet_order(q) > 1) throw Unsupported("not a contact characteristic: order " + std::to_string(jet_order(q)));
  ContactField out;
  Expr q_ux = q.diff(kUx);
  Expr q_ut = q.diff(kUt);
  Expr q_u = q.diff(kU);
  out.field.xi = q_ux;
  out.field.tau = q_ut;
  out.field.eta = Expr(kUx) * q_ux + Expr(kUt) * q_ut - q;
  out.eta_x = -q.diff(kX) - Expr(kUx) * q_u;
  out.eta_t = -q.diff(kT) - Expr(kUt) * q_u;
  out.is_point = out.field.is_point();
  return out;
}

Expr apply_field(const PointVectorField& v, const Expr& f) {
  return v.xi * f.diff(kX) + v.tau * f.diff(kT) + v.eta * f.diff(kU);
}

PointVectorField commutator(const PointVectorField& v, const PointVectorField& w) {
  if (!v.is_point() || !w.is_point()) {
    throw Unsupported("commutators are only available for point fields");
  }
  return {apply_field(v, w.xi) - apply_field(w, v.xi), apply_field(v, w.tau) - apply_field(w, v.tau),
          apply_field(v, w.eta) - apply_field(w, v.eta)};
}

StructureTable::StructureTable(std::size_t dimension) : dim_(dimension), c_(dimension * dimension * dimension) {}

void StructureTable::set_bracket(std::size_t i, std::size_t j, const std::vector<Rational>& coeffs) {
  for (std::size_t k = 0; k < dim_; ++k) {
    c_[(i * dim_ + j) * dim_ + k] = coeffs[k];
    c_[(j * dim_ + i) * dim_ + k] = -coeffs[k];
  }
}

std::vector<Rational> StructureTable::bracket(std::size_t i, std::size_t j) const {
  std::vector<Rational> out(dim_);
  for (std::size_t k = 0; k < dim_; ++k) out[k] = (*this)(i, j, k);
  return out;
}

std::vector<Rational> StructureTable::bracket(const std::vector<Rational>& a, const std::vector<Rational>& b) const {
  std::vector<Rational> out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (sgn(b[j]) == 0) continue;
      Rational f = a[i] * b[j];
      for (std::size_t k = 0; k < dim_; ++k) out[k] += f * (*this)(i, j, k);
    }
  }
  return out;
}

std::optional<std::vector<Rational>> decompose(const PointVectorField& f, const std::vector<PointVectorField>& basis) {
  std::vector<Symbol> unknowns;
  for (std::size_t k = 0; k <= basis.size(); ++k) unknowns.push_back(Symbol::unknown(static_cast<int>(k)));
  Expr lead = Expr(unknowns[0]);
  std::vector<Expr> system{lead * f.xi, lead * f.tau, lead * f.eta};
  for (std::size_t k = 0; k < basis.size(); ++k) {
    Expr c = Expr(unknowns[k + 1]);
    system[0] -= c * basis[k].xi;
    system[1] -= c * basis[k].tau;
    system[2] -= c * basis[k].eta;
  }
  LinearSolution sol = linear_solve(system, unknowns);
  for (const auto& v : sol.basis) {
    if (v[0].is_zero()) continue;
    if (!v[0].is_constant()) throw Unsupported("decomposition with parameter-dependent coefficients");
    Rational scale = v[0].constant_value();
    std::vector<Rational> out;
    for (std::size_t k = 1; k < v.size(); ++k) {
      if (!v[k].is_constant()) throw Unsupported("decomposition with parameter-dependent coefficients");
      out.push_back(v[k].constant_value() / scale);
    }
    return out;
  }
  return std::nullopt;
}

StructureTable structure_table(const std::vector<PointVectorField>& basis) {
  // linear independence: the zero field must decompose uniquely
  {
    std::vector<Symbol> unknowns;
    std::vector<Expr> system(3);
    for (std::size_t k = 0; k < basis.size(); ++k) {
      unknowns.push_back(Symbol::unknown(static_cast<int>(k + 1)));
      Expr c = Expr(unknowns.back());
      system[0] += c * basis[k].xi;
      system[1] += c * basis[k].tau;
      system[2] += c * basis[k].eta;
    }
    if (!basis.empty() && !linear_solve(system, unknowns).basis.empty()) {
      throw Error("structure table needs a linearly independent basis");
    }
  }
  StructureTable table(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      PointVectorField b = commutator(basis[i], basis[j]);
      auto coeffs = decompose(b, basis);
      if (!coeffs) {
        throw ClosureError("[v" + std::to_string(i + 1) + ", v" + std::to_string(j + 1) + "] = " + b.to_string() +
                           " is not in the span of the basis");
      }
      table.set_bracket(i, j, *coeffs);
    }
  }
  return table;
}

namespace {

std::string join_terms(const std::vector<std::pair<std::string, std::string>>& terms) {
  // (magnitude text, sign) pairs
  std::string out;
  for (const auto& [text, sign] : terms) {
    if (out.empty()) {
      out = (sign == "-" ? "-" : "") + text;
    } else {
      out += " " + sign + " " + text;
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace

std::string format_combination(const std::vector<Rational>& coeffs, const std::string& prefix) {
  std::vector<std::pair<std::string, std::string>> terms;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (sgn(coeffs[k]) == 0) continue;
    Rational mag = abs(coeffs[k]);
    std::string name = prefix + std::to_string(k + 1);
    std::string text = mag == 1 ? name : to_string(mag) + "*" + name;
    terms.emplace_back(text, sgn(coeffs[k]) < 0 ? "-" : "+");
  }
  return join_terms(terms);
}

std::string format_combination(const std::vector<Expr>& coeffs, const std::string& prefix) {
  std::vector<std::pair<std::string, std::string>> terms;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k].is_zero()) continue;
    std::string name = prefix + std::to_string(k + 1);
    if (coeffs[k].is_rational()) {
      Rational c = coeffs[k].rational_value();
      Rational mag = abs(c);
      terms.emplace_back(mag == 1 ? name : to_string(mag) + "*" + name, sgn(c) < 0 ? "-" : "+");
    } else {
      terms.emplace_back("(" + print(coeffs[k]) + ")*" + name, "+");
    }
  }
  return join_terms(terms);
}

}  // namespace jetlie
