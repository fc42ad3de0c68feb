#include "jetlie/symmetry_engine.hpp"

#include <future>
#include <random>
#include <thread>
#include <tuple>

#include "jetlie/error.hpp"
#include "jetlie/parser.hpp"
#include "jetlie/vector_fields.hpp"

namespace jetlie {

namespace {

bool quadratic_zero(const QuadraticValue& v) {
  if (sgn(v.b) == 0) return sgn(v.a) == 0;
  Rational root;
  if (sgn(v.radicand) >= 0 && rational_sqrt(v.radicand, root)) return sgn(v.a + v.b * root) == 0;
  return false;
}

// Runs f(k) for k in [0, n) on up to hardware_concurrency threads; results by index.
template <typename F>
auto parallel_map(std::size_t n, F f) -> std::vector<decltype(f(std::size_t{0}))> {
  using T = decltype(f(std::size_t{0}));
  std::vector<T> out(n);
  std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  if (workers == 1 || n < 2) {
    for (std::size_t k = 0; k < n; ++k) out[k] = f(k);
    return out;
  }
  workers = std::min(workers, n);
  std::vector<std::future<void>> tasks;
  for (std::size_t w = 0; w < workers; ++w) {
    tasks.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t k = w; k < n; k += workers) out[k] = f(k);
    }));
  }
  for (auto& task : tasks) task.get();
  return out;
}

// Divides out rational content and the monomial content in non-function
// symbols; the leading coefficient becomes positive.
Poly without_coordinate_content(const Poly& p) {
  if (p.is_zero()) return p;
  Monomial content = p.monomial_content();
  auto [functions, coordinates] = content.split([](const Symbol& s) { return s.is_function(); });
  Rational c = p.rational_content();
  if (sgn(p.leading().coeff) < 0) c = -c;
  std::vector<Poly::Term> terms;
  for (const auto& t : p.terms()) terms.push_back({*t.monomial.divide(coordinates), t.coeff / c});
  return Poly::from_terms(std::move(terms));
}

}  // namespace

Residual residual(const JetSpace& jet, const Expr& q_in) {
  Expr q = jet.reduce(q_in);
  int order = jet_order(q);
  if (order > jet.max_order() - 2) {
    throw OrderCapExceeded("characteristic of order " + std::to_string(order) + " needs max order " +
                           std::to_string(order + 2) + ", cap is " + std::to_string(jet.max_order()));
  }
  std::vector<Expr> parts{jet.total_dx(jet.total_dt(q))};
  const Expr& rhs = jet.equation().rhs();
  Expr dq = q;
  int done = 0;
  for (const auto& s : jet.equation().jet_symbols()) {
    while (done < s.jet_i()) {
      dq = jet.total_dx(dq);
      ++done;
    }
    parts.push_back(-(rhs.diff(s) * dq));
  }
  Residual r;
  r.value = sum_of(std::move(parts));
  r.is_zero = r.value.is_zero();
  for (const auto& s : r.value.symbols()) {
    if (s.is_jet() || s.kind() == SymbolKind::independent) r.free_coordinates.push_back(s);
  }
  return r;
}

SpotCheck spot_check(const Expr& value, bool symbolic_zero, std::uint64_t seed, int points) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-12, 12);
  std::uniform_int_distribution<int> den(1, 7);
  auto symbols = value.symbols();
  SpotCheck out;
  out.points = points;
  for (int n = 0; n < points; ++n) {
    std::map<Symbol, Rational> point;
    QuadraticValue v;
    for (int attempt = 0;; ++attempt) {
      for (const auto& s : symbols) {
        int n = num(rng);
        // equation parameters are nonzero
        while (s.is_parameter() && n == 0) n = num(rng);
        point[s] = make_rational(n, den(rng));
      }
      if (!value.has_radical()) break;
      Rational r = value.radicand()->eval([&](const Symbol& s) { return point.at(s); });
      // prefer real points; fall back to any nonzero radicand
      if (sgn(r) > 0 || (attempt > 50 && sgn(r) != 0)) break;
    }
    v = value.eval_quadratic(point);
    if (!quadratic_zero(v)) {
      ++out.nonzero;
      if (out.witness.empty()) {
        for (const auto& [s, x] : point) {
          if (!out.witness.empty()) out.witness += ", ";
          out.witness += s.name() + "=" + to_string(x);
        }
      }
    }
  }
  out.agrees = symbolic_zero ? out.nonzero == 0 : out.nonzero > 0;
  return out;
}

Symbol opaque_characteristic(const std::vector<Symbol>& arity) {
  return Symbol::function("Q", arity, std::vector<int>(arity.size(), 0));
}

DeterminingSystem determining_system(const JetSpace& jet, const std::vector<Symbol>& arity,
                                     const std::vector<Symbol>& collect_in,
                                     const std::vector<Symbol>& split_parameters) {
  for (const auto& s : collect_in) {
    if (std::find(arity.begin(), arity.end(), s) != arity.end()) {
      throw Error("cannot collect in " + s.name() + ": it is an argument of Q");
    }
  }
  for (const auto& s : arity) {
    bool allowed = s.kind() == SymbolKind::independent || (s.is_jet() && !s.is_mixed_jet());
    if (!allowed) throw Error("Q may only depend on x, t and reduced jet coordinates, not " + s.name());
  }
  Residual r = residual(jet, Expr(opaque_characteristic(arity)));
  std::set<Symbol> collected(collect_in.begin(), collect_in.end());
  for (const auto& s : r.value.symbols()) {
    if (s.is_jet() && std::find(arity.begin(), arity.end(), s) == arity.end()) collected.insert(s);
  }
  collected.insert(split_parameters.begin(), split_parameters.end());
  if (r.value.has_radical()) throw Unsupported("determining systems are built for polynomial equations only");
  auto groups = r.value.as_poly().collect([&](const Symbol& s) { return collected.count(s) > 0; });
  DeterminingSystem out;
  out.collected_by.assign(collected.begin(), collected.end());
  std::vector<Poly> equations;
  for (const auto& [mono, coeff] : groups) {
    Poly p = without_coordinate_content(coeff);
    if (!p.is_zero() && std::find(equations.begin(), equations.end(), p) == equations.end()) equations.push_back(p);
  }
  std::sort(equations.begin(), equations.end(), [](const Poly& a, const Poly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return print(Expr(a)) < print(Expr(b));
  });
  for (auto& p : equations) out.equations.emplace_back(std::move(p));
  return out;
}

CoefficientMatrix residual_matrix(const std::vector<Expr>& residuals) {
  const Poly* radicand = nullptr;
  for (const auto& r : residuals) {
    if (!r.has_radical()) continue;
    if (radicand && !(*radicand == *r.radicand())) {
      throw RadicalConflict(print(Expr(*radicand)), print(Expr(*r.radicand())));
    }
    radicand = r.radicand();
  }
  // align each parity class to its lowest power of the kernel
  std::map<int, int> lowest;
  for (const auto& r : residuals) {
    for (const auto& st : r.strata()) {
      int parity = ((st.power % 2) + 2) % 2;
      auto it = lowest.find(parity);
      if (it == lowest.end() || st.power < it->second) lowest[parity] = st.power;
    }
  }
  std::map<std::pair<int, Monomial>, std::map<std::size_t, std::vector<Poly::Term>>> groups;
  for (std::size_t k = 0; k < residuals.size(); ++k) {
    for (const auto& st : residuals[k].strata()) {
      int parity = ((st.power % 2) + 2) % 2;
      int shift = (st.power - lowest[parity]) / 2;
      Poly p = shift == 0 ? st.poly : st.poly * radicand->pow(shift);
      for (const auto& term : p.terms()) {
        auto [params, coords] = term.monomial.split([](const Symbol& s) { return s.is_parameter(); });
        groups[{parity, coords}][k].push_back({params, term.coeff});
      }
    }
  }
  CoefficientMatrix matrix;
  matrix.columns = residuals.size();
  for (auto& [key, entries] : groups) {
    std::vector<std::pair<std::size_t, Poly>> row;
    for (auto& [col, terms] : entries) {
      Poly p = Poly::from_terms(std::move(terms));
      if (!p.is_zero()) row.emplace_back(col, std::move(p));
    }
    if (!row.empty()) matrix.rows.push_back(std::move(row));
  }
  return matrix;
}

AnsatzResult ansatz_solve(const JetSpace& jet, const std::vector<Expr>& basis) {
  AnsatzResult out;
  out.basis = basis;
  auto residuals = parallel_map(basis.size(), [&](std::size_t k) { return residual(jet, basis[k]).value; });
  LinearSolution sol = null_space(residual_matrix(residuals));
  out.equations = sol.equations;
  out.rank = sol.rank;
  out.assumptions = sol.assumption_texts();
  for (auto v : sol.basis) {
    // orient each generator so its printed leading coefficient is positive
    std::vector<Expr> probe;
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (!v[k].is_zero()) probe.push_back(Expr(v[k]) * basis[k]);
    }
    if (print(sum_of(std::move(probe))).starts_with('-')) {
      for (auto& c : v) c = -c;
    }
    std::vector<Expr> parts;
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (!v[k].is_zero()) parts.push_back(Expr(v[k]) * basis[k]);
    }
    out.characteristics.push_back(sum_of(std::move(parts)));
    out.coefficients.push_back(v);
  }
  out.verified = parallel_map(out.characteristics.size(),
                              [&](std::size_t k) { return residual(jet, out.characteristics[k]).is_zero; });
  return out;
}

PointAlgebra point_symmetry_algebra(const JetSpace& jet) {
  PointAlgebra out;
  out.solve = ansatz_solve(jet, point_affine_basis());
  const Expr x(Symbol::x());
  const Expr t(Symbol::t());
  const Expr u(Symbol::u());
  std::optional<PointVectorField> v1, v2, v3;
  for (const auto& q : out.solve.characteristics) {
    PointVectorField f = point_field_of(q).field;
    Expr sx = f.xi.diff(Symbol::x());
    auto scaled = [](const PointVectorField& g, const Expr& by) {
      Expr inv = by.inverse();
      return PointVectorField{g.xi * inv, g.tau * inv, g.eta * inv};
    };
    if (!sx.is_zero()) {
      v3 = scaled(f, sx);
    } else if (f.tau.is_zero() && f.eta.is_zero() && f.xi.is_rational()) {
      v1 = scaled(f, f.xi);
    } else if (f.xi.is_zero() && f.eta.is_zero() && f.tau.is_rational()) {
      v2 = scaled(f, f.tau);
    } else {
      throw Error("unexpected point generator " + f.to_string());
    }
  }
  if (!v1 || !v2 || !v3 || out.solve.characteristics.size() != 3) {
    throw Error("point symmetry algebra is not spanned by two translations and a scaling");
  }
  Expr weight = v3->eta.diff(Symbol::u());
  if (!(v3->xi == x && v3->tau == -t && v3->eta == weight * u) || !weight.is_rational()) {
    throw Error("scaling generator has unexpected form " + v3->to_string());
  }
  out.scaling_weight = weight.rational_value();
  out.fields = {*v1, *v2, *v3};
  return out;
}

std::vector<Expr> monomial_basis(int order, int degree, int xt_degree) {
  std::vector<Symbol> jets{Symbol::u()};
  for (int k = 1; k <= order; ++k) {
    jets.push_back(Symbol::jet(k, 0));
    jets.push_back(Symbol::jet(0, k));
  }
  // jet monomials of degree <= degree, by nondecreasing index sequences
  std::vector<Monomial> jet_monomials{Monomial()};
  std::vector<std::pair<Monomial, std::size_t>> frontier{{Monomial(), 0}};
  for (int d = 1; d <= degree; ++d) {
    std::vector<std::pair<Monomial, std::size_t>> next;
    for (const auto& [m, start] : frontier) {
      for (std::size_t k = start; k < jets.size(); ++k) {
        Monomial grown = m * Monomial(jets[k]);
        jet_monomials.push_back(grown);
        next.emplace_back(grown, k);
      }
    }
    frontier = std::move(next);
  }
  std::vector<Expr> out;
  for (int a = 0; a <= xt_degree; ++a) {
    for (int b = 0; a + b <= xt_degree; ++b) {
      Monomial xt = Monomial(Symbol::x(), a) * Monomial(Symbol::t(), b);
      for (const auto& m : jet_monomials) out.emplace_back(Poly(xt * m));
    }
  }
  return out;
}

std::vector<Expr> point_affine_basis() {
  std::vector<Expr> out;
  for (const char* text : {"u[1,0]", "u[0,1]", "x*u[1,0]", "x*u[0,1]", "t*u[1,0]", "t*u[0,1]", "u", "x*u", "t*u", "1"}) {
    out.push_back(parse(text));
  }
  return out;
}

NonexistenceReport bounded_nonexistence(const JetSpace& jet, int order, int degree, std::size_t limit,
                                        const std::vector<Expr>& extra) {
  if (order < 1) throw Error("order must be positive");
  std::vector<Expr> basis = monomial_basis(order, degree);
  for (const auto& e : extra) {
    if (std::find(basis.begin(), basis.end(), e) == basis.end()) basis.push_back(e);
  }
  if (basis.size() > limit) {
    throw Unsupported("ansatz basis has " + std::to_string(basis.size()) + " elements, limit is " +
                      std::to_string(limit));
  }
  NonexistenceReport report;
  report.order = order;
  report.degree = degree;
  report.basis_size = basis.size();
  AnsatzResult sol = ansatz_solve(jet, basis);
  report.dimension = sol.characteristics.size();
  report.solutions = sol.characteristics;
  report.assumptions = sol.assumptions;
  // rank of the top-order parts of the solution vectors
  CoefficientMatrix top;
  top.columns = basis.size();
  for (const auto& v : sol.coefficients) {
    std::vector<std::pair<std::size_t, Poly>> row;
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (!v[k].is_zero() && jet_order(basis[k]) == order) row.emplace_back(k, v[k]);
    }
    if (!row.empty()) top.rows.push_back(std::move(row));
  }
  report.new_dimensions = top.rows.empty() ? 0 : null_space(std::move(top)).rank;
  report.lower_order = report.dimension - report.new_dimensions;
  report.label = "ansatz-bounded: Q polynomial of degree <= " + std::to_string(degree) + " in u and its pure x/t derivatives up to order " +
                 std::to_string(order) + ", affine in x, t (" + std::to_string(basis.size()) + " monomials)";
  return report;
}

}  // namespace jetlie
