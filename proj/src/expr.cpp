#include "jetlie/expr.hpp"

#include <cmath>
#include <ostream>

#include "jetlie/error.hpp"
#include "jetlie/parser.hpp"

namespace jetlie {

namespace {

std::string poly_text(const Poly& p) { return print(Expr(p)); }

// R^0, R^1, ... computed on demand.
class RadicandPowers {
 public:
  explicit RadicandPowers(const Poly& r) : powers_{Poly(1), r} {}
  const Poly& get(int n) {
    while (static_cast<int>(powers_.size()) <= n) powers_.push_back(powers_.back() * powers_[1]);
    return powers_[n];
  }

 private:
  std::vector<Poly> powers_;
};

Rational lookup(const std::map<Symbol, Rational>& point, const Symbol& s) {
  auto it = point.find(s);
  if (it == point.end()) throw EvaluationError("unbound symbol " + s.name());
  return it->second;
}

Rational rational_power(const Rational& base, int n) {
  if (n < 0) {
    if (sgn(base) == 0) throw EvaluationError("zero radicand raised to a negative power");
    return rational_power(1 / base, -n);
  }
  Rational r = 1;
  for (int k = 0; k < n; ++k) r *= base;
  return r;
}

}  // namespace

Expr sum_of(std::vector<Expr> parts) {
  if (parts.empty()) return Expr();
  while (parts.size() > 1) {
    std::vector<Expr> next;
    next.reserve((parts.size() + 1) / 2);
    for (std::size_t k = 0; k + 1 < parts.size(); k += 2) next.push_back(parts[k] + parts[k + 1]);
    if (parts.size() % 2) next.push_back(std::move(parts.back()));
    parts = std::move(next);
  }
  return std::move(parts.front());
}

namespace {

int floor_half(int k) { return k >= 0 ? k / 2 : -((-k + 1) / 2); }

}  // namespace

Expr::Expr() : node_(std::make_shared<const Node>()) {}

Expr::Expr(const Rational& c) : Expr(Poly(c)) {}

Expr::Expr(const Symbol& s) : Expr(Poly(s)) {}

Expr::Expr(Poly p) {
  auto node = std::make_shared<Node>();
  if (!p.is_zero()) node->strata.push_back({0, std::move(p)});
  node_ = std::move(node);
}

Expr Expr::radical_power(const Poly& radicand, int k) {
  if (radicand.is_zero()) {
    if (k < 0) throw EvaluationError("negative power of a zero radicand");
    return k == 0 ? Expr(1) : Expr();
  }
  std::map<int, Poly> strata;
  strata.emplace(k, Poly(1));
  return canonical(std::make_shared<const Poly>(radicand), std::move(strata));
}

Expr Expr::from_strata(std::optional<Poly> radicand, std::map<int, Poly> strata) {
  std::shared_ptr<const Poly> r;
  if (radicand) {
    if (radicand->is_zero()) throw Error("zero radical kernel");
    r = std::make_shared<const Poly>(std::move(*radicand));
  }
  return canonical(std::move(r), std::move(strata));
}

Expr Expr::canonical(std::shared_ptr<const Poly> radicand, std::map<int, Poly> strata) {
  auto node = std::make_shared<Node>();
  if (!radicand) {
    Poly sum;
    for (auto& [k, p] : strata) {
      if (k != 0 && !p.is_zero()) throw Error("radical power without a radical kernel");
      sum += p;
    }
    if (!sum.is_zero()) node->strata.push_back({0, std::move(sum)});
    return Expr(std::shared_ptr<const Node>(std::move(node)));
  }
  const Poly& r = *radicand;
  RadicandPowers powers(r);

  std::map<int, Poly> even;
  std::map<int, Poly> odd;
  for (auto& [k, p] : strata) {
    if (p.is_zero()) continue;
    if (k >= 2) {
      int parity = k % 2;
      Poly lifted = p * powers.get((k - parity) / 2);
      (parity ? odd[1] : even[0]) += lifted;
    } else if (k % 2 == 0) {
      even[k] += p;
    } else {
      odd[k] += p;
    }
  }

  auto combine = [&](std::map<int, Poly>& group, int top) -> std::optional<Stratum> {
    if (group.empty()) return std::nullopt;
    int kmin = group.begin()->first;
    Poly acc;
    for (auto& [k, p] : group) acc += p * powers.get((k - kmin) / 2);
    if (acc.is_zero()) return std::nullopt;
    while (kmin < top) {
      auto q = acc.divide_exact(r);
      if (!q) break;
      acc = std::move(*q);
      kmin += 2;
    }
    return Stratum{kmin, std::move(acc)};
  };

  auto e = combine(even, 0);
  auto o = combine(odd, 1);
  if (e) node->strata.push_back(std::move(*e));
  if (o) node->strata.push_back(std::move(*o));
  bool needs_kernel = false;
  for (const auto& s : node->strata) needs_kernel = needs_kernel || s.power != 0;
  if (needs_kernel) node->radicand = std::move(radicand);
  return Expr(std::shared_ptr<const Node>(std::move(node)));
}

std::shared_ptr<const Poly> Expr::common_radicand(const Expr& a, const Expr& b) {
  const auto& ra = a.node_->radicand;
  const auto& rb = b.node_->radicand;
  if (!ra) return rb;
  if (!rb || ra == rb || *ra == *rb) return ra;
  throw RadicalConflict(poly_text(*ra), poly_text(*rb));
}

std::map<int, Poly> Expr::strata_map() const {
  std::map<int, Poly> m;
  for (const auto& s : node_->strata) m.emplace(s.power, s.poly);
  return m;
}

const Poly& Expr::as_poly() const {
  static const Poly zero;
  if (has_radical()) throw Error("expression " + to_string() + " is not a polynomial");
  return node_->strata.empty() ? zero : node_->strata.front().poly;
}

bool Expr::is_rational() const { return !has_radical() && as_poly().is_constant(); }

Rational Expr::rational_value() const {
  if (!is_rational()) throw Error("expression " + to_string() + " is not a rational constant");
  return as_poly().constant_value();
}

Expr Expr::operator-() const {
  auto node = std::make_shared<Node>(*node_);
  for (auto& s : node->strata) s.poly = -s.poly;
  return Expr(std::shared_ptr<const Node>(std::move(node)));
}

Expr Expr::operator+(const Expr& other) const {
  auto r = common_radicand(*this, other);
  if (!r) return Expr(as_poly() + other.as_poly());
  std::map<int, Poly> m = strata_map();
  for (const auto& s : other.node_->strata) m[s.power] += s.poly;
  return canonical(std::move(r), std::move(m));
}

Expr Expr::operator-(const Expr& other) const { return *this + (-other); }

Expr Expr::operator*(const Expr& other) const {
  auto r = common_radicand(*this, other);
  if (!r) return Expr(as_poly() * other.as_poly());
  std::map<int, Poly> m;
  for (const auto& a : node_->strata) {
    for (const auto& b : other.node_->strata) m[a.power + b.power] += a.poly * b.poly;
  }
  return canonical(std::move(r), std::move(m));
}

Expr Expr::pow(int n) const {
  if (n < 0) return inverse().pow(-n);
  Expr result(1);
  Expr base = *this;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

Expr Expr::inverse() const {
  if (is_zero()) throw EvaluationError("division by zero");
  if (node_->strata.size() != 1 || node_->strata.front().poly.size() != 1) {
    throw Error("cannot divide by " + to_string() + ": only rational constants and radical powers are invertible");
  }
  const Stratum& s = node_->strata.front();
  const Poly::Term& t = s.poly.leading();
  Poly inv(t.monomial.inverse(), 1 / t.coeff);
  if (!has_radical()) return Expr(std::move(inv));
  std::map<int, Poly> m;
  m.emplace(-s.power, std::move(inv));
  return canonical(node_->radicand, std::move(m));
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  const auto& ra = a.node_->radicand;
  const auto& rb = b.node_->radicand;
  if (static_cast<bool>(ra) != static_cast<bool>(rb)) return false;
  if (ra && !(*ra == *rb)) return false;
  return a.node_->strata == b.node_->strata;
}

Expr Expr::diff(const Symbol& s) const {
  if (!has_radical()) return Expr(as_poly().diff(s));
  const Poly& r = *node_->radicand;
  Poly dr = r.diff(s);
  std::map<int, Poly> m;
  for (const auto& st : node_->strata) {
    m[st.power] += st.poly.diff(s);
    if (st.power != 0 && !dr.is_zero()) {
      m[st.power - 2] += st.poly * dr * make_rational(st.power, 2);
    }
  }
  return canonical(node_->radicand, std::move(m));
}

Expr Expr::substitute(const std::map<Symbol, Expr>& bindings) const {
  if (bindings.empty()) return *this;
  std::map<Symbol, std::map<int, Expr>> power_cache;
  auto power_of = [&](const Symbol& s, const Expr& value, int e) -> Expr {
    auto& cache = power_cache[s];
    auto it = cache.find(e);
    if (it != cache.end()) return it->second;
    Expr p = value.pow(e);
    cache.emplace(e, p);
    return p;
  };
  auto substitute_poly = [&](const Poly& p) {
    std::vector<Expr> parts;
    std::vector<Poly::Term> untouched;
    for (const auto& t : p.terms()) {
      Expr prod(1);
      std::vector<Monomial::Factor> kept;
      for (const auto& [s, e] : t.monomial.factors()) {
        auto it = bindings.find(s);
        if (it == bindings.end()) {
          kept.emplace_back(s, e);
        } else {
          prod = prod * power_of(s, it->second, e);
        }
      }
      Poly rest(Monomial::from_factors(std::move(kept)), t.coeff);
      if (prod == Expr(1)) {
        untouched.push_back(rest.terms().front());
      } else {
        parts.push_back(prod * Expr(std::move(rest)));
      }
    }
    parts.push_back(Expr(Poly::from_terms(std::move(untouched))));
    return sum_of(std::move(parts));
  };
  if (!has_radical()) return substitute_poly(as_poly());
  Expr r = substitute_poly(*node_->radicand);
  if (r.has_radical()) throw Unsupported("substitution produces a nested radical in sqrt(" + print(Expr(*node_->radicand)) + ")");
  Expr sum;
  for (const auto& st : node_->strata) {
    sum += substitute_poly(st.poly) * radical_power(r.as_poly(), st.power);
  }
  return sum;
}

std::set<Symbol> Expr::symbols() const {
  std::set<Symbol> out;
  for (const auto& st : node_->strata) {
    auto s = st.poly.symbols();
    out.insert(s.begin(), s.end());
  }
  if (node_->radicand) {
    auto s = node_->radicand->symbols();
    out.insert(s.begin(), s.end());
  }
  return out;
}

bool Expr::contains(const Symbol& s) const {
  for (const auto& st : node_->strata) {
    if (st.poly.contains(s)) return true;
  }
  return node_->radicand && node_->radicand->contains(s);
}

QuadraticValue Expr::eval_quadratic(const std::map<Symbol, Rational>& point) const {
  auto value = [&](const Symbol& s) { return lookup(point, s); };
  QuadraticValue v{0, 0, 0};
  if (node_->radicand) v.radicand = node_->radicand->eval(value);
  for (const auto& st : node_->strata) {
    Rational p = st.poly.eval(value);
    if (st.power % 2 == 0) {
      v.a += p * rational_power(v.radicand, st.power / 2);
    } else {
      v.b += p * rational_power(v.radicand, floor_half(st.power));
    }
  }
  return v;
}

Rational Expr::eval(const std::map<Symbol, Rational>& point) const {
  QuadraticValue v = eval_quadratic(point);
  if (sgn(v.b) == 0) return v.a;
  if (sgn(v.radicand) < 0) throw EvaluationError("negative radicand in exact evaluation");
  Rational root;
  if (!rational_sqrt(v.radicand, root)) {
    throw EvaluationError("radicand " + v.radicand.get_str() + " is not the square of a rational");
  }
  return v.a + v.b * root;
}

double Expr::eval_float(const std::map<Symbol, Rational>& point) const {
  QuadraticValue v = eval_quadratic(point);
  if (sgn(v.b) == 0) return v.a.get_d();
  if (sgn(v.radicand) < 0) throw EvaluationError("negative radicand");
  return v.a.get_d() + v.b.get_d() * std::sqrt(v.radicand.get_d());
}

std::string Expr::to_string() const { return print(*this); }

std::ostream& operator<<(std::ostream& out, const Expr& e) { return out << print(e); }

}  // namespace jetlie
