#include "jetlie/poly.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

#include "jetlie/error.hpp"

namespace jetlie {

Rational parse_rational(const std::string& text) {
  std::size_t slash = text.find('/');
  auto parse_int = [](const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty integer");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw std::invalid_argument("malformed integer '" + s + "'");
    for (std::size_t k = start; k < s.size(); ++k) {
      if (s[k] < '0' || s[k] > '9') throw std::invalid_argument("malformed integer '" + s + "'");
    }
    return Integer(s[0] == '+' ? s.substr(1) : s, 10);
  };
  if (slash == std::string::npos) return Rational(parse_int(text));
  Integer num = parse_int(text.substr(0, slash));
  Integer den = parse_int(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

bool rational_sqrt(const Rational& r, Rational& root) {
  if (sgn(r) < 0) return false;
  const Integer& num = r.get_num();
  const Integer& den = r.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return false;
  Integer n;
  Integer d;
  mpz_sqrt(n.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(d.get_mpz_t(), den.get_mpz_t());
  root = Rational(n, d);
  root.canonicalize();
  return true;
}

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(Symbol s, int exponent) {
  if (exponent != 0) {
    factors_.emplace_back(std::move(s), exponent);
    degree_ = exponent;
  }
}

Monomial Monomial::from_factors(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end(),
            [](const Factor& a, const Factor& b) { return a.first.compare(b.first) < 0; });
  Monomial m;
  for (auto& f : factors) {
    if (!m.factors_.empty() && m.factors_.back().first == f.first) {
      m.factors_.back().second += f.second;
      if (m.factors_.back().second == 0) m.factors_.pop_back();
    } else if (f.second != 0) {
      m.factors_.push_back(std::move(f));
    }
  }
  for (const auto& f : m.factors_) m.degree_ += f.second;
  return m;
}

int Monomial::exponent(const Symbol& s) const {
  for (const auto& [sym, e] : factors_) {
    int c = sym.compare(s);
    if (c == 0) return e;
    if (c > 0) break;
  }
  return 0;
}

Monomial Monomial::operator*(const Monomial& other) const {
  if (other.factors_.empty()) return *this;
  if (factors_.empty()) return other;
  Monomial m;
  m.factors_.reserve(factors_.size() + other.factors_.size());
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() && b != other.factors_.end()) {
    int c = a->first.compare(b->first);
    if (c < 0) {
      m.factors_.push_back(*a++);
    } else if (c > 0) {
      m.factors_.push_back(*b++);
    } else {
      int e = a->second + b->second;
      if (e != 0) m.factors_.emplace_back(a->first, e);
      ++a;
      ++b;
    }
  }
  m.factors_.insert(m.factors_.end(), a, factors_.end());
  m.factors_.insert(m.factors_.end(), b, other.factors_.end());
  m.degree_ = degree_ + other.degree_;
  return m;
}

std::optional<Monomial> Monomial::divide(const Monomial& divisor) const {
  Monomial m;
  auto a = factors_.begin();
  auto b = divisor.factors_.begin();
  while (b != divisor.factors_.end()) {
    while (a != factors_.end() && a->first.compare(b->first) < 0) m.factors_.push_back(*a++);
    if (a == factors_.end() || !(a->first == b->first)) {
      if (b->second < 0 || b->first.kind() == SymbolKind::group_exponential) {
        m.factors_.emplace_back(b->first, -b->second);
        ++b;
        continue;
      }
      return std::nullopt;
    }
    int e = a->second - b->second;
    if (e < 0 && a->first.kind() != SymbolKind::group_exponential) return std::nullopt;
    if (e != 0) m.factors_.emplace_back(a->first, e);
    ++a;
    ++b;
  }
  m.factors_.insert(m.factors_.end(), a, factors_.end());
  m.degree_ = degree_ - divisor.degree_;
  return m;
}

Monomial Monomial::without(const Symbol& s) const {
  Monomial m;
  for (const auto& f : factors_) {
    if (f.first == s) continue;
    m.factors_.push_back(f);
    m.degree_ += f.second;
  }
  return m;
}

Monomial Monomial::inverse() const {
  Monomial m;
  for (const auto& [s, e] : factors_) {
    if (s.kind() != SymbolKind::group_exponential) {
      throw Error("monomial " + s.name() + " is not invertible in the expression class");
    }
    m.factors_.emplace_back(s, -e);
  }
  m.degree_ = -degree_;
  return m;
}

std::pair<Monomial, Monomial> Monomial::split(const std::function<bool(const Symbol&)>& pred) const {
  Monomial yes;
  Monomial no;
  for (const auto& f : factors_) {
    Monomial& target = pred(f.first) ? yes : no;
    target.factors_.push_back(f);
    target.degree_ += f.second;
  }
  return {std::move(yes), std::move(no)};
}

int Monomial::compare(const Monomial& other) const {
  if (degree_ != other.degree_) return degree_ < other.degree_ ? -1 : 1;
  std::size_t n = std::min(factors_.size(), other.factors_.size());
  for (std::size_t k = 0; k < n; ++k) {
    int c = factors_[k].first.compare(other.factors_[k].first);
    if (c != 0) return c < 0 ? 1 : -1;
    if (factors_[k].second != other.factors_[k].second) {
      return factors_[k].second < other.factors_[k].second ? -1 : 1;
    }
  }
  if (factors_.size() != other.factors_.size()) return factors_.size() < other.factors_.size() ? -1 : 1;
  return 0;
}

std::size_t Monomial::hash() const {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (const auto& [s, e] : factors_) {
    h ^= s.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= static_cast<std::size_t>(e) * 0x100000001b3ULL + (h << 6) + (h >> 2);
  }
  return h;
}

Monomial monomial_gcd(const Monomial& a, const Monomial& b) {
  std::vector<Monomial::Factor> out;
  auto p = a.factors().begin();
  auto q = b.factors().begin();
  while (p != a.factors().end() && q != b.factors().end()) {
    int c = p->first.compare(q->first);
    if (c < 0) {
      if (p->second < 0) out.push_back(*p);
      ++p;
    } else if (c > 0) {
      if (q->second < 0) out.push_back(*q);
      ++q;
    } else {
      out.emplace_back(p->first, std::min(p->second, q->second));
      ++p;
      ++q;
    }
  }
  for (; p != a.factors().end(); ++p) {
    if (p->second < 0) out.push_back(*p);
  }
  for (; q != b.factors().end(); ++q) {
    if (q->second < 0) out.push_back(*q);
  }
  return Monomial::from_factors(std::move(out));
}

// -------------------------------------------------------------------- Poly

namespace {

bool term_before(const Poly::Term& a, const Poly::Term& b) { return a.monomial.compare(b.monomial) > 0; }

std::vector<Poly::Term> merge_terms(const std::vector<Poly::Term>& a, const std::vector<Poly::Term>& b, bool subtract) {
  std::vector<Poly::Term> out;
  out.reserve(a.size() + b.size());
  auto p = a.begin();
  auto q = b.begin();
  while (p != a.end() && q != b.end()) {
    int c = p->monomial.compare(q->monomial);
    if (c > 0) {
      out.push_back(*p++);
    } else if (c < 0) {
      out.push_back(subtract ? Poly::Term{q->monomial, -q->coeff} : *q);
      ++q;
    } else {
      Rational s = subtract ? Rational(p->coeff - q->coeff) : Rational(p->coeff + q->coeff);
      if (sgn(s) != 0) out.push_back({p->monomial, std::move(s)});
      ++p;
      ++q;
    }
  }
  out.insert(out.end(), p, a.end());
  for (; q != b.end(); ++q) out.push_back(subtract ? Poly::Term{q->monomial, -q->coeff} : *q);
  return out;
}

}  // namespace

std::vector<Poly::Term> canonical_terms(std::vector<Poly::Term> terms) {
  std::sort(terms.begin(), terms.end(), term_before);
  std::vector<Poly::Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().monomial == t.monomial) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && sgn(out.back().coeff) == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && sgn(out.back().coeff) == 0) out.pop_back();
  return out;
}

Poly::Poly(const Rational& c) {
  if (sgn(c) != 0) terms_.push_back({Monomial(), c});
}

Poly::Poly(const Symbol& s) { terms_.push_back({Monomial(s), Rational(1)}); }

Poly::Poly(const Monomial& m, const Rational& c) {
  if (sgn(c) != 0) terms_.push_back({m, c});
}

Poly Poly::from_terms(std::vector<Term> terms) {
  Poly p;
  p.terms_ = canonical_terms(std::move(terms));
  return p;
}

Rational Poly::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (!is_constant()) throw Error("polynomial is not constant");
  return terms_[0].coeff;
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

Poly Poly::operator+(const Poly& other) const {
  Poly p;
  p.terms_ = merge_terms(terms_, other.terms_, false);
  return p;
}

Poly Poly::operator-(const Poly& other) const {
  Poly p;
  p.terms_ = merge_terms(terms_, other.terms_, true);
  return p;
}

Poly Poly::mul_monomial(const Monomial& m, const Rational& c) const {
  Poly p;
  if (sgn(c) == 0) return p;
  p.terms_.reserve(terms_.size());
  // multiplication by a monomial preserves the order
  for (const auto& t : terms_) p.terms_.push_back({t.monomial * m, t.coeff * c});
  return p;
}

Poly Poly::operator*(const Rational& c) const { return mul_monomial(Monomial(), c); }

Poly Poly::operator*(const Poly& other) const {
  if (terms_.empty() || other.terms_.empty()) return Poly();
  const Poly& small = terms_.size() <= other.terms_.size() ? *this : other;
  const Poly& large = terms_.size() <= other.terms_.size() ? other : *this;
  if (small.terms_.size() <= 4) {
    Poly acc;
    for (const auto& t : small.terms_) acc += large.mul_monomial(t.monomial, t.coeff);
    return acc;
  }
  std::vector<Term> products;
  products.reserve(terms_.size() * other.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : other.terms_) products.push_back({a.monomial * b.monomial, a.coeff * b.coeff});
  }
  return from_terms(std::move(products));
}

Poly Poly::pow(int n) const {
  if (n < 0) {
    if (terms_.size() != 1) throw Error("negative power of a non-monomial polynomial");
    const Term& t = terms_[0];
    Monomial inv = t.monomial.inverse();
    Rational c = 1 / t.coeff;
    return Poly(inv, 1).pow(-n) * c;
  }
  Poly result(1);
  Poly base = *this;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

std::optional<Poly> Poly::divide_exact(const Poly& divisor) const {
  if (divisor.is_zero()) throw Error("division by the zero polynomial");
  if (terms_.empty()) return Poly();
  const Term& lead = divisor.terms_.front();
  auto desc = [](const Monomial& a, const Monomial& b) { return a.compare(b) > 0; };
  std::map<Monomial, Rational, decltype(desc)> rest(desc);
  for (const auto& t : terms_) rest.emplace(t.monomial, t.coeff);
  std::vector<Term> quotient;
  while (!rest.empty()) {
    auto it = rest.begin();
    auto q = it->first.divide(lead.monomial);
    if (!q) return std::nullopt;
    Rational c = it->second / lead.coeff;
    for (const auto& d : divisor.terms_) {
      Monomial m = d.monomial * *q;
      auto [pos, inserted] = rest.emplace(m, Rational(0));
      pos->second -= d.coeff * c;
      if (sgn(pos->second) == 0) rest.erase(pos);
    }
    quotient.push_back({std::move(*q), std::move(c)});
  }
  return from_terms(std::move(quotient));
}

Poly Poly::diff(const Symbol& s) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    for (const auto& [sym, e] : t.monomial.factors()) {
      if (sym == s) {
        out.push_back({t.monomial.without(s) * Monomial(s, e - 1), t.coeff * e});
        continue;
      }
      if (!sym.is_function()) continue;
      // chain rule through an opaque function of `s`
      const auto& args = sym.function_data().arguments;
      for (std::size_t n = 0; n < args.size(); ++n) {
        if (!(args[n] == s)) continue;
        Monomial m = t.monomial.without(sym) * Monomial(sym, e - 1) * Monomial(sym.function_derivative(n));
        out.push_back({std::move(m), t.coeff * e});
      }
    }
  }
  return from_terms(std::move(out));
}

int Poly::degree_in(const Symbol& s) const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.monomial.exponent(s));
  return d;
}

std::set<Symbol> Poly::symbols() const {
  std::set<Symbol> out;
  for (const auto& t : terms_) {
    for (const auto& f : t.monomial.factors()) out.insert(f.first);
  }
  return out;
}

bool Poly::contains(const Symbol& s) const {
  for (const auto& t : terms_) {
    if (t.monomial.contains(s)) return true;
  }
  return false;
}

bool Poly::contains_if(const std::function<bool(const Symbol&)>& pred) const {
  for (const auto& t : terms_) {
    for (const auto& f : t.monomial.factors()) {
      if (pred(f.first)) return true;
    }
  }
  return false;
}

std::map<Monomial, Poly> Poly::collect(const std::function<bool(const Symbol&)>& pred) const {
  std::map<Monomial, std::vector<Term>> groups;
  for (const auto& t : terms_) {
    auto [key, rest] = t.monomial.split(pred);
    groups[std::move(key)].push_back({std::move(rest), t.coeff});
  }
  std::map<Monomial, Poly> out;
  for (auto& [key, terms] : groups) out.emplace(key, from_terms(std::move(terms)));
  return out;
}

Rational Poly::eval(const std::function<Rational(const Symbol&)>& value) const {
  std::map<Symbol, Rational> cache;
  Rational sum = 0;
  for (const auto& t : terms_) {
    Rational prod = t.coeff;
    for (const auto& [s, e] : t.monomial.factors()) {
      auto it = cache.find(s);
      if (it == cache.end()) it = cache.emplace(s, value(s)).first;
      Rational base = it->second;
      int n = e;
      if (n < 0) {
        if (sgn(base) == 0) throw EvaluationError("division by zero evaluating " + s.name());
        base = 1 / base;
        n = -n;
      }
      Rational p = 1;
      for (int k = 0; k < n; ++k) p *= base;
      prod *= p;
    }
    sum += prod;
  }
  return sum;
}

double Poly::eval_float(const std::function<double(const Symbol&)>& value) const {
  double sum = 0;
  for (const auto& t : terms_) {
    double prod = t.coeff.get_d();
    for (const auto& [s, e] : t.monomial.factors()) {
      double base = value(s);
      double p = 1;
      for (int k = 0; k < std::abs(e); ++k) p *= base;
      prod *= e < 0 ? 1 / p : p;
    }
    sum += prod;
  }
  return sum;
}

Monomial Poly::monomial_content() const {
  if (terms_.empty()) return Monomial();
  Monomial g = terms_.front().monomial;
  for (const auto& t : terms_) g = monomial_gcd(g, t.monomial);
  return g;
}

Rational Poly::rational_content() const {
  if (terms_.empty()) return Rational(1);
  Integer num_gcd = 0;
  Integer den_lcm = 1;
  for (const auto& t : terms_) {
    Integer n = abs(t.coeff.get_num());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coeff.get_den_mpz_t());
  }
  Rational c(num_gcd, den_lcm);
  c.canonicalize();
  return c;
}

Poly Poly::primitive() const {
  if (terms_.empty()) return Poly();
  Rational c = rational_content();
  if (sgn(terms_.front().coeff) < 0) c = -c;
  Monomial m = monomial_content();
  Poly p;
  p.terms_.reserve(terms_.size());
  for (const auto& t : terms_) p.terms_.push_back({*t.monomial.divide(m), t.coeff / c});
  return p;
}

std::size_t Poly::hash() const {
  std::size_t h = terms_.size();
  for (const auto& t : terms_) {
    h ^= t.monomial.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::hash<std::string>()(t.coeff.get_str()) + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace jetlie
