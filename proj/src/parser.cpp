#include "jetlie/parser.hpp"

#include <cctype>
#include <sstream>

#include "jetlie/error.hpp"

namespace jetlie {

namespace {

struct Token {
  enum class Kind { end, integer, identifier, punct };
  Kind kind = Kind::end;
  std::string text;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      Token tok;
      tok.line = line_;
      tok.column = column_;
      if (pos_ >= text_.size()) {
        out.push_back(tok);
        return out;
      }
      char c = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        tok.kind = Token::Kind::integer;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) tok.text += advance();
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        tok.kind = Token::Kind::identifier;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
          tok.text += advance();
        }
      } else if (std::string("+-*/^()[],").find(c) != std::string::npos) {
        tok.kind = Token::Kind::punct;
        tok.text = advance();
      } else {
        throw ParseError(std::string("unexpected character '") + c + "'", line_, column_);
      }
      out.push_back(tok);
    }
  }

 private:
  char advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  ExprTree parse_all() {
    ExprTree e = expr();
    if (peek().kind != Token::Kind::end) fail("unexpected '" + peek().text + "'");
    return e;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  bool is_punct(const char* p) const { return peek().kind == Token::Kind::punct && peek().text == p; }
  Token take() { return tokens_[pos_++]; }
  [[noreturn]] void fail(const std::string& message) const {
    if (peek().kind == Token::Kind::end) throw ParseError(message.empty() ? "unexpected end of input" : message + " (at end of input)", peek().line, peek().column);
    throw ParseError(message, peek().line, peek().column);
  }
  void expect(const char* p) {
    if (!is_punct(p)) fail(std::string("expected '") + p + "'");
    take();
  }
  int integer() {
    if (peek().kind != Token::Kind::integer) fail("expected an integer");
    const std::string text = take().text;
    if (text.size() > 6) fail("integer index too large");
    return std::stoi(text);
  }

  static ExprTree node(ExprTree::Kind kind, const Token& at) {
    ExprTree t;
    t.kind = kind;
    t.line = at.line;
    t.column = at.column;
    return t;
  }

  ExprTree expr() {
    ExprTree lhs = term();
    while (is_punct("+") || is_punct("-")) {
      Token op = take();
      ExprTree n = node(op.text == "+" ? ExprTree::Kind::add : ExprTree::Kind::sub, op);
      n.children.push_back(std::move(lhs));
      n.children.push_back(term());
      lhs = std::move(n);
    }
    return lhs;
  }

  ExprTree term() {
    ExprTree lhs = unary();
    while (is_punct("*") || is_punct("/")) {
      Token op = take();
      ExprTree n = node(op.text == "*" ? ExprTree::Kind::mul : ExprTree::Kind::div, op);
      n.children.push_back(std::move(lhs));
      n.children.push_back(unary());
      lhs = std::move(n);
    }
    return lhs;
  }

  ExprTree unary() {
    if (is_punct("-")) {
      Token op = take();
      ExprTree n = node(ExprTree::Kind::neg, op);
      n.children.push_back(unary());
      return n;
    }
    if (is_punct("+")) {
      take();
      return unary();
    }
    return power();
  }

  ExprTree power() {
    ExprTree base = primary();
    if (!is_punct("^")) return base;
    Token op = take();
    bool negative = false;
    if (is_punct("-")) {
      take();
      negative = true;
    }
    ExprTree n = node(ExprTree::Kind::pow, op);
    n.exponent = negative ? -integer() : integer();
    n.children.push_back(std::move(base));
    return n;
  }

  ExprTree primary() {
    const Token& tok = peek();
    if (tok.kind == Token::Kind::integer) {
      Token t = take();
      ExprTree n = node(ExprTree::Kind::number, t);
      n.value = Rational(Integer(t.text, 10));
      return n;
    }
    if (is_punct("(")) {
      take();
      ExprTree inner = expr();
      expect(")");
      return inner;
    }
    if (tok.kind != Token::Kind::identifier) fail(tok.kind == Token::Kind::end ? "" : "unexpected '" + tok.text + "'");
    Token id = take();
    if (id.text == "sqrt") {
      expect("(");
      ExprTree n = node(ExprTree::Kind::sqrt, id);
      n.children.push_back(expr());
      expect(")");
      return n;
    }
    if (id.text == "exp") return exponential(id);
    ExprTree n = node(ExprTree::Kind::symbol, id);
    n.symbol = symbol(id);
    return n;
  }

  // exp(eps), exp(-eps), exp(3*eps), exp(-2*eps1)
  ExprTree exponential(const Token& id) {
    expect("(");
    int sign = 1;
    if (is_punct("-")) {
      take();
      sign = -1;
    }
    int k = 1;
    if (peek().kind == Token::Kind::integer) {
      k = integer();
      expect("*");
    }
    if (peek().kind != Token::Kind::identifier) fail("expected a group parameter inside exp()");
    Token p = take();
    Symbol eps = symbol(p);
    if (eps.kind() != SymbolKind::group_parameter) {
      throw ParseError("exp() accepts only integer multiples of a group parameter", p.line, p.column);
    }
    expect(")");
    ExprTree base = node(ExprTree::Kind::symbol, id);
    base.symbol = Symbol::exp_eps(eps.index());
    if (sign * k == 1) return base;
    ExprTree n = node(ExprTree::Kind::pow, id);
    n.exponent = sign * k;
    n.children.push_back(std::move(base));
    return n;
  }

  static bool numbered(const std::string& text, const std::string& prefix, int& index) {
    if (text.size() <= prefix.size() || text.compare(0, prefix.size(), prefix) != 0) return false;
    for (std::size_t k = prefix.size(); k < text.size(); ++k) {
      if (!std::isdigit(static_cast<unsigned char>(text[k]))) return false;
    }
    if (text.size() - prefix.size() > 6) return false;
    index = std::stoi(text.substr(prefix.size()));
    return true;
  }

  Symbol symbol(const Token& id) {
    const std::string& s = id.text;
    int index = 0;
    if (s == "x") return Symbol::x();
    if (s == "t") return Symbol::t();
    if (s == "z") return Symbol::z();
    if (s == "a") return Symbol::alpha();
    if (s == "b") return Symbol::beta();
    if (s == "p") return Symbol::parameter(2);
    if (s == "q") return Symbol::parameter(3);
    if (s == "eps") return Symbol::eps(0);
    if (numbered(s, "eps", index)) return Symbol::eps(index);
    if (numbered(s, "c", index)) return Symbol::unknown(index);
    if (s == "u") {
      if (!is_punct("[")) return Symbol::u();
      take();
      int i = integer();
      expect(",");
      int j = integer();
      expect("]");
      return Symbol::jet(i, j);
    }
    if (s == "w") {
      if (!is_punct("[")) return Symbol::w(0);
      take();
      int k = integer();
      expect("]");
      return Symbol::w(k);
    }
    throw ParseError("unknown symbol '" + s + "'", id.line, id.column);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

Expr inverse_of(const ExprTree& tree) {
  switch (tree.kind) {
    case ExprTree::Kind::number:
      if (sgn(tree.value) == 0) throw ParseError("division by zero", tree.line, tree.column);
      return Expr(Rational(1 / tree.value));
    case ExprTree::Kind::sqrt: {
      Expr arg = normalize(tree.children[0]);
      if (arg.has_radical()) throw ParseError("nested radicals are not supported", tree.line, tree.column);
      return Expr::radical_power(arg.as_poly(), -1);
    }
    case ExprTree::Kind::pow:
      if (tree.children[0].kind == ExprTree::Kind::sqrt) {
        Expr arg = normalize(tree.children[0].children[0]);
        if (arg.has_radical()) throw ParseError("nested radicals are not supported", tree.line, tree.column);
        return Expr::radical_power(arg.as_poly(), -tree.exponent);
      }
      return inverse_of(tree.children[0]).pow(tree.exponent);
    case ExprTree::Kind::mul:
      return inverse_of(tree.children[0]) * inverse_of(tree.children[1]);
    case ExprTree::Kind::neg:
      return -inverse_of(tree.children[0]);
    default:
      break;
  }
  Expr value = normalize(tree);
  try {
    return value.inverse();
  } catch (const Error&) {
    throw ParseError("division is allowed only by rational constants or sqrt terms, not by " + print(value), tree.line,
                     tree.column);
  }
}

std::string coefficient_text(const Rational& c) { return c.get_str(); }

std::string factor_text(const Symbol& s, int e) {
  if (s.kind() == SymbolKind::group_exponential) {
    std::string eps = Symbol::eps(s.index()).name();
    if (e == 1) return "exp(" + eps + ")";
    if (e == -1) return "exp(-" + eps + ")";
    return "exp(" + std::to_string(e) + "*" + eps + ")";
  }
  return e == 1 ? s.name() : s.name() + "^" + std::to_string(e);
}

}  // namespace

ExprTree parse_tree(const std::string& text) {
  Lexer lexer(text);
  Parser parser(lexer.run());
  return parser.parse_all();
}

Expr normalize(const ExprTree& tree) {
  switch (tree.kind) {
    case ExprTree::Kind::number:
      return Expr(tree.value);
    case ExprTree::Kind::symbol:
      return Expr(tree.symbol);
    case ExprTree::Kind::add:
      return normalize(tree.children[0]) + normalize(tree.children[1]);
    case ExprTree::Kind::sub:
      return normalize(tree.children[0]) - normalize(tree.children[1]);
    case ExprTree::Kind::mul:
      return normalize(tree.children[0]) * normalize(tree.children[1]);
    case ExprTree::Kind::div:
      return normalize(tree.children[0]) * inverse_of(tree.children[1]);
    case ExprTree::Kind::neg:
      return -normalize(tree.children[0]);
    case ExprTree::Kind::pow: {
      const ExprTree& base = tree.children[0];
      if (base.kind == ExprTree::Kind::sqrt) {
        Expr arg = normalize(base.children[0]);
        if (arg.has_radical()) throw ParseError("nested radicals are not supported", base.line, base.column);
        return Expr::radical_power(arg.as_poly(), tree.exponent);
      }
      if (tree.exponent < 0) return inverse_of(base).pow(-tree.exponent);
      return normalize(base).pow(tree.exponent);
    }
    case ExprTree::Kind::sqrt: {
      Expr arg = normalize(tree.children[0]);
      if (arg.has_radical()) throw ParseError("nested radicals are not supported", tree.line, tree.column);
      if (arg.is_zero()) return Expr();
      return Expr::radical_power(arg.as_poly(), 1);
    }
  }
  return Expr();
}

std::string print(const Expr& e) {
  if (e.is_zero()) return "0";
  std::string kernel = e.has_radical() ? "sqrt(" + print(Expr(*e.radicand())) + ")" : "";
  std::ostringstream out;
  bool first = true;
  for (const auto& stratum : e.strata()) {
    for (const auto& term : stratum.poly.terms()) {
      bool negative = sgn(term.coeff) < 0;
      Rational magnitude = abs(term.coeff);
      std::vector<std::string> factors;
      if (magnitude != 1) factors.push_back(coefficient_text(magnitude));
      for (const auto& [s, exponent] : term.monomial.factors()) factors.push_back(factor_text(s, exponent));
      if (stratum.power > 0) factors.push_back(stratum.power == 1 ? kernel : kernel + "^" + std::to_string(stratum.power));
      std::string body;
      for (const auto& f : factors) body += (body.empty() ? "" : "*") + f;
      if (body.empty()) body = "1";
      if (stratum.power < 0) body += "/" + (stratum.power == -1 ? kernel : kernel + "^" + std::to_string(-stratum.power));
      if (first) {
        out << (negative ? "-" : "") << body;
      } else {
        out << (negative ? " - " : " + ") << body;
      }
      first = false;
    }
  }
  return out.str();
}

}  // namespace jetlie
