#pragma once

// Parsing and canonical printing of polynomial expressions in x and y
// over Q. The accepted grammar (whitespace-insensitive, ASCII):
//
//   expr    := [ '+' | '-' ] term { ( '+' | '-' ) term }
//   term    := factor { ( '*' | '/' ) factor }
//   factor  := base [ '^' natural ]
//   base    := natural | 'x' | 'y' | '(' expr ')'
//
// A '*' is implied between a literal or ')' and a variable or '('.
// Rational constants are written as integer or integer/integer; decimal
// literals are rejected with a targeted message. Error offsets are 1-based
// byte positions. Nesting depth and exponents are bounded so that parsing
// is total on arbitrary byte input.

#include <cctype>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "poly2.hpp"
#include "ratfun.hpp"

namespace tamegrad {

enum class ParseErrorKind { Syntax, UnknownSymbol };

struct ParseError : std::runtime_error {
  ParseError(ParseErrorKind k, size_t off, const std::string& msg)
      : std::runtime_error(msg + " (offset " + std::to_string(off) + ")"),
        kind(k),
        offset(off) {}
  ParseErrorKind kind;
  size_t offset;  // 1-based byte offset into the input
};

enum class NotPolynomialKind { VariableInDenominator, ZeroDenominator, ExpansionTooLarge };

struct NotPolynomial : std::runtime_error {
  NotPolynomial(NotPolynomialKind k, size_t off, const std::string& msg)
      : std::runtime_error(msg + " (offset " + std::to_string(off) + ")"),
        kind(k),
        offset(off) {}
  NotPolynomialKind kind;
  size_t offset;
};

struct Expr {
  enum class Kind { Num, VarX, VarY, Add, Sub, Mul, Div, Pow, Neg };
  Kind kind;
  size_t offset = 0;        // 1-based position of the token that formed the node
  Rational value;           // Num
  unsigned exponent = 0;    // Pow
  std::unique_ptr<Expr> lhs, rhs;
};

using ExprPtr = std::unique_ptr<Expr>;

namespace detail {

struct Token {
  enum class Kind { Int, VarX, VarY, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
  Kind kind;
  size_t offset;
  BigInt value;
};

inline std::vector<Token> lex(const std::string& in) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < in.size()) {
    unsigned char ch = static_cast<unsigned char>(in[i]);
    size_t off = i + 1;
    if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') {
      ++i;
      continue;
    }
    if (std::isdigit(ch)) {
      size_t j = i;
      while (j < in.size() && std::isdigit(static_cast<unsigned char>(in[j]))) ++j;
      if (j < in.size() && in[j] == '.')
        throw ParseError(ParseErrorKind::Syntax, j + 1,
                         "decimal literals are not supported; use integer/integer");
      // Always decimal: strip leading zeros so the big-integer constructor
      // cannot mistake them for an octal prefix.
      std::string digits = in.substr(i, j - i);
      size_t nz = digits.find_first_not_of('0');
      digits = nz == std::string::npos ? "0" : digits.substr(nz);
      out.push_back({Token::Kind::Int, off, BigInt(digits)});
      i = j;
      continue;
    }
    if (std::isalpha(ch) || ch == '_') {
      size_t j = i;
      while (j < in.size() &&
             (std::isalnum(static_cast<unsigned char>(in[j])) || in[j] == '_'))
        ++j;
      std::string id = in.substr(i, j - i);
      if (id == "x")
        out.push_back({Token::Kind::VarX, off, 0});
      else if (id == "y")
        out.push_back({Token::Kind::VarY, off, 0});
      else
        throw ParseError(ParseErrorKind::UnknownSymbol, off, "unknown symbol '" + id + "'");
      i = j;
      continue;
    }
    switch (ch) {
      case '+': out.push_back({Token::Kind::Plus, off, 0}); break;
      case '-': out.push_back({Token::Kind::Minus, off, 0}); break;
      case '*': out.push_back({Token::Kind::Star, off, 0}); break;
      case '/': out.push_back({Token::Kind::Slash, off, 0}); break;
      case '^': out.push_back({Token::Kind::Caret, off, 0}); break;
      case '(': out.push_back({Token::Kind::LParen, off, 0}); break;
      case ')': out.push_back({Token::Kind::RParen, off, 0}); break;
      case '.':
        throw ParseError(ParseErrorKind::Syntax, off,
                         "decimal literals are not supported; use integer/integer");
      default:
        throw ParseError(ParseErrorKind::Syntax, off, "unexpected character");
    }
    ++i;
  }
  out.push_back({Token::Kind::End, in.size() + 1, 0});
  return out;
}

// Insert the implied '*' between a literal or ')' and a variable or '('.
inline void insert_implicit_mult(std::vector<Token>& ts) {
  std::vector<Token> out;
  out.reserve(ts.size());
  for (size_t i = 0; i < ts.size(); ++i) {
    if (!out.empty()) {
      auto prev = out.back().kind;
      auto cur = ts[i].kind;
      bool left = prev == Token::Kind::Int || prev == Token::Kind::RParen;
      bool right = cur == Token::Kind::VarX || cur == Token::Kind::VarY ||
                   cur == Token::Kind::LParen;
      if (left && right) out.push_back({Token::Kind::Star, ts[i].offset, 0});
    }
    out.push_back(ts[i]);
  }
  ts = std::move(out);
}

class Parser {
 public:
  explicit Parser(std::vector<Token> ts) : ts_(std::move(ts)) {}

  ExprPtr run() {
    ExprPtr e = expr();
    if (peek().kind != Token::Kind::End)
      throw ParseError(ParseErrorKind::Syntax, peek().offset, "unexpected trailing input");
    return e;
  }

 private:
  static constexpr int kMaxDepth = 512;
  static constexpr unsigned kMaxExponent = 1u << 20;

  const Token& peek() const { return ts_[pos_]; }
  Token take() { return ts_[pos_++]; }

  ExprPtr expr() {
    DepthGuard guard(this);
    bool negate = false;
    if (peek().kind == Token::Kind::Plus || peek().kind == Token::Kind::Minus) {
      negate = take().kind == Token::Kind::Minus;
    }
    ExprPtr acc = term();
    if (negate) {
      auto n = std::make_unique<Expr>();
      n->kind = Expr::Kind::Neg;
      n->offset = acc->offset;
      n->lhs = std::move(acc);
      acc = std::move(n);
    }
    while (peek().kind == Token::Kind::Plus || peek().kind == Token::Kind::Minus) {
      Token op = take();
      auto n = std::make_unique<Expr>();
      n->kind = op.kind == Token::Kind::Plus ? Expr::Kind::Add : Expr::Kind::Sub;
      n->offset = op.offset;
      n->lhs = std::move(acc);
      n->rhs = term();
      acc = std::move(n);
    }
    return acc;
  }

  ExprPtr term() {
    DepthGuard guard(this);
    ExprPtr acc = factor();
    while (peek().kind == Token::Kind::Star || peek().kind == Token::Kind::Slash) {
      Token op = take();
      auto n = std::make_unique<Expr>();
      n->kind = op.kind == Token::Kind::Star ? Expr::Kind::Mul : Expr::Kind::Div;
      n->offset = op.offset;
      n->lhs = std::move(acc);
      n->rhs = factor();
      acc = std::move(n);
    }
    return acc;
  }

  ExprPtr factor() {
    DepthGuard guard(this);
    ExprPtr b = base();
    if (peek().kind == Token::Kind::Caret) {
      take();
      if (peek().kind != Token::Kind::Int)
        throw ParseError(ParseErrorKind::Syntax, peek().offset,
                         "exponent must be a bare natural number");
      Token e = take();
      if (e.value > kMaxExponent)
        throw ParseError(ParseErrorKind::Syntax, e.offset, "exponent too large");
      auto n = std::make_unique<Expr>();
      n->kind = Expr::Kind::Pow;
      n->offset = e.offset;
      n->exponent = e.value.convert_to<unsigned>();
      n->lhs = std::move(b);
      return n;
    }
    return b;
  }

  ExprPtr base() {
    DepthGuard guard(this);
    Token t = take();
    auto n = std::make_unique<Expr>();
    n->offset = t.offset;
    switch (t.kind) {
      case Token::Kind::Int:
        n->kind = Expr::Kind::Num;
        n->value = Rational(t.value);
        return n;
      case Token::Kind::VarX:
        n->kind = Expr::Kind::VarX;
        return n;
      case Token::Kind::VarY:
        n->kind = Expr::Kind::VarY;
        return n;
      case Token::Kind::LParen: {
        ExprPtr inner = expr();
        if (peek().kind != Token::Kind::RParen)
          throw ParseError(ParseErrorKind::Syntax, peek().offset, "unbalanced parenthesis");
        take();
        return inner;
      }
      default:
        throw ParseError(ParseErrorKind::Syntax, t.offset, "expected a value");
    }
  }

  struct DepthGuard {
    explicit DepthGuard(Parser* p) : p_(p) {
      if (++p_->depth_ > kMaxDepth)
        throw ParseError(ParseErrorKind::Syntax, p_->peek().offset, "expression nested too deeply");
    }
    ~DepthGuard() { --p_->depth_; }
    Parser* p_;
  };

  std::vector<Token> ts_;
  size_t pos_ = 0;
  int depth_ = 0;
};

}  // namespace detail

inline ExprPtr parse_expression(const std::string& input) {
  auto tokens = detail::lex(input);
  detail::insert_implicit_mult(tokens);
  if (tokens.size() == 1)
    throw ParseError(ParseErrorKind::Syntax, 1, "empty expression");
  return detail::Parser(std::move(tokens)).run();
}

// Expand an AST into a bivariate polynomial. Division is only allowed by
// subexpressions that evaluate to nonzero rational constants.
inline Poly2 to_polynomial(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Num:
      return Poly2(e.value);
    case Expr::Kind::VarX:
      return Poly2::x();
    case Expr::Kind::VarY:
      return Poly2::y();
    case Expr::Kind::Add:
      return to_polynomial(*e.lhs) + to_polynomial(*e.rhs);
    case Expr::Kind::Sub:
      return to_polynomial(*e.lhs) - to_polynomial(*e.rhs);
    case Expr::Kind::Mul:
      return to_polynomial(*e.lhs) * to_polynomial(*e.rhs);
    case Expr::Kind::Neg:
      return -to_polynomial(*e.lhs);
    case Expr::Kind::Div: {
      Poly2 d = to_polynomial(*e.rhs);
      if (!d.is_constant())
        throw NotPolynomial(NotPolynomialKind::VariableInDenominator, e.offset,
                            "denominator must be a rational constant");
      Rational c = d.coeff(0, 0);
      if (c == 0)
        throw NotPolynomial(NotPolynomialKind::ZeroDenominator, e.offset,
                            "division by zero constant");
      return to_polynomial(*e.lhs) * (Rational(1) / c);
    }
    case Expr::Kind::Pow: {
      Poly2 b = to_polynomial(*e.lhs);
      long long cost = static_cast<long long>(std::max(b.total_degree(), 0)) *
                       static_cast<long long>(e.exponent);
      if (cost > 20000)
        throw NotPolynomial(NotPolynomialKind::ExpansionTooLarge, e.offset,
                            "expansion exceeds the supported degree budget");
      return b.pow(e.exponent);
    }
  }
  throw std::logic_error("to_polynomial: unreachable");
}

inline Poly2 parse_polynomial(const std::string& input) {
  return to_polynomial(*parse_expression(input));
}

// ---- Canonical formatting: graded-lexicographic, x before y, highest
// grade first; coefficients as integer or integer/integer; explicit '*'.

namespace detail {

inline void append_power(std::string& s, const char* var, int e, bool& need_star) {
  if (e == 0) return;
  if (need_star) s += '*';
  s += var;
  if (e > 1) {
    s += '^';
    s += std::to_string(e);
  }
  need_star = true;
}

inline void append_term(std::string& s, bool first, const Rational& c,
                        const std::vector<std::pair<const char*, int>>& powers) {
  Rational a = rat_abs(c);
  if (first) {
    if (c < 0) s += '-';
  } else {
    s += c < 0 ? '-' : '+';
  }
  bool allzero = true;
  for (const auto& [v, e] : powers) allzero = allzero && e == 0;
  bool need_star = false;
  if (a != 1 || allzero) {
    s += rat_str(a);
    need_star = true;
  }
  for (const auto& [v, e] : powers) append_power(s, v, e, need_star);
}

}  // namespace detail

inline std::string format_canonical(const Poly2& p, const char* vx = "x",
                                    const char* vy = "y") {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  const auto& terms = p.terms();
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    detail::append_term(s, first, it->second, {{vx, it->first.dx}, {vy, it->first.dy}});
    first = false;
  }
  return s;
}

inline std::string format_canonical(const Poly& p, const char* var = "x") {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    if (p.coeff(i) == 0) continue;
    detail::append_term(s, first, p.coeff(i), {{var, i}});
    first = false;
  }
  return s;
}

inline std::string format_canonical(const Rational& q) { return rat_str(q); }

namespace detail {

inline bool is_single_term(const Poly& p) {
  int n = 0;
  for (int i = 0; i <= p.degree(); ++i)
    if (p.coeff(i) != 0) ++n;
  return n == 1;
}

}  // namespace detail

inline std::string format_canonical(const RatFun& f, const char* var = "x") {
  std::string num = format_canonical(f.num(), var);
  if (f.is_polynomial()) return num;
  std::string den = format_canonical(f.den(), var);
  std::string lhs = detail::is_single_term(f.num()) ? num : "(" + num + ")";
  std::string rhs = detail::is_single_term(f.den()) ? den : "(" + den + ")";
  return lhs + "/" + rhs;
}

// A rational function kept in factored shape for display, e.g. 1/(x+1)^2.
// The value is coeff * prod(num_factors) / prod(den_factors); factors are
// monic. factored() splits off the squarefree structure of a RatFun.
struct FactoredRatFun {
  Rational coeff = 1;
  std::vector<std::pair<Poly, int>> num_factors;
  std::vector<std::pair<Poly, int>> den_factors;

  static FactoredRatFun factored(const RatFun& f) {
    FactoredRatFun out;
    if (f.is_zero()) {
      out.coeff = 0;
      return out;
    }
    auto n = squarefree_factorization(f.num());
    auto d = squarefree_factorization(f.den());
    out.coeff = n.unit / d.unit;
    out.num_factors = n.factors;
    out.den_factors = d.factors;
    return out;
  }

  RatFun value() const {
    Poly n(coeff), d(Rational(1));
    for (const auto& [f, m] : num_factors)
      for (int i = 0; i < m; ++i) n = n * f;
    for (const auto& [f, m] : den_factors)
      for (int i = 0; i < m; ++i) d = d * f;
    return RatFun(n, d);
  }
};

namespace detail {

inline void append_factor(std::string& s, const Poly& f, int mult, const char* var,
                          bool& need_star) {
  if (need_star) s += '*';
  std::string body = format_canonical(f, var);
  bool atom = is_single_term(f) && f.lc() == 1 && f.degree() >= 1 &&
              (mult == 1 || body.find('^') == std::string::npos);
  s += atom ? body : "(" + body + ")";
  if (mult > 1) {
    s += '^';
    s += std::to_string(mult);
  }
  need_star = true;
}

}  // namespace detail

inline std::string format_canonical(const FactoredRatFun& f, const char* var = "x") {
  if (f.coeff == 0) return "0";
  std::string s;
  Rational a = rat_abs(f.coeff);
  if (f.coeff < 0) s += '-';
  bool need_star = false;
  if (a != 1 || f.num_factors.empty()) {
    s += rat_str(a);
    need_star = true;
  }
  for (const auto& [p, m] : f.num_factors) detail::append_factor(s, p, m, var, need_star);
  if (!f.den_factors.empty()) {
    std::string d;
    bool dstar = false;
    for (const auto& [p, m] : f.den_factors) detail::append_factor(d, p, m, var, dstar);
    bool multiple = f.den_factors.size() > 1;
    if (s.empty() || s == "-") s += '1';
    s += '/';
    s += multiple ? "(" + d + ")" : d;
  }
  return s;
}

}  // namespace tamegrad
