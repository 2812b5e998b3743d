#pragma once

#include <cctype>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ncg/qalgebra.hpp"

namespace ncg {

// Abstract expression tree for the input grammar. Evaluation against an
// algebra produces the normal form, so "normalize" is parse + eval.
struct Expr {
  enum class Kind { Num, Imag, QUnit, Sym, StarSym, Add, Sub, Mul, Div, Neg, Pow };
  Kind kind = Kind::Num;
  Rational num;                      // Num payload, Pow exponent
  std::string sym;                   // Sym / StarSym payload
  std::vector<Expr> kids;

  static Expr number(Rational r) {
    Expr e;
    e.kind = Kind::Num;
    e.num = std::move(r);
    return e;
  }
  static Expr symbol(std::string s, bool starred) {
    Expr e;
    e.kind = starred ? Kind::StarSym : Kind::Sym;
    e.sym = std::move(s);
    return e;
  }
  static Expr node(Kind k, std::vector<Expr> kids) {
    Expr e;
    e.kind = k;
    e.kids = std::move(kids);
    return e;
  }
};

namespace detail {

struct Token {
  enum class Kind { Num, Ident, Plus, Minus, Mul, Div, Pow, LParen, RParen, Star, End };
  Kind kind;
  std::string text;
};

// The star of Z or W is written as a postfix '*'. A '*' is the product when
// the next non-space character can start an operand (digit, letter, '(' or
// '_'), and the postfix star otherwise.
inline std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  size_t k = 0;
  auto operand_start = [&](size_t j) {
    while (j < src.size() && std::isspace(static_cast<unsigned char>(src[j]))) ++j;
    if (j >= src.size()) return false;
    const char c = src[j];
    return std::isalnum(static_cast<unsigned char>(c)) || c == '(' || c == '_';
  };
  while (k < src.size()) {
    const char c = src[k];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++k;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = k;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Token::Kind::Num, src.substr(k, j - k)});
      k = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = k;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      out.push_back({Token::Kind::Ident, src.substr(k, j - k)});
      k = j;
      continue;
    }
    switch (c) {
      case '+': out.push_back({Token::Kind::Plus, "+"}); break;
      case '-': out.push_back({Token::Kind::Minus, "-"}); break;
      case '*':
        out.push_back(operand_start(k + 1) ? Token{Token::Kind::Mul, "*"}
                                           : Token{Token::Kind::Star, "*"});
        break;
      case '/': out.push_back({Token::Kind::Div, "/"}); break;
      case '^': out.push_back({Token::Kind::Pow, "^"}); break;
      case '(': out.push_back({Token::Kind::LParen, "("}); break;
      case ')': out.push_back({Token::Kind::RParen, ")"}); break;
      default:
        fail(Err::ParseError, std::string("unexpected character '") + c + "'");
    }
    ++k;
  }
  out.push_back({Token::Kind::End, ""});
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& src) : toks_(lex(src)) {}

  Expr parse() {
    Expr e = sum();
    expect(Token::Kind::End, "trailing input");
    return e;
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;

  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }
  bool accept(Token::Kind k) {
    if (peek().kind == k) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(Token::Kind k, const char* what) {
    if (!accept(k)) fail(Err::ParseError, std::string("expected ") + what);
  }

  Expr sum() {
    Expr e = product();
    while (true) {
      if (accept(Token::Kind::Plus))
        e = Expr::node(Expr::Kind::Add, {std::move(e), product()});
      else if (accept(Token::Kind::Minus))
        e = Expr::node(Expr::Kind::Sub, {std::move(e), product()});
      else
        return e;
    }
  }

  Expr product() {
    Expr e = factor();
    while (true) {
      if (accept(Token::Kind::Mul))
        e = Expr::node(Expr::Kind::Mul, {std::move(e), factor()});
      else if (accept(Token::Kind::Div))
        e = Expr::node(Expr::Kind::Div, {std::move(e), factor()});
      else
        return e;
    }
  }

  Expr factor() {
    if (accept(Token::Kind::Minus))
      return Expr::node(Expr::Kind::Neg, {factor()});
    Expr e = atom();
    if (accept(Token::Kind::Pow)) {
      Expr p = Expr::node(Expr::Kind::Pow, {std::move(e)});
      p.num = exponent();
      return p;
    }
    return e;
  }

  // Exponents are integer literals or parenthesized rationals like (-1), (1/2).
  Rational exponent() {
    bool neg = false;
    if (accept(Token::Kind::LParen)) {
      if (accept(Token::Kind::Minus)) neg = true;
      Rational r = rational_literal();
      expect(Token::Kind::RParen, "')' after exponent");
      return neg ? -r : r;
    }
    if (accept(Token::Kind::Minus)) neg = true;
    Rational r = rational_literal();
    return neg ? -r : r;
  }

  Rational rational_literal() {
    if (peek().kind != Token::Kind::Num) fail(Err::ParseError, "expected a number in exponent");
    Rational n(take().text);
    if (accept(Token::Kind::Div)) {
      if (peek().kind != Token::Kind::Num) fail(Err::ParseError, "expected a denominator");
      Rational d(take().text);
      require(d != 0, Err::ParseError, "zero denominator in exponent");
      n /= d;
    }
    n.canonicalize();
    return n;
  }

  Expr atom() {
    if (peek().kind == Token::Kind::Num) {
      Rational r(take().text);
      r.canonicalize();
      return Expr::number(std::move(r));
    }
    if (peek().kind == Token::Kind::Ident) {
      std::string name = take().text;
      const bool starred = accept(Token::Kind::Star);
      return Expr::symbol(std::move(name), starred);
    }
    if (accept(Token::Kind::LParen)) {
      Expr e = sum();
      expect(Token::Kind::RParen, "')'");
      return e;
    }
    fail(Err::ParseError, "expected a number, symbol, or '('");
  }
};

inline KSym ksym_from_name(const std::string& n, bool& ok) {
  ok = true;
  if (n == "K") return KSym::K;
  if (n == "Kinv") return KSym::Kinv;
  if (n.size() >= 3 && n.compare(0, 2, "K_") == 0) {
    const std::string idx = n.substr(2);
    if (idx.size() == 1 && idx[0] >= '1' && idx[0] <= '3') return ksym_first(idx[0] - '0');
    if (idx.size() == 2 && idx[0] >= '1' && idx[0] <= '3' && idx[1] >= '1' && idx[1] <= '3')
      return ksym_second(idx[0] - '0', idx[1] - '0');
  }
  ok = false;
  return KSym::K;
}

}  // namespace detail

inline Expr parse_expr(const std::string& src) { return detail::Parser(src).parse(); }

using ExprEnv = std::map<std::string, AlgElement>;

inline AlgElement eval_expr(const Expr& e, AlgebraSpec spec, const ExprEnv* env = nullptr) {
  switch (e.kind) {
    case Expr::Kind::Num:
      return AlgElement::scalar(spec, Scalar::from_rational(e.num));
    case Expr::Kind::Imag:
      return AlgElement::scalar(spec, Scalar::imag_unit());
    case Expr::Kind::QUnit:
      return AlgElement::scalar(spec, Scalar::q_power(2));
    case Expr::Kind::Sym:
    case Expr::Kind::StarSym: {
      const bool starred = e.kind == Expr::Kind::StarSym;
      const std::string& n = e.sym;
      if (!starred) {
        if (n == "i") return AlgElement::scalar(spec, Scalar::imag_unit());
        if (n == "q") return AlgElement::scalar(spec, Scalar::q_power(2));
        if (n == "t" && spec.is_sphere()) return AlgElement::t_elem(spec);
        if (spec.formal_factor) {
          bool ok = false;
          KSym s = detail::ksym_from_name(n, ok);
          if (ok) return AlgElement::word_elem(spec, {s});
        }
      }
      if (n == spec.gen_a_name())
        return AlgElement::gen_a(spec, starred ? -1 : 1);
      if (n == spec.gen_b_name())
        return AlgElement::gen_b(spec, starred ? -1 : 1);
      if (starred)
        fail(Err::ParseError, "postfix star is only defined on " +
                                  std::string(spec.gen_a_name()) + " and " + spec.gen_b_name());
      if (env) {
        auto it = env->find(n);
        if (it != env->end()) {
          require(it->second.spec == spec, Err::MixedAlgebras,
                  "named value '" + n + "' lives in another algebra");
          return it->second;
        }
      }
      fail(Err::ParseError, "unknown symbol '" + n + "' in " + spec.name());
    }
    case Expr::Kind::Add:
      return eval_expr(e.kids[0], spec, env) + eval_expr(e.kids[1], spec, env);
    case Expr::Kind::Sub:
      return eval_expr(e.kids[0], spec, env) - eval_expr(e.kids[1], spec, env);
    case Expr::Kind::Mul:
      return eval_expr(e.kids[0], spec, env) * eval_expr(e.kids[1], spec, env);
    case Expr::Kind::Div: {
      AlgElement d = eval_expr(e.kids[1], spec, env);
      return eval_expr(e.kids[0], spec, env) * d.invert();
    }
    case Expr::Kind::Neg:
      return -eval_expr(e.kids[0], spec, env);
    case Expr::Kind::Pow: {
      if (e.num.get_den() == 2) {
        // half-integer exponents exist only for the deformation unit q
        require(e.kids[0].kind == Expr::Kind::Sym && e.kids[0].sym == "q",
                Err::ParseError, "half-integer exponent on a non-deformation symbol");
        Rational half = e.num * 2;
        return AlgElement::scalar(spec, Scalar::q_power(half.get_num().get_si()));
      }
      require(e.num.get_den() == 1, Err::ParseError, "exponent must be integer or half-integer");
      const long k = e.num.get_num().get_si();
      if (e.kids[0].kind == Expr::Kind::Sym && e.kids[0].sym == "q")
        return AlgElement::scalar(spec, Scalar::q_power(2 * k));
      return eval_expr(e.kids[0], spec, env).power(k);
    }
  }
  fail(Err::ParseError, "malformed expression tree");
}

inline AlgElement parse_element(const std::string& src, AlgebraSpec spec,
                                const ExprEnv* env = nullptr) {
  return eval_expr(parse_expr(src), spec, env);
}

// Parses a string that must denote a plain scalar (used for named constants).
inline Scalar parse_scalar(const std::string& src) {
  AlgElement e = parse_element(src, AlgebraSpec::torus());
  auto s = e.as_scalar();
  require(s.has_value(), Err::ParseError, "expected a scalar expression: " + src);
  return *s;
}

}  // namespace ncg
