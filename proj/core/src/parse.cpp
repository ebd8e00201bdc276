#include "aclaw/parse.hpp"

#include <cctype>
#include <string>

#include "aclaw/error.hpp"
#include "aclaw/jet.hpp"

namespace aclaw {

namespace {

using Code = ParseError::Code;

class Parser {
 public:
  Parser(std::string_view text, const SymbolTable& symbols) : s_(text), sym_(symbols) {}

  Expr parse_all() {
    Expr e = expression();
    skip_ws();
    if (pos_ != s_.size()) fail(Code::syntax, "unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(Code code, const std::string& msg) const { throw ParseError(code, pos_, msg); }
  [[noreturn]] void fail_at(Code code, std::size_t at, const std::string& msg) const { throw ParseError(code, at, msg); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(Code::syntax, std::string("expected '") + c + "'");
  }

  Expr expression() {
    std::vector<Expr> terms;
    terms.push_back(term());
    for (;;) {
      if (accept('+')) {
        terms.push_back(term());
      } else if (accept('-')) {
        terms.push_back(negate(term()));
      } else {
        break;
      }
    }
    return Expr::sum(std::move(terms));
  }

  Expr term() {
    std::vector<Expr> factors;
    factors.push_back(unary());
    for (;;) {
      if (accept('*')) {
        factors.push_back(unary());
      } else if (peek('/')) {
        std::size_t at = pos_;
        ++pos_;
        Expr d = unary();
        Poly dn = normalize(d);
        if (dn.is_zero()) fail_at(Code::syntax, at, "division by zero");
        if (dn.size() != 1) throw UnsupportedForm("division by a compound expression");
        factors.push_back(Expr::power(d, -1));
      } else {
        break;
      }
    }
    return Expr::product(std::move(factors));
  }

  Expr unary() {
    if (accept('-')) return negate(unary());
    if (accept('+')) return unary();
    return power();
  }

  int exponent_literal() {
    skip_ws();
    if (accept('(')) {
      const int e = exponent_literal();
      skip_ws();
      if (accept('/')) {
        const int d = exponent_literal();
        if (d == 0) fail(Code::syntax, "zero denominator in exponent");
        if (e % d != 0) throw UnsupportedForm("non-integer exponent");
        skip_ws();
        if (!accept(')')) fail(Code::syntax, "expected ')'");
        return e / d;
      }
      if (!accept(')')) fail(Code::syntax, "expected ')'");
      return e;
    }
    bool neg = false;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      neg = s_[pos_] == '-';
      ++pos_;
      skip_ws();
    }
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
      fail(Code::syntax, "exponent must be an integer literal");
    long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_++] - '0');
      if (v > 1000000) fail(Code::syntax, "exponent too large");
    }
    int e = static_cast<int>(neg ? -v : v);
    // right-associative chain of literals: 2^3^2 = 2^9
    if (accept('^')) {
      int rest = exponent_literal();
      long long r = 1;
      for (int i = 0; i < rest; ++i) {
        r *= e;
        if (r > 1000000 || r < -1000000) fail(Code::syntax, "exponent too large");
      }
      if (rest < 0) fail(Code::syntax, "negative exponent of an exponent");
      e = static_cast<int>(r);
    }
    return e;
  }

  Expr power() {
    Expr base = primary();
    if (accept('^')) {
      int e = exponent_literal();
      if (e < 0 && normalize(base).size() != 1) throw UnsupportedForm("negative power of a compound expression");
      return Expr::power(base, e);
    }
    return base;
  }

  std::string identifier() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ >= s_.size() || !std::isalpha(static_cast<unsigned char>(s_[pos_]))) fail(Code::syntax, "expected identifier");
    while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  int independent_var(std::size_t at) {
    std::string name = identifier();
    auto i = sym_.find_independent(name);
    if (!i) fail_at(Code::undeclared_identifier, at, "'" + name + "' is not an independent variable");
    return *i;
  }

  // `[k]` after a dependent variable name
  int order_tag() {
    if (pos_ < s_.size() && s_[pos_] == '[') {
      ++pos_;
      skip_ws();
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail(Code::syntax, "expected order");
      int k = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        k = k * 10 + (s_[pos_++] - '0');
        if (k > 60) fail(Code::syntax, "perturbation order too large");
      }
      expect(']');
      return k;
    }
    return kUnexpanded;
  }

  // `_tx` shorthand: every letter names a single-letter independent variable
  MultiIndex deriv_suffix() {
    MultiIndex J;
    if (pos_ < s_.size() && s_[pos_] == '_') {
      ++pos_;
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) {
        auto i = sym_.find_independent(std::string_view(&s_[pos_], 1));
        if (!i) fail(Code::undeclared_identifier, "'" + std::string(1, s_[pos_]) + "' is not an independent variable");
        J = J.plus(*i);
        ++pos_;
      }
      if (pos_ == start) fail(Code::syntax, "empty derivative suffix");
    }
    return J;
  }

  Expr primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail(Code::syntax, "unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = expression();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Expr(Rational::parse(s_.substr(start, pos_ - start)));
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail(Code::syntax, "unexpected '" + std::string(1, c) + "'");

    const std::size_t at = pos_;
    std::string name = identifier();

    if (name == SymbolTable::epsilon_name()) {
      if (pos_ < s_.size() && s_[pos_] == '_') fail(Code::non_dependent_derivative, "derivative of eps");
      return Expr(Atom::epsilon());
    }
    if (name == "der" && peek('(')) return derivative();

    if (auto fn = sym_.find_function(name)) {
      int nderiv = 0;
      while (pos_ < s_.size() && s_[pos_] == '\'') {
        ++pos_;
        ++nderiv;
      }
      expect('(');
      std::size_t arg_at = pos_;
      Expr arg = expression();
      expect(')');
      Poly a = normalize(arg);
      const int want = sym_.functions()[static_cast<std::size_t>(*fn)].arg_dep;
      if (a.size() != 1 || a.terms()[0].mono.size() != 1 || !a.terms()[0].coef.is_one() ||
          a.terms()[0].mono[0].exp != 1 || !a.terms()[0].mono[0].atom.is_jet() ||
          a.terms()[0].mono[0].atom.deriv_order() != 0 || a.terms()[0].mono[0].atom.dep() != want)
        fail_at(Code::syntax, arg_at, "function '" + name + "' must be applied to " +
                                          sym_.dependents()[static_cast<std::size_t>(want)]);
      return Expr::apply(*fn, nderiv, arg);
    }

    if (auto dep = sym_.find_dependent(name)) {
      int order = order_tag();
      MultiIndex J = deriv_suffix();
      return Expr(Atom::jet(*dep, order, J));
    }

    const bool has_suffix = pos_ < s_.size() && s_[pos_] == '_';
    if (auto i = sym_.find_independent(name)) {
      if (has_suffix) fail_at(Code::non_dependent_derivative, at, "derivative of independent variable '" + name + "'");
      return Expr(Atom::independent(*i));
    }
    if (auto p = sym_.find_parameter(name)) {
      if (has_suffix) fail_at(Code::non_dependent_derivative, at, "derivative of parameter '" + name + "'");
      return Expr(Atom::parameter(*p));
    }
    if (has_suffix) fail_at(Code::non_dependent_derivative, at, "derivative of undeclared symbol '" + name + "'");
    fail_at(Code::undeclared_identifier, at, "undeclared identifier '" + name + "'");
  }

  // der(expr, x, y, ...): total derivative. A bare identifier operand must be dependent.
  Expr derivative() {
    expect('(');
    skip_ws();
    const std::size_t at = pos_;
    Expr target = expression();
    if (target.kind() == Expr::Kind::atom && !target.atom().is_jet())
      fail_at(Code::non_dependent_derivative, at, "der() of a non-dependent symbol");
    MultiIndex J;
    while (accept(',')) {
      skip_ws();
      J = J.plus(independent_var(pos_));
    }
    expect(')');
    if (J.empty()) fail(Code::syntax, "der() needs at least one variable");
    if (target.kind() == Expr::Kind::atom) {
      Atom a = target.atom();
      return Expr(Atom::jet(a.dep(), a.order(), a.deriv().plus(J)));
    }
    return to_expr(total_derivative(normalize(target), J));
  }

  std::string_view s_;
  const SymbolTable& sym_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text, const SymbolTable& symbols) { return Parser(text, symbols).parse_all(); }

Poly parse_poly(std::string_view text, const SymbolTable& symbols) { return normalize(parse(text, symbols)); }

Atom parse_atom(std::string_view text, const SymbolTable& symbols) {
  Poly p = parse_poly(text, symbols);
  if (p.size() != 1 || !p.terms()[0].coef.is_one() || p.terms()[0].mono.size() != 1 || p.terms()[0].mono[0].exp != 1)
    throw InputError("'" + std::string(text) + "' is not a single symbol");
  return p.terms()[0].mono[0].atom;
}

}  // namespace aclaw
