#pragma once

#include <map>
#include <memory>
#include <vector>

#include "aclaw/atom.hpp"
#include "aclaw/poly.hpp"
#include "aclaw/rational.hpp"

namespace aclaw {

// Immutable expression tree. Normal forms (Poly) are the working representation;
// Expr keeps the user's structure for parsing, printing and structural operations.
class Expr {
 public:
  enum class Kind { number, atom, sum, product, power, apply };

  Expr();  // zero
  Expr(const Rational& value);
  Expr(int value) : Expr(Rational(value)) {}
  Expr(Atom atom);

  static Expr sum(std::vector<Expr> terms);
  static Expr product(std::vector<Expr> factors);
  static Expr power(Expr base, int exponent);
  // f^(nderiv)(arg)
  static Expr apply(int fn, int nderiv, Expr arg);

  Kind kind() const noexcept;
  const Rational& number() const;
  Atom atom() const;
  const std::vector<Expr>& children() const;  // sum/product operands; power base; apply argument
  int exponent() const;                       // power
  int fn() const;                             // apply
  int fn_derivs() const;                      // apply

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

Poly normalize(const Expr& e);
Expr to_expr(const Poly& p);

Expr add(const Expr& a, const Expr& b);
Expr mul(const Expr& a, const Expr& b);
Expr pow_int(const Expr& base, int exponent);
Expr negate(const Expr& e);
Expr partial(const Expr& e, Atom a);
Expr substitute(const Expr& e, const std::map<Atom, Expr>& bindings);
Rational eval_rational(const Expr& e, const std::map<Atom, Rational>& point, const FunctionValues& fvals = {});

}  // namespace aclaw
