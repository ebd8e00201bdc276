#include "aclaw/expr.hpp"

#include "aclaw/error.hpp"

namespace aclaw {

struct Expr::Node {
  Kind kind = Kind::number;
  Rational value;
  Atom atom;
  std::vector<Expr> children;
  int exponent = 0;
  int fn = 0;
  int fn_derivs = 0;
};

Expr::Expr() : Expr(Rational(0)) {}

Expr::Expr(const Rational& value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::number;
  n->value = value;
  node_ = std::move(n);
}

Expr::Expr(Atom atom) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::atom;
  n->atom = atom;
  node_ = std::move(n);
}

Expr Expr::sum(std::vector<Expr> terms) {
  if (terms.empty()) return Expr();
  if (terms.size() == 1) return terms[0];
  auto n = std::make_shared<Node>();
  n->kind = Kind::sum;
  n->children = std::move(terms);
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::product(std::vector<Expr> factors) {
  if (factors.empty()) return Expr(1);
  if (factors.size() == 1) return factors[0];
  auto n = std::make_shared<Node>();
  n->kind = Kind::product;
  n->children = std::move(factors);
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::power(Expr base, int exponent) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::power;
  n->children = {std::move(base)};
  n->exponent = exponent;
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::apply(int fn, int nderiv, Expr arg) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::apply;
  n->children = {std::move(arg)};
  n->fn = fn;
  n->fn_derivs = nderiv;
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr::Kind Expr::kind() const noexcept { return node_->kind; }
const Rational& Expr::number() const { return node_->value; }
Atom Expr::atom() const { return node_->atom; }
const std::vector<Expr>& Expr::children() const { return node_->children; }
int Expr::exponent() const { return node_->exponent; }
int Expr::fn() const { return node_->fn; }
int Expr::fn_derivs() const { return node_->fn_derivs; }

Poly normalize(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::number:
      return Poly(e.number());
    case Expr::Kind::atom:
      return Poly::atom(e.atom());
    case Expr::Kind::sum: {
      PolyBuilder b;
      for (const Expr& c : e.children()) b.add(normalize(c));
      return b.build();
    }
    case Expr::Kind::product: {
      Poly r(1);
      for (const Expr& c : e.children()) {
        r = r * normalize(c);
        if (r.is_zero()) break;
      }
      return r;
    }
    case Expr::Kind::power: {
      Poly base = normalize(e.children()[0]);
      if (e.exponent() < 0 && base.size() != 1) throw UnsupportedForm("negative power of a compound expression");
      if (e.exponent() < 0 && base.is_zero()) throw EvaluationError("division by zero");
      return base.pow(e.exponent());
    }
    case Expr::Kind::apply: {
      Poly arg = normalize(e.children()[0]);
      if (arg.size() != 1 || !arg.terms()[0].coef.is_one() || arg.terms()[0].mono.size() != 1 ||
          arg.terms()[0].mono[0].exp != 1)
        throw UnsupportedForm("function applied to a compound argument");
      Atom a = arg.terms()[0].mono[0].atom;
      if (!a.is_jet() || a.deriv_order() != 0)
        throw UnsupportedForm("function argument must be a dependent variable");
      return Poly::atom(Atom::function(e.fn(), e.fn_derivs(), a.dep(), a.order()));
    }
  }
  return Poly();
}

Expr to_expr(const Poly& p) {
  std::vector<Expr> terms;
  terms.reserve(p.size());
  for (const Term& t : p) {
    std::vector<Expr> factors;
    if (!t.coef.is_one() || t.mono.is_one()) factors.emplace_back(t.coef);
    for (const Factor& f : t.mono) {
      Expr base = f.atom.is_function()
                      ? Expr::apply(f.atom.fn(), f.atom.fn_derivs(), Expr(f.atom.argument()))
                      : Expr(f.atom);
      factors.push_back(f.exp == 1 ? base : Expr::power(base, f.exp));
    }
    terms.push_back(Expr::product(std::move(factors)));
  }
  return Expr::sum(std::move(terms));
}

Expr add(const Expr& a, const Expr& b) { return Expr::sum({a, b}); }
Expr mul(const Expr& a, const Expr& b) { return Expr::product({a, b}); }
Expr negate(const Expr& e) { return Expr::product({Expr(-1), e}); }

Expr pow_int(const Expr& base, int exponent) {
  if (exponent < 0 && normalize(base).size() != 1)
    throw UnsupportedForm("negative power of a compound expression");
  return Expr::power(base, exponent);
}

Expr partial(const Expr& e, Atom a) { return to_expr(partial(normalize(e), a)); }

Expr substitute(const Expr& e, const std::map<Atom, Expr>& bindings) {
  std::map<Atom, Poly> b;
  for (const auto& [atom, value] : bindings) b.emplace(atom, normalize(value));
  return to_expr(substitute(normalize(e), b));
}

Rational eval_rational(const Expr& e, const std::map<Atom, Rational>& point, const FunctionValues& fvals) {
  return evaluate(normalize(e), point, fvals);
}

}  // namespace aclaw
