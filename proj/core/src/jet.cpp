#include "aclaw/jet.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "aclaw/error.hpp"

namespace aclaw {

// ---- total derivatives ----

Poly total_derivative(const Poly& p, int var) {
  const Atom xi = Atom::independent(var);
  PolyBuilder b;
  for (const Term& t : p) {
    for (const Factor& f : t.mono) {
      const Atom a = f.atom;
      const Rational c = t.coef * Rational(f.exp);
      if (a == xi) {
        b.add(t.mono.times(a, -1), c);
      } else if (a.is_jet()) {
        b.add(t.mono.times(a, -1).times(a.with_deriv(var), 1), c);
      } else if (a.is_function()) {
        Atom next = a.with_fn_derivs(a.fn_derivs() + 1);
        b.add(t.mono.times(a, -1).times(next, 1).times(a.argument().with_deriv(var), 1), c);
      }
    }
  }
  return b.build();
}

Poly total_derivative(const Poly& p, const MultiIndex& J) {
  Poly r = p;
  for (int i = 0; i < J.size() && !r.is_zero(); ++i) r = total_derivative(r, J[i]);
  return r;
}

// ---- series arithmetic ----

bool EpsilonSeries::is_zero() const {
  return std::all_of(slots.begin(), slots.end(), [](const Poly& s) { return s.is_zero(); });
}

EpsilonSeries operator+(const EpsilonSeries& a, const EpsilonSeries& b) {
  EpsilonSeries r(std::max(a.order(), b.order()));
  for (int k = 0; k <= r.order(); ++k) {
    if (k <= a.order()) r[k] += a[k];
    if (k <= b.order()) r[k] += b[k];
  }
  return r;
}

EpsilonSeries operator*(const EpsilonSeries& a, const EpsilonSeries& b) {
  const int p = std::min(a.order(), b.order());
  EpsilonSeries r(p);
  for (int n = 0; n <= p; ++n) {
    PolyBuilder acc;
    for (int k = 0; k <= n; ++k) {
      if (a[k].is_zero() || b[n - k].is_zero()) continue;
      acc.add(a[k] * b[n - k]);
    }
    r[n] = acc.build();
  }
  return r;
}

namespace {

bool reads_as_base(Atom a) { return a.order() == kUnexpanded || a.order() == 0; }

EpsilonSeries constant_series(const Poly& value, int p) {
  EpsilonSeries s(p);
  s[0] = value;
  return s;
}

EpsilonSeries inverse_series(const EpsilonSeries& s) {
  if (s[0].size() != 1) throw UnsupportedForm("negative power of an expression with compound leading term");
  const Poly inv0 = s[0].pow(-1);
  EpsilonSeries b(s.order());
  b[0] = inv0;
  for (int n = 1; n <= s.order(); ++n) {
    PolyBuilder acc;
    for (int k = 1; k <= n; ++k)
      if (!s[k].is_zero() && !b[n - k].is_zero()) acc.add(s[k] * b[n - k]);
    b[n] = -(acc.build() * inv0);
  }
  return b;
}

EpsilonSeries power_series(const EpsilonSeries& s, int e) {
  if (e < 0) return power_series(inverse_series(s), -e);
  EpsilonSeries result = constant_series(Poly(1), s.order());
  EpsilonSeries base = s;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

class Expander {
 public:
  explicit Expander(int p) : p_(p) {}

  EpsilonSeries atom_series(Atom a) {
    EpsilonSeries s(p_);
    if (a.is_epsilon()) {
      if (p_ >= 1) s[1] = Poly(1);
    } else if (a.is_jet()) {
      if (!reads_as_base(a)) throw UnsupportedForm("expression is already expanded");
      for (int k = 0; k <= p_; ++k) s[k] = Poly::atom(a.with_order(k));
    } else if (a.is_function()) {
      if (!reads_as_base(a)) throw UnsupportedForm("expression is already expanded");
      // f^(d)(v0 + delta) = sum_j f^(d+j)(v0) delta^j / j!
      const Atom v = a.argument();
      EpsilonSeries delta(p_);
      for (int k = 1; k <= p_; ++k) delta[k] = Poly::atom(v.with_order(k));
      EpsilonSeries dpow = constant_series(Poly(1), p_);
      Rational fact(1);
      for (int j = 0; j <= p_; ++j) {
        if (j > 0) {
          dpow = dpow * delta;
          fact *= Rational(j);
        }
        Poly fj = Poly::atom(Atom::function(a.fn(), a.fn_derivs() + j, v.dep(), 0));
        for (int k = 0; k <= p_; ++k)
          if (!dpow[k].is_zero()) s[k] += dpow[k] * fj.scaled(fact.inverse());
      }
    } else {
      s[0] = Poly::atom(a);
    }
    return s;
  }

  const EpsilonSeries& factor_series(Atom a, int e) {
    auto key = std::make_pair(a, e);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    if (a.is_epsilon() && e < 0) throw UnsupportedForm("negative power of eps");
    EpsilonSeries s = power_series(atom_series(a), e);
    return cache_.emplace(key, std::move(s)).first->second;
  }

 private:
  int p_;
  std::map<std::pair<Atom, int>, EpsilonSeries> cache_;
};

}  // namespace

EpsilonSeries expand_epsilon(const Poly& e, int p) {
  if (p < 0) throw InputError("negative expansion order");
  Expander ex(p);
  std::vector<PolyBuilder> out(static_cast<std::size_t>(p + 1));
  for (const Term& t : e) {
    // indep vars, parameters and coefficients do not expand
    Monomial plain;
    EpsilonSeries acc = constant_series(Poly(1), p);
    int eps_power = 0;
    for (const Factor& f : t.mono) {
      const Atom a = f.atom;
      if (a.is_epsilon()) {
        if (f.exp < 0) throw UnsupportedForm("negative power of eps");
        eps_power = f.exp;
      } else if (a.is_jet() || a.is_function()) {
        acc = acc * ex.factor_series(a, f.exp);
      } else {
        plain = plain.times(a, f.exp);
      }
    }
    if (eps_power > p) continue;
    for (int k = 0; k + eps_power <= p; ++k) {
      if (acc[k].is_zero()) continue;
      out[static_cast<std::size_t>(k + eps_power)].add_times(acc[k], plain, t.coef);
    }
  }
  EpsilonSeries r(p);
  for (int k = 0; k <= p; ++k) r[k] = out[static_cast<std::size_t>(k)].build();
  return r;
}

// ---- recursion operator ----

Poly recursion_R(const Poly& e) {
  PolyBuilder b;
  for (const Term& t : e) {
    for (const Factor& f : t.mono) {
      const Atom a = f.atom;
      const Rational c = t.coef * Rational(f.exp);
      if (a.is_jet()) {
        if (!a.expanded()) throw UnsupportedForm("recursion operator needs expanded jets");
        const int k = a.order();
        b.add(t.mono.times(a, -1).times(a.with_order(k + 1), 1), c * Rational(k + 1));
      } else if (a.is_coefficient()) {
        const int k = a.coeff_order();
        b.add(t.mono.times(a, -1).times(a.with_coeff_order(k + 1), 1), c * Rational(k + 1));
      } else if (a.is_function()) {
        if (!a.expanded()) throw UnsupportedForm("recursion operator needs expanded jets");
        const int k = a.order();
        const Atom next = a.with_fn_derivs(a.fn_derivs() + 1);
        b.add(t.mono.times(a, -1).times(next, 1).times(a.argument().with_order(k + 1), 1), c * Rational(k + 1));
      }
    }
  }
  return b.build();
}

Poly to_order_zero(const Poly& e) {
  return e.map_terms([](const Monomial& m) {
    Monomial r;
    for (const Factor& f : m) {
      Atom a = f.atom;
      if ((a.is_jet() || a.is_function()) && a.order() == kUnexpanded) a = a.with_order(0);
      r = r.times(a, f.exp);
    }
    return r;
  });
}

EpsilonSeries expand_by_recursion(const Poly& e, int p) {
  if (e.contains([](Atom a) { return (a.is_jet() || a.is_function()) && a.order() > 0; }))
    throw UnsupportedForm("expression is already expanded");
  std::vector<Poly> parts = split_by_epsilon(e, p);
  EpsilonSeries r(p);
  for (int j = 0; j <= p; ++j) {
    Poly f = to_order_zero(parts[static_cast<std::size_t>(j)]);
    for (int k = 0; j + k <= p && !f.is_zero(); ++k) {
      if (k > 0) f = recursion_R(f).scaled(Rational(1, k));
      r[j + k] += f;
    }
  }
  return r;
}

// ---- Euler operators ----

Atom EulerKind::variable() const {
  switch (family) {
    case EulerFamily::consistent:
      return Atom::jet(dep, 0);
    case EulerFamily::unexpanded:
      return Atom::jet(dep, kUnexpanded);
    case EulerFamily::per_order:
      return Atom::jet(dep, order);
  }
  return Atom::jet(dep, 0);
}

bool has_expanded_jets(const Poly& e) {
  return e.contains([](Atom a) { return (a.is_jet() || a.is_function()) && a.expanded(); });
}

bool has_unexpanded_jets(const Poly& e) {
  return e.contains([](Atom a) { return (a.is_jet() || a.is_function()) && !a.expanded(); });
}

void check_not_mixed(const Poly& e) {
  if (has_expanded_jets(e) && has_unexpanded_jets(e))
    throw UnsupportedForm("expression mixes expanded and unexpanded dependent variables");
}

int max_perturbation_order(const Poly& e) {
  int k = -1;
  for (Atom a : e.atoms())
    if ((a.is_jet() || a.is_function()) && a.expanded()) k = std::max(k, a.order());
  return k;
}

int max_derivative_order(const Poly& e) {
  int r = 0;
  for (Atom a : e.atoms())
    if (a.is_jet()) r = std::max(r, a.deriv_order());
  return r;
}

Poly euler(const Poly& e, EulerKind kind) {
  check_not_mixed(e);
  const Atom v = kind.variable();
  std::set<MultiIndex> present;
  for (Atom a : e.atoms()) {
    if (a.is_jet() && a.dep() == v.dep() && a.order() == v.order()) present.insert(a.deriv());
    if (a.is_function() && a.argument() == v) present.insert(MultiIndex());
  }
  PolyBuilder b;
  for (const MultiIndex& J : present) {
    Poly q = partial(e, Atom::jet(v.dep(), v.order(), J));
    q = total_derivative(q, J);
    b.add(q, J.size() % 2 == 0 ? Rational(1) : Rational(-1));
  }
  return b.build();
}

}  // namespace aclaw
