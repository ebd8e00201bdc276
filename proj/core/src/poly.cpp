#include "aclaw/poly.hpp"

#include <algorithm>
#include <numeric>

#include "aclaw/error.hpp"

namespace aclaw {

// ---- Monomial ----

Monomial Monomial::of(Atom a, int exp) {
  Monomial m;
  if (exp != 0) m.f_.push_back({a, exp});
  return m;
}

int Monomial::exponent(Atom a) const noexcept {
  for (const Factor& f : f_)
    if (f.atom == a) return f.exp;
  return 0;
}

Monomial Monomial::times(const Monomial& other) const {
  if (other.f_.empty()) return *this;
  if (f_.empty()) return other;
  Monomial r;
  r.f_.reserve(f_.size() + other.f_.size());
  auto i = f_.begin(), j = other.f_.begin();
  while (i != f_.end() && j != other.f_.end()) {
    if (i->atom < j->atom) {
      r.f_.push_back(*i++);
    } else if (j->atom < i->atom) {
      r.f_.push_back(*j++);
    } else {
      int e = i->exp + j->exp;
      if (e != 0) r.f_.push_back({i->atom, e});
      ++i;
      ++j;
    }
  }
  r.f_.insert(r.f_.end(), i, f_.end());
  r.f_.insert(r.f_.end(), j, other.f_.end());
  return r;
}

Monomial Monomial::times(Atom a, int exp) const {
  if (exp == 0) return *this;
  Monomial r = *this;
  auto it = std::lower_bound(r.f_.begin(), r.f_.end(), a, [](const Factor& f, Atom x) { return f.atom < x; });
  if (it != r.f_.end() && it->atom == a) {
    it->exp += exp;
    if (it->exp == 0) r.f_.erase(it);
  } else {
    r.f_.insert(it, Factor{a, exp});
  }
  return r;
}

Monomial Monomial::inverse() const {
  Monomial r = *this;
  for (Factor& f : r.f_) f.exp = -f.exp;
  return r;
}

int Monomial::degree(const std::function<bool(Atom)>& filter) const {
  int d = 0;
  for (const Factor& f : f_)
    if (f.exp > 0 && (!filter || filter(f.atom))) d += f.exp;
  return d;
}

bool Monomial::contains(const std::function<bool(Atom)>& pred) const {
  return std::any_of(f_.begin(), f_.end(), [&](const Factor& f) { return pred(f.atom); });
}

std::size_t Monomial::hash() const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (const Factor& f : f_) {
    h ^= f.atom.key() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= static_cast<std::size_t>(f.exp) * 0x100000001b3ULL;
  }
  return h;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  return std::lexicographical_compare_three_way(a.f_.begin(), a.f_.end(), b.f_.begin(), b.f_.end());
}

// ---- PolyBuilder ----

void PolyBuilder::add(const Monomial& m, const Rational& c) {
  if (!c.is_zero()) pending_.push_back({m, c});
}

void PolyBuilder::add(Monomial&& m, const Rational& c) {
  if (!c.is_zero()) pending_.push_back({std::move(m), c});
}

void PolyBuilder::add(const Poly& p, const Rational& scale) {
  if (scale.is_zero()) return;
  for (const Term& t : p.terms_) pending_.push_back({t.mono, scale.is_one() ? t.coef : t.coef * scale});
}

void PolyBuilder::add_times(const Poly& p, const Monomial& m, const Rational& scale) {
  if (scale.is_zero()) return;
  for (const Term& t : p.terms_) pending_.push_back({t.mono.times(m), t.coef * scale});
}

Poly PolyBuilder::build() {
  Poly out;
  if (pending_.empty()) return out;
  std::sort(pending_.begin(), pending_.end(), [](const Term& a, const Term& b) { return a.mono < b.mono; });
  out.terms_.reserve(pending_.size());
  for (Term& t : pending_) {
    if (!out.terms_.empty() && out.terms_.back().mono == t.mono) {
      out.terms_.back().coef += t.coef;
    } else {
      if (!out.terms_.empty() && out.terms_.back().coef.is_zero()) out.terms_.pop_back();
      out.terms_.push_back(std::move(t));
    }
  }
  if (!out.terms_.empty() && out.terms_.back().coef.is_zero()) out.terms_.pop_back();
  pending_.clear();
  return out;
}

// ---- Poly ----

Poly::Poly(const Rational& c) {
  if (!c.is_zero()) terms_.push_back({Monomial(), c});
}

Poly Poly::atom(Atom a, int exp) { return monomial(Monomial::of(a, exp)); }

Poly Poly::monomial(Monomial m, Rational c) {
  Poly p;
  if (!c.is_zero()) p.terms_.push_back({std::move(m), std::move(c)});
  return p;
}

bool Poly::is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }

Rational Poly::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term& t, const Monomial& x) { return t.mono < x; });
  if (it != terms_.end() && it->mono == m) return it->coef;
  return Rational();
}

std::vector<Atom> Poly::atoms() const {
  std::vector<Atom> out;
  for (const Term& t : terms_)
    for (const Factor& f : t.mono) out.push_back(f.atom);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool Poly::contains(const std::function<bool(Atom)>& pred) const {
  return std::any_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.mono.contains(pred); });
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (Term& t : r.terms_) t.coef = -t.coef;
  return r;
}

Poly operator+(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  Poly r;
  r.terms_.reserve(a.terms_.size() + b.terms_.size());
  auto i = a.terms_.begin(), j = b.terms_.begin();
  while (i != a.terms_.end() && j != b.terms_.end()) {
    auto c = i->mono <=> j->mono;
    if (c < 0) {
      r.terms_.push_back(*i++);
    } else if (c > 0) {
      r.terms_.push_back(*j++);
    } else {
      Rational s = i->coef + j->coef;
      if (!s.is_zero()) r.terms_.push_back({i->mono, s});
      ++i;
      ++j;
    }
  }
  r.terms_.insert(r.terms_.end(), i, a.terms_.end());
  r.terms_.insert(r.terms_.end(), j, b.terms_.end());
  return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  if (a.is_constant()) return b.scaled(a.terms_[0].coef);
  if (b.is_constant()) return a.scaled(b.terms_[0].coef);
  PolyBuilder builder;
  builder.reserve(a.terms_.size() * b.terms_.size());
  for (const Term& x : a.terms_)
    for (const Term& y : b.terms_) builder.add(x.mono.times(y.mono), x.coef * y.coef);
  return builder.build();
}

Poly Poly::scaled(const Rational& c) const {
  if (c.is_zero()) return Poly();
  if (c.is_one()) return *this;
  Poly r = *this;
  for (Term& t : r.terms_) t.coef *= c;
  return r;
}

Poly Poly::times(const Monomial& m, const Rational& c) const {
  if (c.is_zero()) return Poly();
  // the shifted monomials are no longer sorted in general
  PolyBuilder b;
  b.add_times(*this, m, c);
  return b.build();
}

Poly Poly::pow(int e) const {
  if (e < 0) {
    if (terms_.size() != 1) throw UnsupportedForm("negative power of a compound expression");
    return monomial(terms_[0].mono.inverse(), terms_[0].coef.inverse()).pow(-e);
  }
  Poly result(1), base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].mono == b.terms_[i].mono) || !(a.terms_[i].coef == b.terms_[i].coef)) return false;
  return true;
}

Poly Poly::filter(const std::function<bool(const Monomial&)>& keep) const {
  Poly r;
  for (const Term& t : terms_)
    if (keep(t.mono)) r.terms_.push_back(t);
  return r;
}

std::size_t Poly::hash() const noexcept {
  std::size_t h = 0;
  for (const Term& t : terms_) h = h * 1000003 ^ t.mono.hash() ^ (t.coef.hash() << 1);
  return h;
}

// ---- free functions ----

Poly partial(const Poly& p, Atom a) {
  const bool chain = a.is_jet() && a.deriv_order() == 0;
  PolyBuilder b;
  for (const Term& t : p) {
    for (const Factor& f : t.mono) {
      if (f.atom == a) {
        b.add(t.mono.times(a, -1), t.coef * Rational(f.exp));
      } else if (chain && f.atom.is_function() && f.atom.argument() == a) {
        Atom next = f.atom.with_fn_derivs(f.atom.fn_derivs() + 1);
        b.add(t.mono.times(f.atom, -1).times(next, 1), t.coef * Rational(f.exp));
      }
    }
  }
  return b.build();
}

Poly substitute(const Poly& p, const std::map<Atom, Poly>& bindings) {
  if (bindings.empty()) return p;
  std::map<std::pair<Atom, int>, Poly> power_cache;
  auto bound_power = [&](Atom a, const Poly& value, int e) -> const Poly& {
    auto key = std::make_pair(a, e);
    auto it = power_cache.find(key);
    if (it != power_cache.end()) return it->second;
    return power_cache.emplace(key, value.pow(e)).first->second;
  };
  PolyBuilder out;
  for (const Term& t : p) {
    Monomial rest;
    Poly acc;
    bool have_acc = false;
    for (const Factor& f : t.mono) {
      Atom a = f.atom;
      auto it = bindings.find(a);
      if (it == bindings.end() && a.is_function()) {
        auto arg = bindings.find(a.argument());
        if (arg != bindings.end()) {
          const Poly& v = arg->second;
          if (v.size() != 1 || !v.terms()[0].coef.is_one() || v.terms()[0].mono.size() != 1 ||
              v.terms()[0].mono[0].exp != 1 || !v.terms()[0].mono[0].atom.is_jet() ||
              v.terms()[0].mono[0].atom.deriv_order() != 0)
            throw UnsupportedForm("function argument bound to a non-variable expression");
          Atom target = v.terms()[0].mono[0].atom;
          a = Atom::function(a.fn(), a.fn_derivs(), target.dep(), target.order());
        }
      }
      if (it == bindings.end()) {
        rest = rest.times(a, f.exp);
        continue;
      }
      const Poly& pw = bound_power(a, it->second, f.exp);
      acc = have_acc ? acc * pw : pw;
      have_acc = true;
    }
    if (have_acc)
      out.add_times(acc, rest, t.coef);
    else
      out.add(std::move(rest), t.coef);
  }
  return out.build();
}

Rational evaluate(const Poly& p, const std::map<Atom, Rational>& point, const FunctionValues& fvals) {
  Rational sum;
  for (const Term& t : p) {
    Rational v = t.coef;
    for (const Factor& f : t.mono) {
      Rational base;
      if (f.atom.is_function()) {
        auto arg = point.find(f.atom.argument());
        if (arg == point.end()) throw EvaluationError("unbound function argument");
        auto it = fvals.find({f.atom.fn(), f.atom.fn_derivs(), arg->second});
        if (it == fvals.end()) throw EvaluationError("no value for function application");
        base = it->second;
      } else {
        auto it = point.find(f.atom);
        if (it == point.end()) throw EvaluationError("unbound atom");
        base = it->second;
      }
      if (f.exp < 0 && base.is_zero()) throw EvaluationError("division by zero");
      v *= base.pow(f.exp);
    }
    sum += v;
  }
  return sum;
}

std::vector<Poly> split_by_epsilon(const Poly& p, int max_power) {
  std::vector<PolyBuilder> slots(static_cast<std::size_t>(max_power + 1));
  const Atom eps = Atom::epsilon();
  for (const Term& t : p) {
    int e = t.mono.exponent(eps);
    if (e < 0) throw UnsupportedForm("negative power of eps");
    if (e > max_power) continue;
    slots[static_cast<std::size_t>(e)].add(t.mono.times(eps, -e), t.coef);
  }
  std::vector<Poly> out;
  out.reserve(slots.size());
  for (auto& b : slots) out.push_back(b.build());
  return out;
}

Poly join_by_epsilon(const std::vector<Poly>& slots) {
  PolyBuilder b;
  for (std::size_t k = 0; k < slots.size(); ++k)
    b.add_times(slots[k], Monomial::of(Atom::epsilon(), static_cast<int>(k)), Rational(1));
  return b.build();
}

int epsilon_degree(const Poly& p) {
  int d = -1;
  for (const Term& t : p) d = std::max(d, t.mono.exponent(Atom::epsilon()));
  return d;
}

}  // namespace aclaw
