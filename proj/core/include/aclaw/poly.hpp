#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <tuple>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "aclaw/atom.hpp"
#include "aclaw/rational.hpp"

namespace aclaw {

struct Factor {
  Atom atom;
  int exp = 0;
  friend bool operator==(const Factor&, const Factor&) = default;
  friend auto operator<=>(const Factor&, const Factor&) = default;
};

// Product of atom powers, factors sorted by atom, exponents nonzero (possibly negative).
class Monomial {
 public:
  using Storage = boost::container::small_vector<Factor, 4>;

  Monomial() = default;
  static Monomial of(Atom a, int exp = 1);

  bool is_one() const noexcept { return f_.empty(); }
  std::size_t size() const noexcept { return f_.size(); }
  const Factor& operator[](std::size_t i) const noexcept { return f_[i]; }
  Storage::const_iterator begin() const noexcept { return f_.begin(); }
  Storage::const_iterator end() const noexcept { return f_.end(); }

  int exponent(Atom a) const noexcept;
  Monomial times(const Monomial& other) const;
  Monomial times(Atom a, int exp) const;
  Monomial inverse() const;
  // Sum of positive exponents over atoms accepted by the filter.
  int degree(const std::function<bool(Atom)>& filter = {}) const;
  bool contains(const std::function<bool(Atom)>& pred) const;

  std::size_t hash() const noexcept;
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.f_ == b.f_; }
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

 private:
  Storage f_;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept { return m.hash(); }
};

struct Term {
  Monomial mono;
  Rational coef;
};

// Canonical sparse Laurent polynomial: terms sorted by monomial, no zero coefficients.
class Poly {
 public:
  Poly() = default;
  Poly(const Rational& c);
  Poly(int c) : Poly(Rational(c)) {}
  static Poly atom(Atom a, int exp = 1);
  static Poly monomial(Monomial m, Rational c = Rational(1));

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  std::size_t size() const noexcept { return terms_.size(); }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::vector<Term>::const_iterator begin() const noexcept { return terms_.begin(); }
  std::vector<Term>::const_iterator end() const noexcept { return terms_.end(); }

  Rational coefficient(const Monomial& m) const;
  Rational constant_term() const { return coefficient(Monomial()); }
  std::vector<Atom> atoms() const;  // sorted, unique
  bool contains(const std::function<bool(Atom)>& pred) const;

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly& operator+=(const Poly& b) { return *this = *this + b; }
  Poly& operator-=(const Poly& b) { return *this = *this - b; }
  Poly& operator*=(const Poly& b) { return *this = *this * b; }
  Poly scaled(const Rational& c) const;
  Poly times(const Monomial& m, const Rational& c = Rational(1)) const;
  // Negative exponents require a single-term base.
  Poly pow(int e) const;

  friend bool operator==(const Poly& a, const Poly& b);

  // Keep only terms satisfying the predicate.
  Poly filter(const std::function<bool(const Monomial&)>& keep) const;
  // Apply fn to every monomial and sum the results scaled by the term coefficient.
  template <class F>
  Poly map_terms(F&& fn) const;

  std::size_t hash() const noexcept;

 private:
  friend class PolyBuilder;
  std::vector<Term> terms_;
};

// Accumulates unsorted terms, canonicalizes once.
class PolyBuilder {
 public:
  void add(const Monomial& m, const Rational& c);
  void add(Monomial&& m, const Rational& c);
  void add(const Poly& p, const Rational& scale = Rational(1));
  void add_times(const Poly& p, const Monomial& m, const Rational& scale);
  void reserve(std::size_t n) { pending_.reserve(n); }
  Poly build();

 private:
  std::vector<Term> pending_;
};

template <class F>
Poly Poly::map_terms(F&& fn) const {
  PolyBuilder b;
  for (const Term& t : terms_) b.add(fn(t.mono), t.coef);
  return b.build();
}

// Formal partial derivative; other atoms are independent. A jet atom with J = {}
// reaches function atoms through the chain rule (f^(d)(v) -> f^(d+1)(v)).
Poly partial(const Poly& p, Atom a);

// Simultaneous substitution of atoms. A function atom whose argument is bound to
// another bare jet atom is re-argumented; binding it to anything else is unsupported.
Poly substitute(const Poly& p, const std::map<Atom, Poly>& bindings);

using FunctionValues = std::map<std::tuple<int, int, Rational>, Rational>;
Rational evaluate(const Poly& p, const std::map<Atom, Rational>& point, const FunctionValues& fvals = {});

// Split p = sum_j eps^j P_j; fails on negative eps powers. Slots above max_power are dropped.
std::vector<Poly> split_by_epsilon(const Poly& p, int max_power);
Poly join_by_epsilon(const std::vector<Poly>& slots);
int epsilon_degree(const Poly& p);  // -1 for zero

}  // namespace aclaw
