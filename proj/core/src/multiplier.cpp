#include "aclaw/multiplier.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "aclaw/error.hpp"

namespace aclaw {

std::string to_string(Method m) {
  switch (m) {
    case Method::consistent:
      return "consistent";
    case Method::approach_a:
      return "a";
    case Method::approach_b:
      return "b";
  }
  return "consistent";
}

std::optional<Method> parse_method(std::string_view text) {
  if (text == "consistent") return Method::consistent;
  if (text == "a" || text == "approach_a") return Method::approach_a;
  if (text == "b" || text == "approach_b") return Method::approach_b;
  return std::nullopt;
}

std::string to_string(MultiplierClass c) {
  switch (c) {
    case MultiplierClass::nontrivial:
      return "non-trivial";
    case MultiplierClass::trivial:
      return "trivial";
    case MultiplierClass::eps_shift:
      return "eps-shift";
  }
  return "non-trivial";
}

AnsatzSpec AnsatzSpec::uniform(int equations, int order, const GeneratorSpec& base, const std::vector<int>& degrees) {
  if (degrees.empty()) throw InputError("no degree bound given");
  AnsatzSpec s;
  for (int nu = 0; nu < equations; ++nu) {
    std::vector<GeneratorSpec> row;
    for (int k = 0; k <= order; ++k) {
      GeneratorSpec g = base;
      g.degree = degrees[std::min(static_cast<std::size_t>(k), degrees.size() - 1)];
      row.push_back(std::move(g));
    }
    s.per.push_back(std::move(row));
  }
  return s;
}

namespace {

void enumerate_rec(const std::vector<Atom>& gens, const std::vector<int>& mins, std::size_t i, int budget,
                   Monomial current, std::vector<Monomial>& out) {
  if (i == gens.size()) {
    out.push_back(std::move(current));
    return;
  }
  for (int e = mins[i]; e <= budget; ++e)
    enumerate_rec(gens, mins, i + 1, budget - std::max(e, 0), current.times(gens[i], e), out);
}

bool positive_degree_less(const Monomial& a, const Monomial& b) {
  int da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  return a < b;
}

}  // namespace

std::vector<Monomial> enumerate_monomials(const GeneratorSpec& spec) {
  if (spec.degree < 0) throw InputError("negative degree bound");
  std::vector<Atom> gens = spec.generators;
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  if (gens.empty() && spec.degree > 0) throw InputError("empty generator set with positive degree");
  std::vector<int> mins;
  for (Atom g : gens) {
    auto it = spec.laurent_min.find(g);
    int m = it == spec.laurent_min.end() ? 0 : it->second;
    if (m > 0) throw InputError("Laurent minimum exponent must be negative");
    mins.push_back(m);
  }
  for (const auto& [g, m] : spec.laurent_min) {
    (void)m;
    if (!std::binary_search(gens.begin(), gens.end(), g)) throw InputError("Laurent flag on a non-generator");
  }
  std::vector<Monomial> out;
  enumerate_rec(gens, mins, 0, spec.degree, Monomial(), out);
  std::sort(out.begin(), out.end(), positive_degree_less);
  return out;
}

// ---- MultiplierSet ----

bool MultiplierSet::is_zero() const {
  for (const auto& row : slots)
    for (const Poly& p : row)
      if (!p.is_zero()) return false;
  return true;
}

bool MultiplierSet::leading_slot_zero() const {
  for (const auto& row : slots)
    if (!row.empty() && !row[0].is_zero()) return false;
  return true;
}

MultiplierSet MultiplierSet::eps_shift() const {
  MultiplierSet r = *this;
  for (auto& row : r.slots) {
    for (std::size_t k = row.size(); k-- > 1;) row[k] = row[k - 1];
    if (!row.empty()) row[0] = Poly();
  }
  return r;
}

MultiplierSet MultiplierSet::scaled(const Rational& c) const {
  MultiplierSet r = *this;
  for (auto& row : r.slots)
    for (Poly& p : row) p = p.scaled(c);
  return r;
}

Poly MultiplierSet::joined(int nu) const { return join_by_epsilon(slots.at(static_cast<std::size_t>(nu))); }

// ---- ansatz ----

namespace {

Atom normalize_generator(Atom g, Method method, int p) {
  if (g.is_independent() || g.is_parameter()) return g;
  if (!g.is_jet()) throw InputError("multiplier generators must be independent variables, parameters or jets");
  switch (method) {
    case Method::consistent:
      if (g.expanded() && g.order() != 0) throw InputError("consistent-method generators are order-0 jets");
      return g.with_order(0);
    case Method::approach_a:
      if (g.expanded() && g.order() != 0) throw InputError("Approach A generators are unexpanded jets");
      return g.with_order(kUnexpanded);
    case Method::approach_b:
      if (!g.expanded()) return g.with_order(0);
      if (g.order() > p) throw InputError("Approach B generator above the truncation order");
      return g;
  }
  return g;
}

Poly coefficient_sum(const std::vector<Monomial>& basis, const std::map<Monomial, std::int64_t>& index, int k,
                     int nu, const std::set<Monomial>* skip) {
  PolyBuilder b;
  for (const Monomial& m : basis) {
    if (skip && skip->count(m)) continue;
    b.add(m.times(Atom::coefficient(k, nu, index.at(m)), 1), Rational(1));
  }
  return b.build();
}

}  // namespace

Ansatz build_ansatz(const PdeProblem& problem, const AnsatzSpec& spec, Method method, bool allow_leading) {
  const int q = problem.n_equations();
  const int p = problem.order;
  if (static_cast<int>(spec.per.size()) != q) throw InputError("ansatz must cover every equation");
  Ansatz out;
  out.shape.method = method;
  out.shape.provenance = Provenance::solver;
  std::set<Atom> unknowns;
  for (int nu = 0; nu < q; ++nu) {
    if (static_cast<int>(spec.per[static_cast<std::size_t>(nu)].size()) != p + 1)
      throw InputError("ansatz must cover every perturbation order");
    std::vector<std::vector<Monomial>> bases;
    std::set<Monomial> all;
    for (int k = 0; k <= p; ++k) {
      GeneratorSpec g = spec.at(nu, k);
      std::map<Atom, int> laurent;
      for (Atom& a : g.generators) {
        Atom n = normalize_generator(a, method, p);
        auto it = g.laurent_min.find(a);
        if (it != g.laurent_min.end()) laurent[n] = it->second;
        a = n;
        if (a.is_jet() && !allow_leading)
          for (Atom L : problem.leading)
            if (a.dep() == L.dep() && a.deriv().contains(L.deriv()))
              throw InputError("multiplier ansatz depends on a leading derivative");
      }
      g.laurent_min = std::move(laurent);
      bases.push_back(enumerate_monomials(g));
      all.insert(bases.back().begin(), bases.back().end());
    }
    std::vector<Monomial> ordered(all.begin(), all.end());
    std::sort(ordered.begin(), ordered.end(), positive_degree_less);
    std::map<Monomial, std::int64_t> index;
    for (std::size_t i = 0; i < ordered.size(); ++i) index.emplace(ordered[i], static_cast<std::int64_t>(i));

    std::vector<Poly> slots;
    if (method == Method::consistent) {
      slots.push_back(coefficient_sum(bases[0], index, 0, nu, nullptr));
      for (int k = 0; k < p; ++k) {
        // inherited part R[slot_k]/(k+1) already carries c(k+1, m) for every m in basis_k
        std::set<Monomial> inherited(bases[0].begin(), bases[0].end());
        for (int j = 1; j <= k; ++j) inherited.insert(bases[static_cast<std::size_t>(j)].begin(), bases[static_cast<std::size_t>(j)].end());
        Poly next = recursion_R(slots.back()).scaled(Rational(1, k + 1));
        next += coefficient_sum(bases[static_cast<std::size_t>(k + 1)], index, k + 1, nu, &inherited);
        slots.push_back(std::move(next));
      }
    } else {
      for (int k = 0; k <= p; ++k) slots.push_back(coefficient_sum(bases[static_cast<std::size_t>(k)], index, k, nu, nullptr));
    }
    for (const Poly& s : slots)
      for (Atom a : s.atoms())
        if (a.is_coefficient()) unknowns.insert(a);
    out.shape.slots.push_back(std::move(slots));
  }
  out.unknowns.assign(unknowns.begin(), unknowns.end());
  return out;
}

// ---- determining equations ----

EpsilonSeries contraction(const PdeProblem& problem, const MultiplierSet& m) {
  const int p = problem.order;
  if (m.equations() != problem.n_equations()) throw InputError("multiplier count differs from equation count");
  if (m.order() != p) throw InputError("multiplier order differs from the problem order");
  if (m.method == Method::approach_b) {
    std::vector<EpsilonSeries> d = problem.expanded();
    PolyBuilder b;
    for (int nu = 0; nu < m.equations(); ++nu)
      for (int k = 0; k <= p; ++k) b.add(m.slots[static_cast<std::size_t>(nu)][static_cast<std::size_t>(k)] * d[static_cast<std::size_t>(nu)][k]);
    return EpsilonSeries(std::vector<Poly>{b.build()});
  }
  std::vector<EpsilonSeries> d = m.method == Method::consistent ? problem.expanded() : problem.graded();
  EpsilonSeries total(p);
  for (int nu = 0; nu < m.equations(); ++nu) {
    EpsilonSeries lam(m.slots[static_cast<std::size_t>(nu)]);
    total = total + lam * d[static_cast<std::size_t>(nu)];
  }
  return total;
}

std::vector<Poly> determining_expressions(const PdeProblem& problem, const MultiplierSet& m) {
  EpsilonSeries t = contraction(problem, m);
  std::vector<Poly> out;
  const int n = problem.n_dependent();
  if (m.method == Method::approach_b) {
    for (int j = 0; j <= problem.order; ++j)
      for (int alpha = 0; alpha < n; ++alpha) out.push_back(euler(t[0], EulerKind::per_order(alpha, j)));
    return out;
  }
  for (int k = 0; k <= t.order(); ++k)
    for (int alpha = 0; alpha < n; ++alpha)
      out.push_back(euler(t[k], m.method == Method::consistent ? EulerKind::consistent(alpha)
                                                                : EulerKind::unexpanded(alpha)));
  return out;
}

LinearSystem determining_system(const PdeProblem& problem, const Ansatz& ansatz) {
  LinearSystem sys(ansatz.unknowns);
  for (const Poly& e : determining_expressions(problem, ansatz.shape)) {
    std::unordered_map<Monomial, SparseRow, MonomialHash> rows;
    std::vector<Monomial> keys;
    for (const Term& t : e) {
      Atom coeff;
      bool found = false;
      for (const Factor& f : t.mono) {
        if (!f.atom.is_coefficient()) continue;
        if (found || f.exp != 1) throw Error("determining equations are not linear in the ansatz coefficients");
        coeff = f.atom;
        found = true;
      }
      if (!found) throw Error("determining equations have an inhomogeneous term");
      Monomial rest = t.mono.times(coeff, -1);
      auto [it, fresh] = rows.try_emplace(rest);
      if (fresh) keys.push_back(rest);
      it->second.emplace_back(sys.column_of(coeff), t.coef);
    }
    std::sort(keys.begin(), keys.end());
    for (const Monomial& k : keys) {
      SparseRow r = std::move(rows.at(k));
      std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      sys.add_row(std::move(r));
    }
  }
  return sys;
}

// ---- solutions ----

MultiplierSet instantiate(const Ansatz& ansatz, const std::vector<Rational>& values) {
  if (values.size() != ansatz.unknowns.size()) throw Error("coefficient vector has the wrong length");
  std::unordered_map<std::uint64_t, const Rational*> value_of;
  for (std::size_t i = 0; i < values.size(); ++i) value_of.emplace(ansatz.unknowns[i].key(), &values[i]);
  MultiplierSet m = ansatz.shape;
  for (auto& row : m.slots)
    for (Poly& slot : row) {
      PolyBuilder b;
      for (const Term& t : slot) {
        Monomial rest;
        Rational c = t.coef;
        for (const Factor& f : t.mono) {
          if (f.atom.is_coefficient())
            c *= *value_of.at(f.atom.key());
          else
            rest = rest.times(f.atom, f.exp);
        }
        b.add(std::move(rest), c);
      }
      slot = b.build();
    }
  return m;
}

std::optional<std::vector<Rational>> coordinates(const Ansatz& ansatz, const MultiplierSet& m) {
  if (m.method != ansatz.shape.method || m.equations() != ansatz.shape.equations() || m.order() != ansatz.shape.order())
    return std::nullopt;
  const std::size_t n = ansatz.unknowns.size();
  std::unordered_map<std::uint64_t, std::size_t> col;
  for (std::size_t i = 0; i < n; ++i) col.emplace(ansatz.unknowns[i].key(), i);
  std::vector<SparseRow> rows;
  std::vector<Rational> rhs;
  for (int nu = 0; nu < m.equations(); ++nu)
    for (int k = 0; k <= m.order(); ++k) {
      const Poly& shape = ansatz.shape.slots[static_cast<std::size_t>(nu)][static_cast<std::size_t>(k)];
      const Poly& target = m.slots[static_cast<std::size_t>(nu)][static_cast<std::size_t>(k)];
      std::map<Monomial, SparseRow> by_mono;
      for (const Term& t : shape) {
        Monomial rest;
        std::size_t c = 0;
        for (const Factor& f : t.mono) {
          if (f.atom.is_coefficient())
            c = col.at(f.atom.key());
          else
            rest = rest.times(f.atom, f.exp);
        }
        by_mono[rest].emplace_back(c, t.coef);
      }
      for (const Term& t : target) by_mono.try_emplace(t.mono);
      for (auto& [mono, row] : by_mono) {
        std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        SparseRow merged;
        for (auto& e : row) {
          if (!merged.empty() && merged.back().first == e.first)
            merged.back().second += e.second;
          else
            merged.push_back(e);
        }
        std::erase_if(merged, [](const auto& e) { return e.second.is_zero(); });
        rows.push_back(std::move(merged));
        rhs.push_back(target.coefficient(mono));
      }
    }
  return solve_particular(std::move(rows), rhs, n);
}

bool satisfies(const LinearSystem& system, const std::vector<Rational>& values) {
  for (const SparseRow& r : system.rows()) {
    Rational s;
    for (const auto& [c, v] : r) s += v * values.at(c);
    if (!s.is_zero()) return false;
  }
  return true;
}

// ---- classification ----

namespace {

// m == c * n for some nonzero rational c
std::optional<Rational> proportional(const std::vector<std::vector<Poly>>& m, const std::vector<std::vector<Poly>>& n) {
  std::optional<Rational> c;
  for (std::size_t nu = 0; nu < m.size(); ++nu)
    for (std::size_t k = 0; k < m[nu].size(); ++k) {
      const Poly& a = m[nu][k];
      const Poly& b = n[nu][k];
      if (a.size() != b.size()) return std::nullopt;
      if (a.is_zero()) continue;
      if (!c) c = a.terms()[0].coef / b.terms()[0].coef;
      if (!(a == b.scaled(*c))) return std::nullopt;
    }
  return c;
}

bool is_shift_of(const MultiplierSet& m, const MultiplierSet& n) {
  if (!m.leading_slot_zero() || n.leading_slot_zero()) return false;
  std::vector<std::vector<Poly>> upper, lower;
  for (std::size_t nu = 0; nu < m.slots.size(); ++nu) {
    upper.emplace_back(m.slots[nu].begin() + 1, m.slots[nu].end());
    lower.emplace_back(n.slots[nu].begin(), n.slots[nu].end() - 1);
  }
  bool nonzero = false;
  for (const auto& row : upper)
    for (const Poly& p : row) nonzero |= !p.is_zero();
  return nonzero && proportional(upper, lower).has_value();
}

}  // namespace

std::vector<ClassifiedMultiplier> classify(const std::vector<MultiplierSet>& basis) {
  struct Pending {
    ClassifiedMultiplier c;
    std::optional<std::size_t> shift_src;  // index in basis
  };
  std::vector<Pending> items;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    Pending p;
    p.c.multiplier = basis[i];
    if (basis[i].method == Method::approach_b || !basis[i].leading_slot_zero()) {
      p.c.cls = MultiplierClass::nontrivial;
      p.c.stable = basis[i].method != Method::approach_b;
    } else {
      p.c.cls = MultiplierClass::trivial;
      for (std::size_t j = 0; j < basis.size(); ++j) {
        if (j == i || !is_shift_of(basis[i], basis[j])) continue;
        p.c.cls = MultiplierClass::eps_shift;
        p.shift_src = j;
        break;
      }
    }
    items.push_back(std::move(p));
  }
  std::vector<std::size_t> order(items.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return static_cast<int>(items[a].c.cls) < static_cast<int>(items[b].c.cls);
  });
  std::vector<std::size_t> position(items.size());
  for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = i;
  std::vector<ClassifiedMultiplier> out;
  for (std::size_t i : order) {
    ClassifiedMultiplier c = items[i].c;
    if (items[i].shift_src) c.shift_of = position[*items[i].shift_src];
    out.push_back(std::move(c));
  }
  return out;
}

SolveResult solve_multipliers(const PdeProblem& problem, const AnsatzSpec& spec, Method method, bool allow_leading) {
  problem.validate();
  SolveResult r;
  r.ansatz = build_ansatz(problem, spec, method, allow_leading);
  r.system = determining_system(problem, r.ansatz);
  for (std::vector<Rational> v : r.system.nullspace()) {
    auto lead = std::find_if(v.begin(), v.end(), [](const Rational& x) { return !x.is_zero(); });
    if (lead != v.end() && !lead->is_one()) {
      const Rational inv = lead->inverse();
      for (Rational& x : v) x *= inv;
    }
    r.basis.push_back(instantiate(r.ansatz, v));
  }
  r.classified = classify(r.basis);
  return r;
}

}  // namespace aclaw
