#include "aclaw/problem.hpp"

#include <set>

#include "aclaw/error.hpp"
#include "aclaw/print.hpp"

namespace aclaw {

namespace {

constexpr int kMaxOrder = 3;

bool is_constant_atom(Atom a) { return a.is_independent() || a.is_parameter(); }

}  // namespace

SolvedForm solve_for_leading(const Poly& equation, Atom leading) {
  SolvedForm out;
  out.leading = leading;
  PolyBuilder a, rest;
  for (const Term& t : equation) {
    int e = t.mono.exponent(leading);
    if (e == 0) {
      rest.add(t.mono, t.coef);
      continue;
    }
    if (e != 1) throw InputError("equation is not linear in its leading derivative");
    Monomial m = t.mono.times(leading, -1);
    if (m.contains([](Atom x) { return !is_constant_atom(x); }))
      throw InputError("leading derivative must have a coefficient free of dependent variables and eps");
    a.add(m, t.coef);
  }
  Poly ap = a.build();
  if (ap.is_zero()) throw InputError("equation does not contain its leading derivative");
  if (ap.size() != 1) throw UnsupportedForm("coefficient of the leading derivative must be a single monomial");
  out.a_mono = ap.terms()[0].mono;
  out.a_coef = ap.terms()[0].coef;
  out.rest = rest.build();
  return out;
}

void PdeProblem::validate() const {
  if (!symbols) throw InputError("problem has no symbol table");
  if (symbols->independents().empty()) throw InputError("no independent variables declared");
  if (symbols->dependents().empty()) throw InputError("no dependent variables declared");
  if (equations.empty()) throw InputError("no equations given");
  if (leading.size() != equations.size()) throw InputError("each equation needs exactly one leading derivative");
  if (order < 1) throw InputError("expansion order must be at least 1");
  if (order > kMaxOrder) throw InputError("expansion order above " + std::to_string(kMaxOrder) + " is not supported");

  std::set<Atom> seen;
  for (Atom L : leading) {
    if (!L.is_jet() || L.expanded() || L.deriv_order() == 0)
      throw InputError("leading derivative must be a derivative of an unexpanded dependent variable");
    if (!seen.insert(L).second) throw InputError("duplicate leading derivative");
  }
  for (std::size_t nu = 0; nu < equations.size(); ++nu) {
    const Poly& eq = equations[nu];
    if (eq.is_zero()) throw InputError("equation " + std::to_string(nu + 1) + " is identically zero");
    if (has_expanded_jets(eq)) throw InputError("equations must use unexpanded dependent variables");
    if (eq.contains([](Atom a) { return a.is_coefficient(); })) throw InputError("equation contains ansatz coefficients");
    for (const Term& t : eq) {
      int e = t.mono.exponent(Atom::epsilon());
      if (e < 0) throw InputError("equation " + std::to_string(nu + 1) + " has a negative power of eps");
      if (e > order)
        throw InputError("equation " + std::to_string(nu + 1) + " has eps degree above the expansion order");
    }
    SolvedForm sf = solve_for_leading(eq, leading[nu]);
    for (Atom a : sf.rest.atoms()) {
      if (!a.is_jet()) continue;
      for (Atom L : leading)
        if (a.dep() == L.dep() && a.deriv().contains(L.deriv()))
          throw InputError("equation " + std::to_string(nu + 1) + " is not in solved form: " +
                           print_atom(a, *symbols) + " is a leading derivative or one of its derivatives");
    }
  }
}

std::vector<EpsilonSeries> PdeProblem::expanded() const {
  std::vector<EpsilonSeries> out;
  out.reserve(equations.size());
  for (const Poly& eq : equations) out.push_back(expand_epsilon(eq, order));
  return out;
}

std::vector<EpsilonSeries> PdeProblem::graded() const {
  std::vector<EpsilonSeries> out;
  out.reserve(equations.size());
  for (const Poly& eq : equations) out.emplace_back(split_by_epsilon(eq, order));
  return out;
}

int PdeProblem::evolution_variable() const {
  if (static_cast<int>(leading.size()) != n_dependent()) return -1;
  int tau = -1;
  std::set<int> deps;
  for (Atom L : leading) {
    if (L.deriv_order() != 1) return -1;
    int v = L.deriv()[0];
    if (tau >= 0 && v != tau) return -1;
    tau = v;
    deps.insert(L.dep());
  }
  return static_cast<int>(deps.size()) == n_dependent() ? tau : -1;
}

// ---- SolutionReducer ----

SolutionReducer::SolutionReducer(const PdeProblem& problem, int depth) : problem_(problem), depth_(depth) {
  for (std::size_t nu = 0; nu < problem.equations.size(); ++nu) {
    solved_.push_back(solve_for_leading(problem.equations[nu], problem.leading[nu]));
    rest_expanded_.push_back(expand_epsilon(solved_.back().rest, problem.order));
  }
}

const std::pair<int, MultiIndex>* SolutionReducer::match(Atom a) const {
  if (!a.is_jet()) return nullptr;
  for (std::size_t nu = 0; nu < solved_.size(); ++nu) {
    Atom L = solved_[nu].leading;
    MultiIndex J = a.deriv();
    if (a.dep() == L.dep() && J.contains(L.deriv())) {
      match_tmp_ = {static_cast<int>(nu), J.minus(L.deriv())};
      return &match_tmp_;
    }
  }
  return nullptr;
}

const Poly& SolutionReducer::replacement(Atom target) {
  auto it = cache_.find(target);
  if (it != cache_.end()) return it->second;
  const auto* m = match(target);
  const int nu = m->first;
  const MultiIndex extra = m->second;
  if (extra.size() > depth_)
    throw Inconclusive("elimination needs more than " + std::to_string(depth_) + " differential consequences");
  Poly value;
  if (extra.empty()) {
    const SolvedForm& sf = solved_[static_cast<std::size_t>(nu)];
    Monomial inv = sf.a_mono.inverse();
    Rational c = -sf.a_coef.inverse();
    if (target.expanded()) {
      if (target.order() > problem_.order) throw Inconclusive("perturbation order above the truncation order");
      value = rest_expanded_[static_cast<std::size_t>(nu)][target.order()].times(inv, c);
    } else {
      value = sf.rest.times(inv, c);
    }
  } else {
    const int var = extra[extra.size() - 1];
    Atom lower = Atom::jet(target.dep(), target.order(), target.deriv().minus(var));
    Poly base = replacement(lower);
    value = reduce(total_derivative(base, var));
  }
  return cache_.emplace(target, std::move(value)).first->second;
}

Poly SolutionReducer::reduce(const Poly& e) {
  std::map<Atom, Poly> bindings;
  for (Atom a : e.atoms())
    if (match(a)) bindings.emplace(a, replacement(a));
  if (bindings.empty()) return e;
  Poly r = substitute(e, bindings);
  if (has_unexpanded_jets(r) && epsilon_degree(r) > problem_.order)
    r = join_by_epsilon(split_by_epsilon(r, problem_.order));
  return r;
}

}  // namespace aclaw
