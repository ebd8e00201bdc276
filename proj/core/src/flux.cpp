#include "aclaw/flux.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_set>

#include "aclaw/error.hpp"

namespace aclaw {

std::string to_string(LawStatus s) {
  switch (s) {
    case LawStatus::identity_verified:
      return "identity-verified";
    case LawStatus::on_solution_verified:
      return "on-solution-verified";
    case LawStatus::unverified:
      return "unverified";
  }
  return "unverified";
}

int flux_slots(const PdeProblem& problem, Method method) { return method == Method::approach_b ? 1 : problem.order + 1; }

EpsilonSeries divergence(const PdeProblem& problem, const ConservationLaw& law) {
  if (law.directions() != problem.n_independent()) throw InputError("one flux component per independent variable is required");
  const std::size_t slots = law.fluxes.empty() ? 0 : law.fluxes[0].size();
  EpsilonSeries out(static_cast<int>(slots) - 1);
  for (std::size_t k = 0; k < slots; ++k) {
    PolyBuilder b;
    for (int i = 0; i < law.directions(); ++i) {
      const auto& comp = law.fluxes[static_cast<std::size_t>(i)];
      if (comp.size() != slots) throw InputError("flux components have different slot counts");
      b.add(total_derivative(comp[k], i));
    }
    out.slots[k] = b.build();
  }
  return out;
}

EpsilonSeries residual(const PdeProblem& problem, const ConservationLaw& law) {
  EpsilonSeries c = contraction(problem, law.multipliers);
  EpsilonSeries d = divergence(problem, law);
  if (c.order() != d.order()) throw InputError("flux slot count does not match the multiplier method");
  for (int k = 0; k <= c.order(); ++k) c[k] -= d[k];
  return c;
}

// ---- divergence inversion ----

namespace {

int weight(const Monomial& m) {
  int d = 0;
  for (const Factor& f : m)
    if (!f.atom.is_parameter() && !f.atom.is_epsilon() && !f.atom.is_coefficient()) d += f.exp < 0 ? -f.exp : f.exp;
  return d;
}

int jet_order(const Monomial& m) {
  int r = 0;
  for (const Factor& f : m)
    if (f.atom.is_jet()) r = std::max(r, f.atom.deriv_order());
  return r;
}

// Monomials whose D_i may reproduce m.
std::vector<Monomial> preimages(const Monomial& m, int i) {
  std::vector<Monomial> out;
  bool has_i = false;
  for (const Factor& f : m) {
    if (!f.atom.is_jet()) continue;
    const MultiIndex J = f.atom.deriv();
    if (J.count(i) == 0) continue;
    has_i = true;
    Atom lower = Atom::jet(f.atom.dep(), f.atom.order(), J.minus(i));
    out.push_back(m.times(f.atom, -1).times(lower, 1));
  }
  if (!has_i) out.push_back(m.times(Atom::independent(i), 1));
  for (const Factor& f : m) {
    if (!f.atom.is_function() || f.atom.fn_derivs() == 0 || f.exp != 1) continue;
    Atom dv = f.atom.argument().with_deriv(i);
    if (m.exponent(dv) < 1) continue;
    out.push_back(m.times(f.atom, -1).times(f.atom.with_fn_derivs(f.atom.fn_derivs() - 1), 1).times(dv, -1));
  }
  return out;
}

struct Candidate {
  int dir;
  Monomial mono;
  Poly image;
};

std::optional<std::vector<Poly>> invert_with_bound(const Poly& target, int n, int bound, std::size_t max_candidates) {
  const int max_order = max_derivative_order(target);
  std::vector<Candidate> cands;
  std::vector<std::set<Monomial>> known(static_cast<std::size_t>(n));
  std::unordered_set<Monomial, MonomialHash> queued;
  std::deque<Monomial> pool;
  for (const Term& t : target)
    if (queued.insert(t.mono).second) pool.push_back(t.mono);

  while (!pool.empty()) {
    Monomial m = std::move(pool.front());
    pool.pop_front();
    for (int i = 0; i < n; ++i)
      for (Monomial& c : preimages(m, i)) {
        if (weight(c) > bound || c.is_one()) continue;
        if (!known[static_cast<std::size_t>(i)].insert(c).second) continue;
        if (cands.size() >= max_candidates) return std::nullopt;
        Poly image = total_derivative(Poly::monomial(c), i);
        for (const Term& t : image)
          if (weight(t.mono) <= bound && jet_order(t.mono) <= max_order && queued.insert(t.mono).second)
            pool.push_back(t.mono);
        cands.push_back({i, std::move(c), std::move(image)});
      }
  }

  // preferred columns first: pivots land there and later (gauge) columns stay zero
  std::stable_sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    if (a.dir != b.dir) return a.dir < b.dir;
    int wa = weight(a.mono), wb = weight(b.mono);
    if (wa != wb) return wa < wb;
    return a.mono < b.mono;
  });

  std::map<Monomial, SparseRow> rows;
  for (std::size_t j = 0; j < cands.size(); ++j)
    for (const Term& t : cands[j].image) rows[t.mono].emplace_back(j, t.coef);
  for (const Term& t : target) rows.try_emplace(t.mono);
  std::vector<SparseRow> matrix;
  std::vector<Rational> rhs;
  for (auto& [mono, row] : rows) {
    matrix.push_back(std::move(row));
    rhs.push_back(target.coefficient(mono));
  }
  auto x = solve_particular(std::move(matrix), rhs, cands.size());
  if (!x) return std::nullopt;
  std::vector<PolyBuilder> parts(static_cast<std::size_t>(n));
  for (std::size_t j = 0; j < cands.size(); ++j)
    if (!(*x)[j].is_zero()) parts[static_cast<std::size_t>(cands[j].dir)].add(cands[j].mono, (*x)[j]);
  std::vector<Poly> out;
  for (auto& p : parts) out.push_back(p.build());
  return out;
}

}  // namespace

std::optional<std::vector<Poly>> invert_divergence(const Poly& target, int directions, const FluxSpec& spec) {
  if (target.is_zero()) return std::vector<Poly>(static_cast<std::size_t>(directions));
  int top = 0;
  for (const Term& t : target) top = std::max(top, weight(t.mono));
  const int first = spec.degree ? *spec.degree : top + spec.degree_slack;
  for (int bound = first; bound <= first + spec.ceiling; ++bound)
    if (auto r = invert_with_bound(target, directions, bound, spec.max_candidates)) return r;
  return std::nullopt;
}

ConservationLaw reconstruct(const PdeProblem& problem, const MultiplierSet& mult, const FluxSpec& spec) {
  const int n = problem.n_independent();
  EpsilonSeries target = contraction(problem, mult);
  ConservationLaw law;
  law.multipliers = mult;
  law.fluxes.assign(static_cast<std::size_t>(n), std::vector<Poly>(target.slots.size()));
  for (int k = 0; k <= target.order(); ++k) {
    auto phi = invert_divergence(target[k], n, spec);
    if (!phi) throw ReconstructionFailed("no flux found for the eps^" + std::to_string(k) + " slot within the degree bound");
    for (int i = 0; i < n; ++i) law.fluxes[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = (*phi)[static_cast<std::size_t>(i)];
  }
  if (!residual(problem, law).is_zero()) throw ReconstructionFailed("reconstructed flux does not reproduce the contraction");
  law.status = LawStatus::identity_verified;
  return law;
}

// ---- equivalence ----

namespace {

std::vector<EulerKind> density_operators(const PdeProblem& problem, Method method) {
  std::vector<EulerKind> ops;
  for (int a = 0; a < problem.n_dependent(); ++a) {
    if (method == Method::approach_a) {
      ops.push_back(EulerKind::unexpanded(a));
    } else {
      for (int j = 0; j <= problem.order; ++j) ops.push_back(EulerKind::per_order(a, j));
    }
  }
  return ops;
}

}  // namespace

Equivalence equivalent(const PdeProblem& problem, const ConservationLaw& a, const ConservationLaw& b, int depth) {
  if (a.multipliers.method != b.multipliers.method) throw InputError("laws from different methods cannot be compared");
  if (a.directions() != b.directions() || a.directions() != problem.n_independent())
    throw InputError("laws have different flux directions");
  const Method method = a.multipliers.method;
  const int n = a.directions();
  ConservationLaw diff;
  diff.multipliers = a.multipliers;
  for (int i = 0; i < n; ++i) {
    const auto& fa = a.fluxes[static_cast<std::size_t>(i)];
    const auto& fb = b.fluxes[static_cast<std::size_t>(i)];
    if (fa.size() != fb.size()) throw InputError("laws have different slot counts");
    std::vector<Poly> d;
    for (std::size_t k = 0; k < fa.size(); ++k) d.push_back(fa[k] - fb[k]);
    diff.fluxes.push_back(std::move(d));
  }
  if (divergence(problem, diff).is_zero()) return {true, true, "flux difference is identically divergence-free"};

  const int slots = static_cast<int>(diff.fluxes[0].size());
  try {
    SolutionReducer reducer(problem, depth);
    // the difference must itself be a conservation law before triviality means anything
    if (!reducer.reduce(divergence(problem, diff).join()).is_zero())
      return {false, true, "flux difference is not conserved on solutions"};
    ConservationLaw reduced = diff;
    bool all_zero = true;
    for (int i = 0; i < n; ++i) {
      Poly r = reducer.reduce(diff.joined(i));
      auto s = split_by_epsilon(r, slots - 1);
      s.resize(static_cast<std::size_t>(slots));
      for (const Poly& p : s) all_zero &= p.is_zero();
      reduced.fluxes[static_cast<std::size_t>(i)] = std::move(s);
    }
    if (all_zero) return {true, true, "flux difference vanishes on solutions"};
    if (divergence(problem, reduced).is_zero())
      return {true, true, "flux difference is divergence-free on solutions"};

    const int tau = problem.evolution_variable();
    if (tau < 0 || n != 2) return {false, false, "no density criterion for this system; equivalence undecided"};
    const auto ops = density_operators(problem, method);
    for (const Poly& rho : reduced.fluxes[static_cast<std::size_t>(tau)])
      for (const EulerKind& e : ops)
        if (!euler(rho, e).is_zero()) return {false, true, "density difference is not a total derivative on solutions"};
    return {true, true, "density difference is a total derivative on solutions"};
  } catch (const Inconclusive& e) {
    return {false, false, e.what()};
  }
}

ConservationLaw expand_law(const PdeProblem& problem, const ConservationLaw& law) {
  if (law.multipliers.method != Method::approach_a) throw InputError("only Approach A laws are expanded");
  ConservationLaw out;
  out.status = law.status;
  out.multipliers.method = Method::consistent;
  out.multipliers.provenance = law.multipliers.provenance;
  for (int nu = 0; nu < law.multipliers.equations(); ++nu)
    out.multipliers.slots.push_back(expand_epsilon(law.multipliers.joined(nu), problem.order).slots);
  for (int i = 0; i < law.directions(); ++i) out.fluxes.push_back(expand_epsilon(law.joined(i), problem.order).slots);
  return out;
}

}  // namespace aclaw
