#include "aclaw/verify.hpp"

#include <random>
#include <set>

#include "aclaw/error.hpp"

namespace aclaw {

bool VerificationReport::passed() const {
  for (const CheckResult& c : checks)
    if (!c.passed) return false;
  return true;
}

void VerificationReport::append(const VerificationReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

namespace {

CheckResult symbolic(std::string name, Poly residual) {
  CheckResult c;
  c.name = std::move(name);
  c.passed = residual.is_zero();
  c.residual = std::move(residual);
  return c;
}

}  // namespace

VerificationReport verify_identity(const PdeProblem& problem, const ConservationLaw& law) {
  VerificationReport r;
  r.epsilon_order = problem.order;
  EpsilonSeries res = residual(problem, law);
  for (int k = 0; k <= res.order(); ++k) r.checks.push_back(symbolic("identity[" + std::to_string(k) + "]", res[k]));
  return r;
}

VerificationReport verify_euler(const PdeProblem& problem, const MultiplierSet& mult) {
  VerificationReport r;
  r.epsilon_order = problem.order;
  std::vector<Poly> exprs = determining_expressions(problem, mult);
  const int n = problem.n_dependent();
  const auto& deps = problem.symbols->dependents();
  for (std::size_t j = 0; j < exprs.size(); ++j) {
    const std::string var = deps[j % static_cast<std::size_t>(n)];
    const std::string slot = std::to_string(j / static_cast<std::size_t>(n));
    std::string name = mult.method == Method::approach_b ? "euler[" + var + "[" + slot + "]]" : "euler[" + var + "," + slot + "]";
    r.checks.push_back(symbolic(std::move(name), exprs[j]));
  }
  return r;
}

VerificationReport verify_on_solutions(const PdeProblem& problem, const ConservationLaw& law, int depth) {
  VerificationReport r;
  r.epsilon_order = problem.order;
  EpsilonSeries div = divergence(problem, law);
  SolutionReducer reducer(problem, depth);
  try {
    Poly reduced = reducer.reduce(div.join());
    auto slots = split_by_epsilon(reduced, div.order());
    slots.resize(div.slots.size());
    for (std::size_t k = 0; k < slots.size(); ++k)
      r.checks.push_back(symbolic("on-solutions[" + std::to_string(k) + "]", slots[k]));
  } catch (const Inconclusive& e) {
    CheckResult c;
    c.name = "on-solutions";
    c.inconclusive = true;
    c.note = e.what();
    c.residual = div.join();
    r.checks.push_back(std::move(c));
  }
  return r;
}

namespace {

// Portable across standard libraries: only the engine output is used.
Rational draw(std::mt19937_64& rng, bool nonzero) {
  for (;;) {
    const long num = static_cast<long>(rng() % 19) - 9;
    const long den = static_cast<long>(rng() % 9) + 1;
    if (nonzero && num == 0) continue;
    return Rational(num, den);
  }
}

}  // namespace

VerificationReport spot_check(const PdeProblem& problem, const ConservationLaw& law, int trials, std::uint64_t seed) {
  if (trials < 1) throw InputError("spot check needs at least one trial");
  VerificationReport r;
  r.epsilon_order = problem.order;
  EpsilonSeries res = residual(problem, law);
  std::set<Atom> atoms, laurent;
  for (const Poly& p : res.slots) {
    for (const Term& t : p)
      for (const Factor& f : t.mono) {
        Atom a = f.atom;
        if (a.is_function()) {
          atoms.insert(a.argument());
          continue;
        }
        atoms.insert(a);
        if (f.exp < 0) laurent.insert(a);
      }
  }
  constexpr int kRetries = 16;
  for (int trial = 0; trial < trials; ++trial) {
    std::seed_seq sq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                     static_cast<std::uint32_t>(trial)};
    std::mt19937_64 rng(sq);
    CheckResult c;
    c.name = "spot[" + std::to_string(trial) + "]";
    bool evaluated = false;
    for (int attempt = 0; attempt < kRetries && !evaluated; ++attempt) {
      std::map<Atom, Rational> point;
      for (Atom a : atoms) point.emplace(a, draw(rng, laurent.count(a) > 0));
      FunctionValues fvals;
      for (const Poly& p : res.slots)
        for (Atom a : p.atoms())
          if (a.is_function()) {
            auto key = std::make_tuple(a.fn(), a.fn_derivs(), point.at(a.argument()));
            if (!fvals.count(key)) fvals.emplace(key, draw(rng, false));
          }
      try {
        bool all_zero = true;
        Rational witness;
        for (const Poly& p : res.slots) {
          Rational v = evaluate(p, point, fvals);
          if (!v.is_zero() && all_zero) {
            all_zero = false;
            witness = v;
          }
        }
        evaluated = true;
        c.passed = all_zero;
        if (!all_zero) {
          c.point = std::move(point);
          c.function_values = std::move(fvals);
          c.value = witness;
        }
      } catch (const EvaluationError&) {
        // singular point, resample
      }
    }
    if (!evaluated) {
      c.inconclusive = true;
      c.note = "no regular evaluation point found";
    }
    r.checks.push_back(std::move(c));
  }
  return r;
}

}  // namespace aclaw
