#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aclaw/jet.hpp"
#include "aclaw/linear.hpp"
#include "aclaw/poly.hpp"
#include "aclaw/problem.hpp"

namespace aclaw {

enum class Method { consistent, approach_a, approach_b };
std::string to_string(Method m);
std::optional<Method> parse_method(std::string_view text);

// Generators of one multiplier component: independent variables, parameters and jets.
struct GeneratorSpec {
  std::vector<Atom> generators;
  int degree = 0;                   // bound on the sum of positive exponents
  std::map<Atom, int> laurent_min;  // generator -> most negative allowed exponent
};

struct AnsatzSpec {
  std::vector<std::vector<GeneratorSpec>> per;  // [equation][order]

  // Same generators everywhere; degrees[k] for order k (the last entry repeats).
  static AnsatzSpec uniform(int equations, int order, const GeneratorSpec& base, const std::vector<int>& degrees);
  const GeneratorSpec& at(int nu, int k) const { return per.at(static_cast<std::size_t>(nu)).at(static_cast<std::size_t>(k)); }
};

// Monomials of bounded degree over the generators, ordered by degree then canonically.
std::vector<Monomial> enumerate_monomials(const GeneratorSpec& spec);

enum class Provenance { solver, corpus, user };

// slots[nu][k]:
//   consistent  - the expansion slots Lambda~_(k) over expanded jets
//   approach_a  - Lambda_(k) over unexpanded jets (Lambda = sum eps^k Lambda_(k))
//   approach_b  - the per-order multiplier Lambda_(k) of the coupled system
struct MultiplierSet {
  Method method = Method::consistent;
  std::vector<std::vector<Poly>> slots;
  Provenance provenance = Provenance::solver;

  int equations() const { return static_cast<int>(slots.size()); }
  int order() const { return slots.empty() ? 0 : static_cast<int>(slots[0].size()) - 1; }
  bool is_zero() const;
  bool leading_slot_zero() const;  // every Lambda~_(0) vanishes
  MultiplierSet eps_shift() const;  // eps * M, truncated
  MultiplierSet scaled(const Rational& c) const;
  Poly joined(int nu) const;  // sum eps^k slot_k

  friend bool operator==(const MultiplierSet& a, const MultiplierSet& b) {
    return a.method == b.method && a.slots == b.slots;
  }
};

struct Ansatz {
  MultiplierSet shape;          // slots linear in the unknown coefficients
  std::vector<Atom> unknowns;   // sorted coefficient atoms
};

Ansatz build_ansatz(const PdeProblem& problem, const AnsatzSpec& spec, Method method, bool allow_leading = false);

// The eps-graded contraction sum_nu Lambda^nu Delta^nu appropriate to the method.
// For approach_b a single slot: sum_nu sum_k Lambda_(k) Delta~_(k).
EpsilonSeries contraction(const PdeProblem& problem, const MultiplierSet& m);

// The Euler operators of the method applied to every slot of the contraction.
std::vector<Poly> determining_expressions(const PdeProblem& problem, const MultiplierSet& m);

LinearSystem determining_system(const PdeProblem& problem, const Ansatz& ansatz);

// Substitute a coefficient vector into the ansatz.
MultiplierSet instantiate(const Ansatz& ansatz, const std::vector<Rational>& values);

// Coefficient vector reproducing m inside the ansatz, if any.
std::optional<std::vector<Rational>> coordinates(const Ansatz& ansatz, const MultiplierSet& m);
bool satisfies(const LinearSystem& system, const std::vector<Rational>& values);

enum class MultiplierClass { nontrivial, trivial, eps_shift };
std::string to_string(MultiplierClass c);

struct ClassifiedMultiplier {
  MultiplierSet multiplier;
  MultiplierClass cls = MultiplierClass::nontrivial;
  bool stable = false;                  // Lambda~_(0) is an exact multiplier that extends
  std::optional<std::size_t> shift_of;  // index (in the classified list) of M with this = eps*M
};

// Non-trivial first, then trivial-but-independent, then eps-shifts.
std::vector<ClassifiedMultiplier> classify(const std::vector<MultiplierSet>& basis);

struct SolveResult {
  Ansatz ansatz;
  LinearSystem system;
  std::vector<MultiplierSet> basis;  // scaled nullspace, canonical order
  std::vector<ClassifiedMultiplier> classified;
};

SolveResult solve_multipliers(const PdeProblem& problem, const AnsatzSpec& spec, Method method,
                              bool allow_leading = false);

}  // namespace aclaw
