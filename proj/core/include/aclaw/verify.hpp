#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "aclaw/flux.hpp"
#include "aclaw/multiplier.hpp"
#include "aclaw/problem.hpp"

namespace aclaw {

struct CheckResult {
  std::string name;
  bool passed = false;
  bool inconclusive = false;
  Poly residual;                    // nonzero normal form on a symbolic failure
  std::map<Atom, Rational> point;   // witness point on a numeric failure
  FunctionValues function_values;
  Rational value;                   // residual value at the witness
  std::string note;
};

struct VerificationReport {
  int epsilon_order = 1;
  std::vector<CheckResult> checks;

  bool passed() const;
  void append(const VerificationReport& other);
};

// sum_k eps^k (contraction_k - sum_i D_i Phi^i_k) == 0 slot by slot.
VerificationReport verify_identity(const PdeProblem& problem, const ConservationLaw& law);
// Euler operators of the multiplier's method annihilate every slot of the contraction.
VerificationReport verify_euler(const PdeProblem& problem, const MultiplierSet& mult);
// sum_i D_i Phi^i vanishes after eliminating leading derivatives (up to O(eps^(p+1))).
VerificationReport verify_on_solutions(const PdeProblem& problem, const ConservationLaw& law, int depth = 2);
// Exact evaluation of the identity residual at seeded random rational points.
VerificationReport spot_check(const PdeProblem& problem, const ConservationLaw& law, int trials, std::uint64_t seed);

inline constexpr std::uint64_t kDefaultSeed = 20240531;

}  // namespace aclaw
