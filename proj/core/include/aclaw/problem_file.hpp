#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aclaw/flux.hpp"
#include "aclaw/multiplier.hpp"
#include "aclaw/problem.hpp"

namespace aclaw {

// Solver hints stored with a problem: `hint.mult-deps`, `hint.mult-degree`, `hint.laurent`,
// `hint.flux-degree`.
struct AnsatzHint {
  std::vector<std::string> generators;
  std::vector<int> degrees;          // per perturbation order, last entry repeats
  std::vector<std::string> laurent;  // "u" (exponent down to -1) or "u^-k"
  std::optional<int> flux_degree;
};

struct ExpectedLaw {
  int index = 0;  // N of multiplier.N / flux.N.var
  std::string label;
  std::string erratum;  // documented transcription problem (`erratum.N`)
  ConservationLaw law;  // fluxes empty when the file gives none
  bool has_fluxes() const { return !law.fluxes.empty(); }
};

struct ProblemFile {
  std::string id;
  std::string title;
  std::vector<std::string> notes;
  PdeProblem problem;
  Method method = Method::consistent;
  AnsatzHint hint;
  std::vector<int> shift_family;  // N with eps * law N also expected (eps-shifts key)
  std::vector<ExpectedLaw> expected;
};

ProblemFile parse_problem_file(std::string_view text, const std::string& source = "<input>");
ProblemFile load_problem_file(const std::string& path);

// eps-slots of a user expression for a multiplier component or flux component of the method.
std::vector<Poly> multiplier_slots(const PdeProblem& problem, Method method, const Poly& value);
std::vector<Poly> flux_slot_values(const PdeProblem& problem, Method method, const Poly& value);

// Generator names resolved for the method: `u` becomes u (Approach A), u[0] (consistent)
// or u[0..p] (Approach B); degrees repeat over orders.
AnsatzSpec ansatz_from_hint(const PdeProblem& problem, Method method, const AnsatzHint& hint);

// eps * law, fluxes included (the shifted law of an expected law).
ConservationLaw shifted_law(const ConservationLaw& law);

}  // namespace aclaw
