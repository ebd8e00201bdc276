#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "aclaw/jet.hpp"
#include "aclaw/multiplier.hpp"
#include "aclaw/problem.hpp"

namespace aclaw {

enum class LawStatus { identity_verified, on_solution_verified, unverified };
std::string to_string(LawStatus s);

// fluxes[i][k]: component along independent variable i, eps slot k (same slot layout
// as the multipliers; approach_b laws carry a single slot).
struct ConservationLaw {
  MultiplierSet multipliers;
  std::vector<std::vector<Poly>> fluxes;
  LawStatus status = LawStatus::unverified;

  int directions() const { return static_cast<int>(fluxes.size()); }
  Poly joined(int i) const { return join_by_epsilon(fluxes.at(static_cast<std::size_t>(i))); }
};

struct FluxSpec {
  std::optional<int> degree;  // explicit candidate degree bound; default: target degree + slack
  int degree_slack = 1;
  int ceiling = 3;            // retries raise the bound by one up to slack + ceiling
  std::size_t max_candidates = 20000;
};

// Number of eps slots a law of this method carries.
int flux_slots(const PdeProblem& problem, Method method);

// sum_i D_i Phi^i, slot by slot.
EpsilonSeries divergence(const PdeProblem& problem, const ConservationLaw& law);
// contraction(Lambda, Delta) - divergence(Phi), slot by slot.
EpsilonSeries residual(const PdeProblem& problem, const ConservationLaw& law);

// Undetermined coefficients over a candidate closure; throws ReconstructionFailed.
ConservationLaw reconstruct(const PdeProblem& problem, const MultiplierSet& mult, const FluxSpec& spec = {});

// Solve sum_i D_i Phi^i = target for one slot; nullopt when the candidate basis is too small.
std::optional<std::vector<Poly>> invert_divergence(const Poly& target, int directions, const FluxSpec& spec = {});

struct Equivalence {
  bool equivalent = false;
  bool conclusive = true;
  std::string reason;
};

// Flux difference is divergence-free, or vanishes / is divergence-free on solutions, or
// (evolution systems in two variables) its density is a total x-derivative on solutions.
Equivalence equivalent(const PdeProblem& problem, const ConservationLaw& a, const ConservationLaw& b, int depth = 2);

// Approach A law rewritten over expanded jets (multipliers and fluxes eps-expanded).
ConservationLaw expand_law(const PdeProblem& problem, const ConservationLaw& law);

}  // namespace aclaw
