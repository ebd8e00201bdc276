#pragma once

#include <map>
#include <memory>
#include <vector>

#include "aclaw/atom.hpp"
#include "aclaw/jet.hpp"
#include "aclaw/poly.hpp"

namespace aclaw {

struct PdeProblem {
  std::shared_ptr<const SymbolTable> symbols;
  std::vector<Poly> equations;  // unexpanded, polynomial in eps
  std::vector<Atom> leading;    // one unexpanded jet per equation
  int order = 1;                // truncation order p

  int n_independent() const { return static_cast<int>(symbols->independents().size()); }
  int n_dependent() const { return static_cast<int>(symbols->dependents().size()); }
  int n_equations() const { return static_cast<int>(equations.size()); }

  // Throws InputError on a malformed problem, including the Cauchy-Kovalevskaya check.
  void validate() const;

  // Delta~^nu_(k): eps-expansion of each equation.
  std::vector<EpsilonSeries> expanded() const;
  // Delta^nu_(k): eps-grading of each equation without expanding u.
  std::vector<EpsilonSeries> graded() const;

  // Whether every leading derivative is the first derivative of a distinct dependent
  // variable along one common independent variable; returns that variable or -1.
  int evolution_variable() const;
};

// Equation nu written as a * L + R with a an invertible constant monomial.
struct SolvedForm {
  Atom leading;
  Monomial a_mono;
  Rational a_coef;
  Poly rest;
};
SolvedForm solve_for_leading(const Poly& equation, Atom leading);

// On-solution elimination: every leading derivative and its differential consequences
// (up to `depth` extra derivatives) are replaced by their values on solutions.
// Handles expanded (order-tagged) and unexpanded expressions; the latter are
// truncated at eps^p after substitution.
class SolutionReducer {
 public:
  explicit SolutionReducer(const PdeProblem& problem, int depth = 2);

  Poly reduce(const Poly& e);

 private:
  const Poly& replacement(Atom target);
  const std::pair<int, MultiIndex>* match(Atom a) const;  // equation index and extra J

  const PdeProblem& problem_;
  int depth_;
  // per equation: leading (unexpanded), and replacement values per order
  std::vector<SolvedForm> solved_;
  std::vector<EpsilonSeries> rest_expanded_;
  std::map<Atom, Poly> cache_;
  mutable std::pair<int, MultiIndex> match_tmp_;
};

}  // namespace aclaw
