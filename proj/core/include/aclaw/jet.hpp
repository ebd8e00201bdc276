#pragma once

#include <vector>

#include "aclaw/atom.hpp"
#include "aclaw/poly.hpp"

namespace aclaw {

// D_i: explicit x_i dependence plus every jet and function atom chained through J + i.
Poly total_derivative(const Poly& p, int var);
Poly total_derivative(const Poly& p, const MultiIndex& J);

// Slots [f_(0), ..., f_(p)] of an expression expanded in eps. Slot k only holds
// expanded jets of perturbation order <= k and never contains eps.
struct EpsilonSeries {
  std::vector<Poly> slots;

  EpsilonSeries() = default;
  explicit EpsilonSeries(int order) : slots(static_cast<std::size_t>(order + 1)) {}
  explicit EpsilonSeries(std::vector<Poly> s) : slots(std::move(s)) {}

  int order() const noexcept { return static_cast<int>(slots.size()) - 1; }
  const Poly& operator[](int k) const { return slots[static_cast<std::size_t>(k)]; }
  Poly& operator[](int k) { return slots[static_cast<std::size_t>(k)]; }
  Poly join() const { return join_by_epsilon(slots); }  // sum eps^k f_(k)
  bool is_zero() const;

  friend bool operator==(const EpsilonSeries& a, const EpsilonSeries& b) { return a.slots == b.slots; }
};

EpsilonSeries operator+(const EpsilonSeries& a, const EpsilonSeries& b);
// Truncated Cauchy product.
EpsilonSeries operator*(const EpsilonSeries& a, const EpsilonSeries& b);

// Substitute u_J -> sum_k eps^k u[k]_J, Taylor-expand function applications and
// Laurent powers, truncate at eps^p. Unexpanded jets and u[0] are both read as u.
EpsilonSeries expand_epsilon(const Poly& e, int p);

// Leibniz operator with R[u[k]_J] = (k+1) u[k+1]_J, R[c_k] = (k+1) c_{k+1}.
Poly recursion_R(const Poly& e);
// The same series as expand_epsilon, built by f_(0) = e|u->u[0], f_(k+1) = R[f_(k)]/(k+1).
EpsilonSeries expand_by_recursion(const Poly& e, int p);

// Rewrite unexpanded jets (and function arguments) as order-0 expanded ones.
Poly to_order_zero(const Poly& e);

enum class EulerFamily { consistent, unexpanded, per_order };

struct EulerKind {
  EulerFamily family = EulerFamily::consistent;
  int dep = 0;
  int order = 0;  // per_order only

  static EulerKind consistent(int dep) { return {EulerFamily::consistent, dep, 0}; }
  static EulerKind unexpanded(int dep) { return {EulerFamily::unexpanded, dep, 0}; }
  static EulerKind per_order(int dep, int k) { return {EulerFamily::per_order, dep, k}; }
  Atom variable() const;
};

// E_v(e) = sum_J (-D)_J dP/dv_J over the multi-indices J present in e.
Poly euler(const Poly& e, EulerKind kind);

// Expanded and unexpanded jets must not be mixed in one expression.
void check_not_mixed(const Poly& e);
bool has_expanded_jets(const Poly& e);
bool has_unexpanded_jets(const Poly& e);
int max_perturbation_order(const Poly& e);  // -1 if no expanded jets
int max_derivative_order(const Poly& e);

}  // namespace aclaw
