#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aclaw {

inline constexpr int kMaxIndependent = 8;
inline constexpr int kMaxDerivativeOrder = 12;
inline constexpr int kUnexpanded = -1;

// Sorted multiset of independent-variable indices.
class MultiIndex {
 public:
  MultiIndex() = default;
  static MultiIndex of(std::initializer_list<int> indices);

  int size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  int operator[](int i) const noexcept { return idx_[i]; }
  int count(int var) const noexcept;

  MultiIndex plus(int var) const;
  MultiIndex plus(const MultiIndex& other) const;
  // Removes one occurrence; precondition count(var) > 0.
  MultiIndex minus(int var) const;
  bool contains(const MultiIndex& other) const noexcept;  // multiset inclusion
  MultiIndex minus(const MultiIndex& other) const;        // precondition contains(other)

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) noexcept;
  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) noexcept;

 private:
  std::array<std::uint8_t, kMaxDerivativeOrder> idx_{};
  std::uint8_t size_ = 0;
};

enum class AtomKind : std::uint8_t {
  independent = 0,
  parameter = 1,
  epsilon = 2,
  coefficient = 3,
  jet = 4,
  function = 5,
};

// A packed 64-bit key. Integer order of keys is the canonical atom order:
// independent < parameter < eps < coefficient < jet (dep, order, |J|, J) < function.
class Atom {
 public:
  constexpr Atom() = default;

  static Atom independent(int index);
  static Atom parameter(int index);
  static Atom epsilon();
  static Atom coefficient(int order, int equation, std::int64_t index);
  // order == kUnexpanded for the unexpanded variable u, otherwise k >= 0 for u[k].
  static Atom jet(int dep, int order, const MultiIndex& deriv = {});
  // f^(nderiv) applied to the order-tagged dependent variable (dep, order) with empty J.
  static Atom function(int fn, int nderiv, int dep, int order);
  static Atom from_key(std::uint64_t key) { return Atom(key); }

  AtomKind kind() const noexcept { return static_cast<AtomKind>(key_ >> 60); }
  bool is_jet() const noexcept { return kind() == AtomKind::jet; }
  bool is_function() const noexcept { return kind() == AtomKind::function; }
  bool is_coefficient() const noexcept { return kind() == AtomKind::coefficient; }
  bool is_epsilon() const noexcept { return kind() == AtomKind::epsilon; }
  bool is_independent() const noexcept { return kind() == AtomKind::independent; }
  bool is_parameter() const noexcept { return kind() == AtomKind::parameter; }

  // independent / parameter index
  int index() const noexcept { return static_cast<int>(key_ & 0xffff); }

  // jet: dependent index, order (kUnexpanded or k), derivative multi-index
  int dep() const noexcept;
  int order() const noexcept;
  bool expanded() const noexcept { return order() != kUnexpanded; }
  MultiIndex deriv() const;
  int deriv_order() const noexcept;

  // function: symbol, derivative count, argument (as a jet atom)
  int fn() const noexcept { return static_cast<int>((key_ >> 52) & 0xff); }
  int fn_derivs() const noexcept { return static_cast<int>((key_ >> 44) & 0xff); }
  Atom argument() const;

  // coefficient tags
  int coeff_order() const noexcept { return static_cast<int>((key_ >> 52) & 0xff); }
  int coeff_equation() const noexcept { return static_cast<int>((key_ >> 44) & 0xff); }
  std::int64_t coeff_index() const noexcept { return static_cast<std::int64_t>(key_ & ((1ULL << 44) - 1)); }

  Atom with_deriv(int var) const;          // jet: J + var
  Atom with_order(int order) const;        // jet or function: retag order
  Atom with_fn_derivs(int nderiv) const;   // function
  Atom with_coeff_order(int order) const;  // coefficient
  Atom base_jet() const;                   // jet: same dep/order with J = {}

  std::uint64_t key() const noexcept { return key_; }
  friend constexpr bool operator==(Atom a, Atom b) noexcept { return a.key_ == b.key_; }
  friend constexpr std::strong_ordering operator<=>(Atom a, Atom b) noexcept { return a.key_ <=> b.key_; }

 private:
  constexpr explicit Atom(std::uint64_t key) : key_(key) {}
  std::uint64_t key_ = 0;
};

struct FunctionDecl {
  std::string name;
  int arg_dep = 0;
};

// Names for every atom family of one problem. Append-only during loading.
class SymbolTable {
 public:
  int add_independent(std::string name);
  int add_dependent(std::string name);
  int add_parameter(std::string name);
  int add_function(std::string name, int arg_dep);

  std::optional<int> find_independent(std::string_view name) const;
  std::optional<int> find_dependent(std::string_view name) const;
  std::optional<int> find_parameter(std::string_view name) const;
  std::optional<int> find_function(std::string_view name) const;

  const std::vector<std::string>& independents() const noexcept { return independents_; }
  const std::vector<std::string>& dependents() const noexcept { return dependents_; }
  const std::vector<std::string>& parameters() const noexcept { return parameters_; }
  const std::vector<FunctionDecl>& functions() const noexcept { return functions_; }

  static constexpr std::string_view epsilon_name() { return "eps"; }
  static bool valid_identifier(std::string_view name);

 private:
  void check_fresh(const std::string& name) const;

  std::vector<std::string> independents_;
  std::vector<std::string> dependents_;
  std::vector<std::string> parameters_;
  std::vector<FunctionDecl> functions_;
};

}  // namespace aclaw

template <>
struct std::hash<aclaw::Atom> {
  std::size_t operator()(aclaw::Atom a) const noexcept { return std::hash<std::uint64_t>{}(a.key()); }
};
