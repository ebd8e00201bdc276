#include "aclaw/atom.hpp"

#include <algorithm>
#include <cctype>

#include "aclaw/error.hpp"

namespace aclaw {

// ---- MultiIndex ----

MultiIndex MultiIndex::of(std::initializer_list<int> indices) {
  MultiIndex m;
  for (int i : indices) m = m.plus(i);
  return m;
}

int MultiIndex::count(int var) const noexcept {
  int c = 0;
  for (int i = 0; i < size_; ++i) c += idx_[i] == var;
  return c;
}

MultiIndex MultiIndex::plus(int var) const {
  if (size_ >= kMaxDerivativeOrder) throw UnsupportedForm("derivative order exceeds " + std::to_string(kMaxDerivativeOrder));
  if (var < 0 || var >= kMaxIndependent) throw UnsupportedForm("independent variable index out of range");
  MultiIndex m = *this;
  int pos = m.size_;
  while (pos > 0 && m.idx_[pos - 1] > var) {
    m.idx_[pos] = m.idx_[pos - 1];
    --pos;
  }
  m.idx_[pos] = static_cast<std::uint8_t>(var);
  ++m.size_;
  return m;
}

MultiIndex MultiIndex::plus(const MultiIndex& other) const {
  MultiIndex m = *this;
  for (int i = 0; i < other.size_; ++i) m = m.plus(other.idx_[i]);
  return m;
}

MultiIndex MultiIndex::minus(int var) const {
  MultiIndex m;
  bool removed = false;
  for (int i = 0; i < size_; ++i) {
    if (!removed && idx_[i] == var) {
      removed = true;
      continue;
    }
    m.idx_[m.size_++] = idx_[i];
  }
  return m;
}

bool MultiIndex::contains(const MultiIndex& other) const noexcept {
  int i = 0, j = 0;
  while (j < other.size_) {
    while (i < size_ && idx_[i] < other.idx_[j]) ++i;
    if (i == size_ || idx_[i] != other.idx_[j]) return false;
    ++i;
    ++j;
  }
  return true;
}

MultiIndex MultiIndex::minus(const MultiIndex& other) const {
  MultiIndex m = *this;
  for (int j = 0; j < other.size_; ++j) m = m.minus(other.idx_[j]);
  return m;
}

bool operator==(const MultiIndex& a, const MultiIndex& b) noexcept {
  return a.size_ == b.size_ && std::equal(a.idx_.begin(), a.idx_.begin() + a.size_, b.idx_.begin());
}

std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) noexcept {
  if (a.size_ != b.size_) return a.size_ <=> b.size_;
  for (int i = 0; i < a.size_; ++i)
    if (a.idx_[i] != b.idx_[i]) return a.idx_[i] <=> b.idx_[i];
  return std::strong_ordering::equal;
}

// ---- Atom ----

namespace {

constexpr std::uint64_t kind_bits(AtomKind k) { return static_cast<std::uint64_t>(k) << 60; }

std::uint64_t order_code(int order) {
  if (order < kUnexpanded || order > 62) throw UnsupportedForm("perturbation order out of range");
  return static_cast<std::uint64_t>(order + 1);
}

std::uint64_t pack_deriv(const MultiIndex& J) {
  std::uint64_t bits = static_cast<std::uint64_t>(J.size()) << 41;
  for (int i = 0; i < J.size(); ++i) bits |= static_cast<std::uint64_t>(J[i]) << (33 - 3 * i);
  return bits;
}

}  // namespace

Atom Atom::independent(int index) { return Atom(kind_bits(AtomKind::independent) | static_cast<std::uint64_t>(index)); }
Atom Atom::parameter(int index) { return Atom(kind_bits(AtomKind::parameter) | static_cast<std::uint64_t>(index)); }
Atom Atom::epsilon() { return Atom(kind_bits(AtomKind::epsilon)); }

Atom Atom::coefficient(int order, int equation, std::int64_t index) {
  if (order < 0 || order > 255 || equation < 0 || equation > 255 || index < 0 || index >= (1LL << 44))
    throw UnsupportedForm("coefficient tag out of range");
  return Atom(kind_bits(AtomKind::coefficient) | static_cast<std::uint64_t>(order) << 52 |
              static_cast<std::uint64_t>(equation) << 44 | static_cast<std::uint64_t>(index));
}

Atom Atom::jet(int dep, int order, const MultiIndex& deriv) {
  if (dep < 0 || dep > 255) throw UnsupportedForm("dependent index out of range");
  return Atom(kind_bits(AtomKind::jet) | static_cast<std::uint64_t>(dep) << 52 | order_code(order) << 46 |
              pack_deriv(deriv));
}

Atom Atom::function(int fn, int nderiv, int dep, int order) {
  if (fn < 0 || fn > 255 || nderiv < 0 || nderiv > 255 || dep < 0 || dep > 255)
    throw UnsupportedForm("function atom out of range");
  return Atom(kind_bits(AtomKind::function) | static_cast<std::uint64_t>(fn) << 52 |
              static_cast<std::uint64_t>(nderiv) << 44 | static_cast<std::uint64_t>(dep) << 36 |
              order_code(order) << 28);
}

int Atom::dep() const noexcept {
  if (is_function()) return static_cast<int>((key_ >> 36) & 0xff);
  return static_cast<int>((key_ >> 52) & 0xff);
}

int Atom::order() const noexcept {
  if (is_function()) return static_cast<int>((key_ >> 28) & 0x3f) - 1;
  return static_cast<int>((key_ >> 46) & 0x3f) - 1;
}

int Atom::deriv_order() const noexcept { return static_cast<int>((key_ >> 41) & 0x1f); }

MultiIndex Atom::deriv() const {
  MultiIndex m;
  int n = deriv_order();
  for (int i = 0; i < n; ++i) m = m.plus(static_cast<int>((key_ >> (33 - 3 * i)) & 0x7));
  return m;
}

Atom Atom::argument() const { return jet(dep(), order()); }

Atom Atom::with_deriv(int var) const { return jet(dep(), order(), deriv().plus(var)); }

Atom Atom::with_order(int order) const {
  if (is_function()) return function(fn(), fn_derivs(), dep(), order);
  return jet(dep(), order, deriv());
}

Atom Atom::with_fn_derivs(int nderiv) const { return function(fn(), nderiv, dep(), order()); }

Atom Atom::with_coeff_order(int order) const { return coefficient(order, coeff_equation(), coeff_index()); }

Atom Atom::base_jet() const { return jet(dep(), order()); }

// ---- SymbolTable ----

bool SymbolTable::valid_identifier(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  return std::all_of(name.begin(), name.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)); });
}

void SymbolTable::check_fresh(const std::string& name) const {
  if (!valid_identifier(name)) throw InputError("invalid identifier '" + name + "'");
  if (name == epsilon_name() || name == "der") throw InputError("'" + name + "' is reserved");
  if (find_independent(name) || find_dependent(name) || find_parameter(name) || find_function(name))
    throw InputError("duplicate symbol '" + name + "'");
}

int SymbolTable::add_independent(std::string name) {
  check_fresh(name);
  if (static_cast<int>(independents_.size()) >= kMaxIndependent) throw InputError("too many independent variables");
  independents_.push_back(std::move(name));
  return static_cast<int>(independents_.size()) - 1;
}

int SymbolTable::add_dependent(std::string name) {
  check_fresh(name);
  dependents_.push_back(std::move(name));
  return static_cast<int>(dependents_.size()) - 1;
}

int SymbolTable::add_parameter(std::string name) {
  check_fresh(name);
  parameters_.push_back(std::move(name));
  return static_cast<int>(parameters_.size()) - 1;
}

int SymbolTable::add_function(std::string name, int arg_dep) {
  check_fresh(name);
  if (arg_dep < 0 || arg_dep >= static_cast<int>(dependents_.size()))
    throw InputError("function '" + name + "' takes an undeclared argument");
  functions_.push_back({std::move(name), arg_dep});
  return static_cast<int>(functions_.size()) - 1;
}

namespace {
template <class V>
std::optional<int> find_name(const V& v, std::string_view name) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] == name) return static_cast<int>(i);
  return std::nullopt;
}
}  // namespace

std::optional<int> SymbolTable::find_independent(std::string_view name) const { return find_name(independents_, name); }
std::optional<int> SymbolTable::find_dependent(std::string_view name) const { return find_name(dependents_, name); }
std::optional<int> SymbolTable::find_parameter(std::string_view name) const { return find_name(parameters_, name); }

std::optional<int> SymbolTable::find_function(std::string_view name) const {
  for (std::size_t i = 0; i < functions_.size(); ++i)
    if (functions_[i].name == name) return static_cast<int>(i);
  return std::nullopt;
}

}  // namespace aclaw
