#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "aclaw/atom.hpp"
#include "aclaw/rational.hpp"

namespace aclaw {

// Sorted by column, no zero entries.
using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

struct RowEchelon {
  std::vector<SparseRow> rows;        // reduced rows, leading entry 1
  std::vector<std::size_t> pivots;    // pivot column of each row, increasing
  std::size_t columns = 0;
  std::size_t rank() const noexcept { return pivots.size(); }
};

// Exact reduced row-echelon form over the rationals.
RowEchelon reduce_rows(std::vector<SparseRow> rows, std::size_t columns);

// Basis of {v : A v = 0}: one vector per free column (canonical order), with a 1
// in its free column and the values forced on the pivot columns.
std::vector<std::vector<Rational>> nullspace(const RowEchelon& rref);

// Basic solution of A v = b (free columns set to 0); nullopt if inconsistent.
std::optional<std::vector<Rational>> solve_particular(std::vector<SparseRow> rows, const std::vector<Rational>& rhs,
                                                      std::size_t columns);

// Homogeneous system in ansatz coefficients.
class LinearSystem {
 public:
  LinearSystem() = default;
  explicit LinearSystem(std::vector<Atom> unknowns) : unknowns_(std::move(unknowns)) {}

  const std::vector<Atom>& unknowns() const noexcept { return unknowns_; }
  const std::vector<SparseRow>& rows() const noexcept { return rows_; }
  void add_row(SparseRow row);
  std::size_t column_of(Atom a) const;  // throws if unknown

  std::vector<std::vector<Rational>> nullspace() const;
  std::size_t rank() const;

 private:
  std::vector<Atom> unknowns_;  // sorted
  std::vector<SparseRow> rows_;
};

}  // namespace aclaw
