#include "aclaw/linear.hpp"

#include <algorithm>
#include <map>

#include "aclaw/error.hpp"

namespace aclaw {

namespace {

// a - c * b
SparseRow axpy(const SparseRow& a, const Rational& c, const SparseRow& b) {
  SparseRow r;
  r.reserve(a.size() + b.size());
  auto i = a.begin(), j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->first < j->first)) {
      r.push_back(*i++);
    } else if (i == a.end() || j->first < i->first) {
      r.emplace_back(j->first, -(c * j->second));
      ++j;
    } else {
      Rational v = i->second - c * j->second;
      if (!v.is_zero()) r.emplace_back(i->first, std::move(v));
      ++i;
      ++j;
    }
  }
  return r;
}

void normalize_lead(SparseRow& row) {
  const Rational inv = row.front().second.inverse();
  for (auto& e : row) e.second *= inv;
}

}  // namespace

RowEchelon reduce_rows(std::vector<SparseRow> rows, std::size_t columns) {
  // short rows first keeps fill-in down; stable for determinism
  std::stable_sort(rows.begin(), rows.end(), [](const SparseRow& a, const SparseRow& b) { return a.size() < b.size(); });
  std::map<std::size_t, SparseRow> pivot_rows;
  for (SparseRow& row : rows) {
    while (!row.empty()) {
      auto it = pivot_rows.find(row.front().first);
      if (it == pivot_rows.end()) break;
      row = axpy(row, row.front().second, it->second);
    }
    if (row.empty()) continue;
    normalize_lead(row);
    const std::size_t lead = row.front().first;
    pivot_rows.emplace(lead, std::move(row));
  }
  // back substitution, highest pivot first
  for (auto it = pivot_rows.rbegin(); it != pivot_rows.rend(); ++it) {
    SparseRow& row = it->second;
    std::vector<std::pair<std::size_t, Rational>> hits;
    for (std::size_t k = 1; k < row.size(); ++k)
      if (pivot_rows.count(row[k].first)) hits.push_back(row[k]);
    for (const auto& [col, val] : hits) row = axpy(row, val, pivot_rows.at(col));
  }
  RowEchelon out;
  out.columns = columns;
  for (auto& [col, row] : pivot_rows) {
    out.pivots.push_back(col);
    out.rows.push_back(std::move(row));
  }
  return out;
}

std::vector<std::vector<Rational>> nullspace(const RowEchelon& rref) {
  std::vector<bool> is_pivot(rref.columns, false);
  for (std::size_t c : rref.pivots) is_pivot[c] = true;
  std::map<std::size_t, std::vector<std::pair<std::size_t, Rational>>> by_free;  // free col -> (pivot col, entry)
  for (std::size_t r = 0; r < rref.rows.size(); ++r)
    for (std::size_t k = 1; k < rref.rows[r].size(); ++k)
      by_free[rref.rows[r][k].first].emplace_back(rref.pivots[r], rref.rows[r][k].second);
  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < rref.columns; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(rref.columns);
    v[f] = Rational(1);
    auto it = by_free.find(f);
    if (it != by_free.end())
      for (const auto& [p, val] : it->second) v[p] = -val;
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<Rational>> solve_particular(std::vector<SparseRow> rows, const std::vector<Rational>& rhs,
                                                      std::size_t columns) {
  if (rows.size() != rhs.size()) throw Error("row and right-hand side counts differ");
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (!rhs[i].is_zero()) rows[i].emplace_back(columns, rhs[i]);
  RowEchelon e = reduce_rows(std::move(rows), columns + 1);
  std::vector<Rational> x(columns);
  for (std::size_t r = 0; r < e.rows.size(); ++r) {
    if (e.pivots[r] == columns) return std::nullopt;
    const SparseRow& row = e.rows[r];
    if (row.back().first == columns) x[e.pivots[r]] = row.back().second;
  }
  return x;
}

void LinearSystem::add_row(SparseRow row) {
  if (row.empty()) return;
  for (const auto& e : row)
    if (e.first >= unknowns_.size()) throw Error("row references an undeclared unknown");
  rows_.push_back(std::move(row));
}

std::size_t LinearSystem::column_of(Atom a) const {
  auto it = std::lower_bound(unknowns_.begin(), unknowns_.end(), a);
  if (it == unknowns_.end() || *it != a) throw Error("unknown coefficient");
  return static_cast<std::size_t>(it - unknowns_.begin());
}

std::vector<std::vector<Rational>> LinearSystem::nullspace() const {
  return aclaw::nullspace(reduce_rows(rows_, unknowns_.size()));
}

std::size_t LinearSystem::rank() const { return reduce_rows(rows_, unknowns_.size()).rank(); }

}  // namespace aclaw
