#include <doctest.h>

#include <gmpxx.h>

#include <random>

#include "aclaw/corpus.hpp"
#include "aclaw/error.hpp"
#include "aclaw/linear.hpp"
#include "aclaw/multiplier.hpp"
#include "aclaw/parse.hpp"
#include "aclaw/problem_file.hpp"

using namespace aclaw;

namespace {

// Dense rank over Q with GMP, independent of the sparse eliminator.
std::size_t dense_rank(std::vector<std::vector<mpq_class>> a, std::size_t cols) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      mpq_class f = a[i][c] / a[r][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

ProblemFile toy(const std::string& body) { return parse_problem_file(body, "toy.prob"); }

std::size_t count_class(const SolveResult& r, MultiplierClass c) {
  std::size_t n = 0;
  for (const auto& m : r.classified) n += m.cls == c;
  return n;
}

}  // namespace

TEST_CASE("sparse elimination agrees with a dense oracle") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t rows = 1 + rng() % 7, cols = 1 + rng() % 8;
    std::vector<SparseRow> sparse;
    std::vector<std::vector<mpq_class>> dense;
    for (std::size_t i = 0; i < rows; ++i) {
      SparseRow row;
      std::vector<mpq_class> d(cols);
      for (std::size_t j = 0; j < cols; ++j) {
        if (rng() % 3 == 0) continue;
        long v = static_cast<long>(rng() % 7) - 3;
        if (v == 0) continue;
        row.emplace_back(j, Rational(v));
        d[j] = v;
      }
      sparse.push_back(row);
      dense.push_back(d);
    }
    RowEchelon e = reduce_rows(sparse, cols);
    CHECK(e.rank() == dense_rank(dense, cols));
    auto ns = nullspace(e);
    CHECK(ns.size() == cols - e.rank());
    for (const auto& v : ns)
      for (const auto& d : dense) {
        mpq_class acc = 0;
        for (std::size_t j = 0; j < cols; ++j) acc += d[j] * v[j].to_mpq();
        CHECK(acc == 0);
      }
    // A x = A y is solvable and solutions reproduce the right-hand side
    std::vector<Rational> y(cols), rhs(rows);
    for (std::size_t j = 0; j < cols; ++j) y[j] = Rational(static_cast<long>(rng() % 5) - 2);
    for (std::size_t i = 0; i < rows; ++i)
      for (const auto& [j, c] : sparse[i]) rhs[i] += c * y[j];
    auto x = solve_particular(sparse, rhs, cols);
    REQUIRE(x.has_value());
    for (std::size_t i = 0; i < rows; ++i) {
      Rational acc;
      for (const auto& [j, c] : sparse[i]) acc += c * (*x)[j];
      CHECK(acc == rhs[i]);
    }
  }
  // inconsistent: x = 1 and x = 2
  std::vector<SparseRow> bad{{{0, Rational(1)}}, {{0, Rational(1)}}};
  CHECK_FALSE(solve_particular(bad, {Rational(1), Rational(2)}, 1).has_value());
}

TEST_CASE("ansatz size matches the monomial count") {
  ProblemFile f = corpus::load("diffusion-consistent");
  // generators t, x, u[0] at total degree 2: C(5, 2) = 10 monomials per slot
  AnsatzSpec spec = ansatz_from_hint(f.problem, Method::consistent, f.hint);
  CHECK(enumerate_monomials(spec.at(0, 0)).size() == 10);
  Ansatz a = build_ansatz(f.problem, spec, Method::consistent);
  CHECK(a.unknowns.size() == 20);
  // one Laurent generator down to u^-1 adds the monomials u^-1 * (degree <= 1 in t, x) -> 3 more
  GeneratorSpec g = spec.at(0, 0);
  g.laurent_min[g.generators.back()] = -1;
  auto ms = enumerate_monomials(g);
  CHECK(ms.size() >= 13);
}

TEST_CASE("degree-0 ansatz on diffusion gives Lambda = 1 and its eps-shift") {
  ProblemFile f = corpus::load("diffusion-consistent");
  f.hint.degrees = {0};
  SolveResult r = solve_multipliers(f.problem, ansatz_from_hint(f.problem, Method::consistent, f.hint), Method::consistent);
  REQUIRE(r.classified.size() == 2);
  CHECK(r.classified[0].cls == MultiplierClass::nontrivial);
  CHECK(r.classified[0].multiplier.slots[0][0] == Poly(1));
  CHECK(r.classified[0].multiplier.slots[0][1].is_zero());
  CHECK(r.classified[1].cls == MultiplierClass::eps_shift);
  CHECK(r.classified[1].shift_of == std::optional<std::size_t>(0));
}

TEST_CASE("u_t + u^2 has no constant multiplier") {
  ProblemFile f = toy(R"(independent = t, x
dependent = u
equation = u_t + u^2 + eps*u_x
leading = u_t
hint.mult-deps = t, x
hint.mult-degree = 0
)");
  // oracle: E_u(c*(u_t + u^2)) = 2*c*u, zero only for c = 0
  Poly e = euler(f.problem.equations[0], EulerKind::unexpanded(0));
  CHECK_FALSE(e.is_zero());
  SolveResult r = solve_multipliers(f.problem, ansatz_from_hint(f.problem, Method::consistent, f.hint), Method::consistent);
  CHECK(r.basis.empty());
  CHECK(r.classified.empty());
}

TEST_CASE("Approach B on diffusion: every basis element is non-trivial") {
  ProblemFile f = corpus::load("diffusion-approach-b");
  SolveResult r = solve_multipliers(f.problem, ansatz_from_hint(f.problem, Method::approach_b, f.hint), Method::approach_b);
  CHECK(r.basis.size() == 4);
  CHECK(count_class(r, MultiplierClass::nontrivial) == 4);
}

TEST_CASE("KdV multiplier with vanishing leading slot is flagged trivial") {
  ProblemFile f = corpus::load("kdv-burgers");
  SolveResult r = solve_multipliers(f.problem, ansatz_from_hint(f.problem, Method::consistent, f.hint), Method::consistent);
  CHECK(count_class(r, MultiplierClass::nontrivial) == 3);
  CHECK(count_class(r, MultiplierClass::trivial) == 1);
  CHECK(count_class(r, MultiplierClass::eps_shift) == 3);
  // classification order: non-trivial, trivial, shifts
  for (std::size_t i = 1; i < r.classified.size(); ++i)
    CHECK(static_cast<int>(r.classified[i - 1].cls) <= static_cast<int>(r.classified[i].cls));
}

TEST_CASE("coordinates place corpus multipliers inside the ansatz") {
  ProblemFile f = corpus::load("diffusion-consistent");
  AnsatzSpec spec = ansatz_from_hint(f.problem, Method::consistent, f.hint);
  Ansatz a = build_ansatz(f.problem, spec, Method::consistent);
  LinearSystem sys = determining_system(f.problem, a);
  for (const ExpectedLaw& e : f.expected) {
    auto c = coordinates(a, e.law.multipliers);
    REQUIRE(c.has_value());
    CHECK(instantiate(a, *c) == e.law.multipliers);
    CHECK(satisfies(sys, *c));
    auto cs = coordinates(a, e.law.multipliers.eps_shift());
    REQUIRE(cs.has_value());
    CHECK(satisfies(sys, *cs));
  }
  // a non-multiplier inside the ansatz fails the system
  MultiplierSet bad = f.expected[0].law.multipliers;
  bad.slots[0][0] = parse_poly("t", *f.problem.symbols);
  auto cb = coordinates(a, bad);
  REQUIRE(cb.has_value());
  CHECK_FALSE(satisfies(sys, *cb));
}

TEST_CASE("eps shift and scaling of multiplier sets") {
  ProblemFile f = corpus::load("diffusion-consistent");
  const MultiplierSet& m = f.expected[1].law.multipliers;
  MultiplierSet s = m.eps_shift();
  CHECK(s.slots[0][0].is_zero());
  CHECK(s.slots[0][1] == m.slots[0][0]);
  CHECK(s.leading_slot_zero());
  CHECK(m.scaled(Rational(3)).slots[0][1] == m.slots[0][1].scaled(Rational(3)));
  CHECK(m.eps_shift().eps_shift().is_zero());
}

TEST_CASE("user multiplier expressions split into method slots") {
  ProblemFile f = corpus::load("wave");
  auto& s = *f.problem.symbols;
  // consistent: unexpanded input is eps-expanded
  auto ex = multiplier_slots(f.problem, Method::consistent, parse_poly("u_t", s));
  REQUIRE(ex.size() == 2);
  CHECK(ex[0] == parse_poly("u[0]_t", s));
  CHECK(ex[1] == parse_poly("u[1]_t", s));
  auto slots = multiplier_slots(f.problem, Method::consistent, parse_poly("u[0]_t + eps*c*u[1]_t", s));
  REQUIRE(slots.size() == 2);
  CHECK(slots[1] == parse_poly("c*u[1]_t", s));
  CHECK_THROWS_AS(multiplier_slots(f.problem, Method::approach_a, parse_poly("u[0]_t", s)), InputError);
  CHECK_THROWS_AS(multiplier_slots(f.problem, Method::consistent, parse_poly("eps^2*u[0]", s)), InputError);
}
