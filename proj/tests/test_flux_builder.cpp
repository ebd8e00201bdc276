#include <doctest.h>

#include "aclaw/corpus.hpp"
#include "aclaw/error.hpp"
#include "aclaw/flux.hpp"
#include "aclaw/parse.hpp"
#include "support/gen.hpp"

using namespace aclaw;
using aclaw::testing::Gen;
using aclaw::testing::GenOptions;

namespace {

Poly P(const std::string& s, const SymbolTable& t) { return parse_poly(s, t); }

ConservationLaw with_fluxes(const ConservationLaw& law, std::vector<std::vector<Poly>> fluxes) {
  ConservationLaw out = law;
  out.fluxes = std::move(fluxes);
  return out;
}

}  // namespace

TEST_CASE("divergence inversion recovers random divergences") {
  Gen g(31);
  GenOptions o;
  o.order = 1;
  o.functions = false;
  o.max_terms = 3;
  int solved = 0;
  for (int i = 0; i < 60; ++i) {
    Poly ft = g.poly(o), fx = g.poly(o);
    Poly div = total_derivative(ft, 0) + total_derivative(fx, 1);
    auto phi = invert_divergence(div, 2);
    REQUIRE(phi.has_value());
    // the recovered pair may differ by a null divergence, never in its divergence
    CHECK(total_derivative((*phi)[0], 0) + total_derivative((*phi)[1], 1) == div);
    solved += !div.is_zero();
  }
  CHECK(solved > 40);
}

TEST_CASE("divergence inversion fails on non-divergences") {
  auto s = testing::make_symbols();
  // E_u(u^2) = 2u != 0
  CHECK_FALSE(invert_divergence(P("u[0]^2", *s), 2).has_value());
}

TEST_CASE("reconstruct gives identity-verified diffusion fluxes") {
  ProblemFile f = corpus::load("diffusion-consistent");
  for (const ExpectedLaw& e : f.expected) {
    ConservationLaw law = reconstruct(f.problem, e.law.multipliers);
    CHECK(law.status == LawStatus::identity_verified);
    CHECK(residual(f.problem, law).is_zero());
    Equivalence eq = equivalent(f.problem, law, e.law);
    CHECK(eq.equivalent);
    CHECK(eq.conclusive);
  }
}

TEST_CASE("reconstruct throws for a non-multiplier") {
  ProblemFile f = corpus::load("diffusion-consistent");
  MultiplierSet m = f.expected[0].law.multipliers;
  m.slots[0][0] = P("u[0]", *f.problem.symbols);
  CHECK_THROWS_AS(reconstruct(f.problem, m), ReconstructionFailed);
}

TEST_CASE("equivalence: null divergences, on-solution terms and genuine differences") {
  ProblemFile f = corpus::load("diffusion-consistent");
  const SymbolTable& s = *f.problem.symbols;
  const ConservationLaw& law = f.expected[0].law;  // Lambda = 1

  SUBCASE("adding a curl (D_x A, -D_t A) keeps the law") {
    Poly a = P("x*u[0]^2*u[0]_x", s);
    auto fl = law.fluxes;
    fl[0][0] += total_derivative(a, 1);
    fl[1][0] -= total_derivative(a, 0);
    Equivalence e = equivalent(f.problem, law, with_fluxes(law, fl));
    CHECK(e.equivalent);
  }
  SUBCASE("adding a multiple of the equation to the density vanishes on solutions") {
    auto fl = law.fluxes;
    // Delta_(0) = u0_t - D_x(u0^-2 u0_x)
    fl[0][0] += P("u[0]_t", s) - total_derivative(P("u[0]^-2*u[0]_x", s), 1);
    Equivalence e = equivalent(f.problem, law, with_fluxes(law, fl));
    CHECK(e.equivalent);
  }
  SUBCASE("a different conserved density is not equivalent") {
    const ConservationLaw& other = f.expected[1].law;
    ConservationLaw mixed = with_fluxes(law, other.fluxes);
    Equivalence e = equivalent(f.problem, law, mixed);
    CHECK_FALSE(e.equivalent);
    CHECK(e.conclusive);
  }
  SUBCASE("a flux change that is not conserved is rejected") {
    auto fl = law.fluxes;
    fl[1][0] += P("u[0]", s);
    Equivalence e = equivalent(f.problem, law, with_fluxes(law, fl));
    CHECK_FALSE(e.equivalent);
  }
}

TEST_CASE("Approach A laws expand into consistent laws") {
  ProblemFile a = corpus::load("diffusion-approach-a");
  REQUIRE(a.expected.size() >= 2);
  for (std::size_t i = 0; i < 2; ++i) {
    ConservationLaw ex = expand_law(a.problem, a.expected[i].law);
    CHECK(ex.multipliers.method == Method::consistent);
    CHECK(residual(a.problem, ex).is_zero());
  }
}

TEST_CASE("flux slot count follows the method") {
  ProblemFile f = corpus::load("diffusion-consistent");
  CHECK(flux_slots(f.problem, Method::consistent) == 2);
  CHECK(flux_slots(f.problem, Method::approach_a) == 2);
  CHECK(flux_slots(f.problem, Method::approach_b) == 1);
}
