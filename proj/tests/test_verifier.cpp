#include <doctest.h>

#include "aclaw/corpus.hpp"
#include "aclaw/parse.hpp"
#include "aclaw/verify.hpp"

using namespace aclaw;

namespace {

Poly P(const std::string& s, const SymbolTable& t) { return parse_poly(s, t); }

struct Fixture {
  ProblemFile file;
  std::vector<ConservationLaw> laws;  // published laws that pass the identity
};

const std::vector<Fixture>& verified_corpus() {
  static const std::vector<Fixture> all = [] {
    std::vector<Fixture> out;
    for (const std::string& id : corpus::ids()) {
      Fixture fx{corpus::load(id), {}};
      for (const ExpectedLaw& e : fx.file.expected)
        if (e.has_fluxes() && verify_identity(fx.file.problem, e.law).passed()) fx.laws.push_back(e.law);
      out.push_back(std::move(fx));
    }
    return out;
  }();
  return all;
}

}  // namespace

TEST_CASE("identity check passes on a published law and reports the residual of a broken one") {
  ProblemFile f = corpus::load("diffusion-consistent");
  ConservationLaw law = f.expected[0].law;
  CHECK(verify_identity(f.problem, law).passed());
  law.fluxes[0][1] += P("u[0]", *f.problem.symbols);
  VerificationReport r = verify_identity(f.problem, law);
  REQUIRE_FALSE(r.passed());
  CHECK(r.checks[0].passed);
  CHECK(r.checks[1].residual == P("-u[0]_t", *f.problem.symbols));
}

TEST_CASE("Euler check names the failing slot") {
  ProblemFile f = corpus::load("diffusion-consistent");
  MultiplierSet m = f.expected[0].law.multipliers;
  CHECK(verify_euler(f.problem, m).passed());
  m.slots[0][1] = P("x^2", *f.problem.symbols);
  VerificationReport r = verify_euler(f.problem, m);
  CHECK_FALSE(r.passed());
  bool named = false;
  for (const auto& c : r.checks) named |= !c.passed && c.name == "euler[u,1]" && !c.residual.is_zero();
  CHECK(named);
}

TEST_CASE("on-solution check accepts fluxes conserved only on solutions") {
  ProblemFile f = corpus::load("diffusion-consistent");
  const SymbolTable& s = *f.problem.symbols;
  ConservationLaw law = f.expected[0].law;
  law.fluxes[0][0] += P("x*(u[0]_t - u[0]^-2*u[0]_xx + 2*u[0]^-3*u[0]_x^2)", s);
  CHECK_FALSE(verify_identity(f.problem, law).passed());
  CHECK(verify_on_solutions(f.problem, law).passed());
  law.fluxes[0][0] += P("u[0]^2", s);
  CHECK_FALSE(verify_on_solutions(f.problem, law).passed());
}

TEST_CASE("spot check is reproducible and finds a witness for a mutated law") {
  ProblemFile f = corpus::load("wave");
  ConservationLaw law = f.expected[2].law;
  REQUIRE(verify_identity(f.problem, law).passed());
  CHECK(spot_check(f.problem, law, 10, kDefaultSeed).passed());
  law.fluxes[1][1] += P("lambda*u[0]*u[1]_x", *f.problem.symbols);
  VerificationReport a = spot_check(f.problem, law, 10, kDefaultSeed);
  VerificationReport b = spot_check(f.problem, law, 10, kDefaultSeed);
  CHECK_FALSE(a.passed());
  REQUIRE(a.checks.size() == b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    CHECK(a.checks[i].point == b.checks[i].point);
    CHECK(a.checks[i].value == b.checks[i].value);
    if (!a.checks[i].passed) CHECK_FALSE(a.checks[i].value.is_zero());
  }
  VerificationReport c = spot_check(f.problem, law, 10, kDefaultSeed + 1);
  bool differs = false;
  for (std::size_t i = 0; i < a.checks.size(); ++i) differs |= !(a.checks[i].point == c.checks[i].point);
  CHECK(differs);
}

TEST_CASE("identity => on solutions => spot check across the corpus") {
  for (const Fixture& fx : verified_corpus()) {
    CAPTURE(fx.file.id);
    for (const ExpectedLaw& e : fx.file.expected) {
      if (!e.has_fluxes()) continue;
      const bool id = verify_identity(fx.file.problem, e.law).passed();
      const bool os = verify_on_solutions(fx.file.problem, e.law).passed();
      const bool sp = spot_check(fx.file.problem, e.law, 5, kDefaultSeed).passed();
      if (id) CHECK(os);
      if (id && os) CHECK(sp);
    }
  }
}

TEST_CASE("spot check gives exact zeros on every verified corpus law") {
  std::size_t n = 0;
  for (const Fixture& fx : verified_corpus())
    for (const ConservationLaw& law : fx.laws) {
      CAPTURE(fx.file.id);
      VerificationReport r = spot_check(fx.file.problem, law, 8, kDefaultSeed);
      CHECK(r.passed());
      ++n;
    }
  CHECK(n >= 15);
}

TEST_CASE("mutating any single flux coefficient of a verified law is detected") {
  std::size_t mutations = 0, detected = 0;
  for (const Fixture& fx : verified_corpus())
    for (const ConservationLaw& law : fx.laws)
      for (std::size_t i = 0; i < law.fluxes.size(); ++i)
        for (std::size_t k = 0; k < law.fluxes[i].size(); ++k)
          for (const Term& t : law.fluxes[i][k]) {
            ConservationLaw m = law;
            m.fluxes[i][k] += Poly::monomial(t.mono, Rational(1));
            ++mutations;
            detected += !verify_identity(fx.file.problem, m).passed();
          }
  CHECK(mutations > 200);
  CHECK(detected == mutations);
}
