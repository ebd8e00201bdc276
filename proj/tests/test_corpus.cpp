#include <doctest.h>

#include <algorithm>
#include <string>

#include "aclaw/corpus.hpp"
#include "aclaw/error.hpp"
#include "aclaw/jet.hpp"
#include "aclaw/multiplier.hpp"
#include "aclaw/parse.hpp"

using namespace aclaw;

namespace {

Poly P(const std::string& s, const SymbolTable& t) { return parse_poly(s, t); }

const ExpectedLaw& law(const ProblemFile& f, int index) {
  for (const ExpectedLaw& e : f.expected)
    if (e.index == index) return e;
  throw InputError("missing law");
}

}  // namespace

TEST_CASE("corpus lists the six problems in every method variant") {
  const std::vector<std::string> want{"diffusion-approach-a", "diffusion-approach-b", "diffusion-consistent",
                                      "kaup-newell", "kdv-burgers", "nls2", "nls3", "wave"};
  CHECK(corpus::ids() == want);
  CHECK_THROWS_AS(corpus::load("no-such-entry"), InputError);
}

TEST_CASE("published multipliers load as expected") {
  ProblemFile d = corpus::load("diffusion-consistent");
  const SymbolTable& ds = *d.problem.symbols;
  CHECK(law(d, 1).law.multipliers.slots[0][0] == Poly(1));
  CHECK(law(d, 2).law.multipliers.slots[0][0] == P("x", ds));
  CHECK(law(d, 2).law.multipliers.slots[0][1] == P("t + x^2/2", ds));

  ProblemFile n = corpus::load("nls2");
  const SymbolTable& ns = *n.problem.symbols;
  const auto& m3 = law(n, 3).law.multipliers;
  CHECK(m3.joined(0) == P("v[0] + eps*v[1]", ns));
  CHECK(m3.joined(1) == P("-u[0] - eps*u[1]", ns));

  ProblemFile k = corpus::load("kaup-newell");
  CHECK(k.expected.size() == 6);
  const auto& m5 = law(k, 5).law.multipliers;
  CHECK(m5.joined(0) == Poly(1));
  CHECK(m5.joined(1).is_zero());
}

TEST_CASE("every corpus entry declares its eps-shift family") {
  for (const std::string& id : corpus::ids()) {
    ProblemFile f = corpus::load(id);
    CAPTURE(id);
    if (f.method == Method::approach_b) {
      CHECK(f.shift_family.empty());
    } else {
      // eps * Lambda vanishes at this order exactly when the leading slot does
      for (const ExpectedLaw& e : f.expected) {
        const bool listed = std::find(f.shift_family.begin(), f.shift_family.end(), e.index) != f.shift_family.end();
        CHECK(listed == !e.law.multipliers.leading_slot_zero());
      }
    }
  }
}

TEST_CASE("audit: diffusion entries are clean") {
  for (const char* id : {"diffusion-consistent", "diffusion-approach-a", "diffusion-approach-b"}) {
    corpus::EntryAudit a = corpus::audit_entry(corpus::load(id), 5);
    CAPTURE(id);
    CHECK(a.clean());
    for (const auto& l : a.laws) CHECK(l.status == LawStatus::identity_verified);
  }
}

TEST_CASE("audit: every erratum is documented and carries a verified correction") {
  for (const corpus::EntryAudit& a : corpus::audit(5)) {
    CAPTURE(a.id);
    CHECK(a.justified());
    for (const auto& l : a.laws) {
      CAPTURE(l.name);
      CHECK(l.euler.passed());
      if (l.erratum()) {
        CHECK_FALSE(l.documented.empty());
        CHECK(l.correction.found);
      }
    }
  }
}

TEST_CASE("audit: a corrupted fixture is flagged, not accepted") {
  std::string text(corpus::source("diffusion-consistent"));
  const std::string from = "flux.1.t = u[0] + eps*u[1]";
  auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  text.replace(pos, from.size(), "flux.1.t = u[0] + eps*u[1]^2");
  ProblemFile f = parse_problem_file(text, "corrupt.prob");
  corpus::EntryAudit a = corpus::audit_entry(f, 5);
  CHECK_FALSE(a.clean());
  CHECK_FALSE(a.justified());
  CHECK(a.laws[0].erratum());
  CHECK(a.laws[0].status == LawStatus::unverified);
}

TEST_CASE("diagnosis finds the scale of a rescaled flux") {
  ProblemFile f = corpus::load("diffusion-consistent");
  ConservationLaw l = f.expected[1].law;
  l.multipliers = l.multipliers.scaled(Rational(-2));
  corpus::FluxCorrection c = corpus::diagnose(f.problem, l);
  REQUIRE(c.found);
  CHECK(c.scale == Rational(-1, 2));
  CHECK(c.pure_scale());
}

TEST_CASE("audit output is stable under re-runs") {
  auto a = corpus::audit_entry(corpus::load("kdv-burgers"), 5);
  auto b = corpus::audit_entry(corpus::load("kdv-burgers"), 5);
  REQUIRE(a.laws.size() == b.laws.size());
  for (std::size_t i = 0; i < a.laws.size(); ++i) {
    CHECK(a.laws[i].status == b.laws[i].status);
    CHECK(a.laws[i].correction.scale == b.laws[i].correction.scale);
    CHECK(a.laws[i].correction.patch == b.laws[i].correction.patch);
  }
}

TEST_CASE("NLS3: multipliers with third-order derivatives are all trivial") {
  ProblemFile f = corpus::load("nls3");
  f.hint.generators = {"u", "v", "u_x", "v_x", "u_xx", "v_xx", "u_xxx", "v_xxx"};
  f.hint.degrees = {3};
  SolveResult r = solve_multipliers(f.problem, ansatz_from_hint(f.problem, f.method, f.hint), f.method);
  std::size_t third = 0;
  for (const ClassifiedMultiplier& c : r.classified) {
    int order = 0;
    for (int nu = 0; nu < 2; ++nu) order = std::max(order, max_derivative_order(c.multiplier.joined(nu)));
    if (order < 3) continue;
    ++third;
    CHECK(c.cls != MultiplierClass::nontrivial);
    CHECK(c.multiplier.leading_slot_zero());
  }
  CHECK(third >= 1);
}
