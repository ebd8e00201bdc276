// Acceptance run: one PASS/FAIL line per criterion, details indented below it.

#include <gmpxx.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "aclaw/corpus.hpp"
#include "aclaw/flux.hpp"
#include "aclaw/jet.hpp"
#include "aclaw/multiplier.hpp"
#include "aclaw/print.hpp"
#include "aclaw/verify.hpp"
#include "cli.hpp"
#include "support/gen.hpp"

using namespace aclaw;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream log;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      log << "    failed: " << what << "\n";
    }
  }
  void note(const std::string& s) { log << "    " << s << "\n"; }
};

int failures = 0;

void criterion(int n, const std::string& title, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0 && s > limit_s) o.require(false, "runtime " + std::to_string(s) + " s over " + std::to_string(limit_s) + " s");
  char head[160];
  std::snprintf(head, sizeof head, "%s criterion %d: %s (%.2f s)", o.pass ? "PASS" : "FAIL", n, title.c_str(), s);
  std::cout << head << "\n" << o.log.str() << std::flush;
  failures += !o.pass;
}

std::size_t rank(const std::vector<std::vector<Rational>>& rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  std::vector<std::vector<mpq_class>> a;
  for (const auto& r : rows) {
    std::vector<mpq_class> d;
    for (const Rational& v : r) d.push_back(v.to_mpq());
    a.push_back(std::move(d));
  }
  std::size_t rk = 0;
  for (std::size_t c = 0; c < cols && rk < a.size(); ++c) {
    std::size_t piv = rk;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[rk]);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == rk || a[i][c] == 0) continue;
      mpq_class f = a[i][c] / a[rk][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[rk][j];
    }
    ++rk;
  }
  return rk;
}

struct Solved {
  ProblemFile file;
  SolveResult result;
};

Solved solve(const std::string& id) {
  Solved s{corpus::load(id), {}};
  s.result = solve_multipliers(s.file.problem, ansatz_from_hint(s.file.problem, s.file.method, s.file.hint), s.file.method);
  return s;
}

// Published multipliers (and their eps-shifts where listed) span exactly the solver basis.
void same_span(Outcome& o, const Solved& s) {
  std::vector<std::vector<Rational>> basis, published;
  for (const MultiplierSet& m : s.result.basis) basis.push_back(*coordinates(s.result.ansatz, m));
  for (const ExpectedLaw& e : s.file.expected) {
    std::vector<MultiplierSet> ms{e.law.multipliers};
    if (s.file.method != Method::approach_b) ms.push_back(e.law.multipliers.eps_shift());
    for (const MultiplierSet& m : ms) {
      if (m.is_zero()) continue;
      auto c = coordinates(s.result.ansatz, m);
      o.require(c.has_value(), s.file.id + " law " + std::to_string(e.index) + " outside the ansatz");
      if (!c) continue;
      o.require(satisfies(s.result.system, *c), s.file.id + " law " + std::to_string(e.index) + " not a solution");
      published.push_back(*c);
    }
  }
  auto both = basis;
  both.insert(both.end(), published.begin(), published.end());
  const std::size_t rb = rank(basis), rp = rank(published), ru = rank(both);
  o.note(s.file.id + ": basis rank " + std::to_string(rb) + ", published rank " + std::to_string(rp) + ", joint rank " +
         std::to_string(ru));
  o.require(rb == ru && rp == ru, s.file.id + " spans differ");
}

const ExpectedLaw* expected_with(const ProblemFile& f, const MultiplierSet& m) {
  for (const ExpectedLaw& e : f.expected)
    if (e.law.multipliers == m) return &e;
  return nullptr;
}

std::string str(const Poly& p, const ProblemFile& f) { return print(p, *f.problem.symbols); }

Poly divergence2(const Poly& ft, const Poly& fx) { return total_derivative(ft, 0) + total_derivative(fx, 1); }

}  // namespace

int main() {
  criterion(1, "diffusion, consistent method: span{1, x + eps*(t + x^2/2)} and equivalent fluxes", 10, [](Outcome& o) {
    Solved s = solve("diffusion-consistent");
    std::size_t nontrivial = 0;
    for (const ClassifiedMultiplier& c : s.result.classified) {
      if (c.cls != MultiplierClass::nontrivial) continue;
      ++nontrivial;
      const ExpectedLaw* e = expected_with(s.file, c.multiplier);
      o.require(e != nullptr, "solver multiplier " + str(c.multiplier.joined(0), s.file) + " is not published verbatim");
      if (!e) continue;
      ConservationLaw law = reconstruct(s.file.problem, c.multiplier);
      Equivalence eq = equivalent(s.file.problem, law, e->law);
      o.note(e->label + ": reconstructed fluxes " + (eq.equivalent ? "equivalent" : "NOT equivalent") + " (" + eq.reason + ")");
      o.require(law.status == LawStatus::identity_verified && eq.equivalent, e->label + " fluxes");
    }
    o.require(nontrivial == 2, "expected 2 non-trivial multipliers, got " + std::to_string(nontrivial));
    same_span(o, s);
  });

  criterion(2, "diffusion, Approach A and Approach B multipliers", 30, [](Outcome& o) {
    cli::RunConfig cfg;
    cfg.command = cli::Command::compare;
    cfg.input = "corpus:diffusion-consistent";
    cfg.format = cli::Format::json;
    cfg.trials = 3;
    o.require(cli::run(cfg).exit_code == cli::kOk, "compare exit code");
    same_span(o, solve("diffusion-approach-a"));
    same_span(o, solve("diffusion-approach-b"));
  });

  criterion(3, "KdV-Burgers: four multipliers, solver span, equivalent fluxes", 120, [](Outcome& o) {
    Solved s = solve("kdv-burgers");
    for (const ExpectedLaw& e : s.file.expected) {
      o.require(verify_euler(s.file.problem, e.law.multipliers).passed(), e.label + " Euler check");
      auto c = coordinates(s.result.ansatz, e.law.multipliers);
      o.require(c && satisfies(s.result.system, *c), e.label + " not in the solver space");
      if (!e.has_fluxes()) continue;
      MultiplierSet m = e.law.multipliers;
      if (!e.erratum.empty()) {
        corpus::FluxCorrection fc = corpus::diagnose(s.file.problem, e.law);
        o.require(fc.found && fc.pure_scale(), e.label + " erratum without a pure rescaling");
        m = m.scaled(fc.scale);
        o.note(e.label + ": " + e.erratum + "; compared against " + fc.scale.to_string() + " * multiplier");
      }
      Equivalence eq = equivalent(s.file.problem, reconstruct(s.file.problem, m), e.law);
      o.require(eq.equivalent, e.label + " fluxes not equivalent: " + eq.reason);
    }
    same_span(o, s);
  });

  criterion(4, "wave equation: multipliers verify, published fluxes pass the identity", 0, [](Outcome& o) {
    ProblemFile f = corpus::load("wave");
    for (const ExpectedLaw& e : f.expected) {
      o.require(verify_euler(f.problem, e.law.multipliers).passed(), e.label + " Euler check");
      if (!e.has_fluxes()) continue;
      VerificationReport r = verify_identity(f.problem, e.law);
      if (r.passed()) {
        o.note(e.label + ": published fluxes verified");
        continue;
      }
      o.require(false, e.label + ": published fluxes fail the identity");
      for (const CheckResult& c : r.checks)
        if (!c.passed) o.note("  " + c.name + " residual " + str(c.residual, f));
      if (!e.erratum.empty()) o.note("  documented erratum: " + e.erratum);
    }
  });

  criterion(5, "NLS2, NLS3, Kaup-Newell: audit certified or errata justified", 300, [](Outcome& o) {
    for (const char* id : {"nls2", "nls3", "kaup-newell"}) {
      corpus::EntryAudit a = corpus::audit_entry(corpus::load(id));
      std::size_t certified = 0;
      for (const corpus::LawAudit& l : a.laws) {
        if (!l.erratum()) {
          ++certified;
          continue;
        }
        std::string what = std::string(id) + " law " + l.name + ": " + l.documented;
        if (l.correction.found)
          what += l.correction.pure_scale() ? " [corrected by scale " + l.correction.scale.to_string() + "]"
                                            : " [corrected by scale " + l.correction.scale.to_string() + " and a flux patch]";
        o.note((l.justified() ? "erratum " : "UNJUSTIFIED ") + what);
        o.require(l.justified(), std::string(id) + " law " + l.name + " unjustified");
      }
      o.note(std::string(id) + ": " + std::to_string(certified) + " of " + std::to_string(a.laws.size()) + " laws certified");
    }
  });

  criterion(6, "eps-shifts of corpus multipliers lie in the solution space", 0, [](Outcome& o) {
    std::size_t checked = 0;
    for (const std::string& id : corpus::ids()) {
      ProblemFile f = corpus::load(id);
      if (f.method == Method::approach_b) continue;
      Ansatz a = build_ansatz(f.problem, ansatz_from_hint(f.problem, f.method, f.hint), f.method);
      LinearSystem sys = determining_system(f.problem, a);
      for (const ExpectedLaw& e : f.expected) {
        auto c = coordinates(a, e.law.multipliers.eps_shift());
        if (!c) continue;
        ++checked;
        o.require(satisfies(sys, *c), id + " eps * law " + std::to_string(e.index));
      }
    }
    o.note(std::to_string(checked) + " shifted multipliers checked");
    o.require(checked > 10, "too few multipliers within the ansatz bounds");
  });

  criterion(7, "property suites (a)-(e)", 0, [](Outcome& o) {
    using testing::Gen;
    using testing::GenOptions;
    Gen g(20240531);
    // (a)
    std::size_t bad = 0;
    for (auto [order, kind] : {std::pair{1, EulerKind::consistent(0)}, std::pair{kUnexpanded, EulerKind::unexpanded(0)},
                               std::pair{1, EulerKind::per_order(0, 1)}}) {
      GenOptions opt;
      opt.order = order;
      opt.laurent = true;
      for (int i = 0; i < 200; ++i) bad += !euler(divergence2(g.poly(opt), g.poly(opt)), kind).is_zero();
    }
    o.note("(a) Euler annihilation failures: " + std::to_string(bad) + " / 600");
    o.require(bad == 0, "(a)");
    // (b)
    bad = 0;
    for (int p : {1, 2}) {
      GenOptions opt;
      opt.order = kUnexpanded;
      opt.laurent = true;
      for (int i = 0; i < 200; ++i) {
        Poly e = g.poly(opt);
        bad += !(expand_by_recursion(e, p) == expand_epsilon(e, p));
      }
    }
    o.note("(b) recursion vs substitution mismatches: " + std::to_string(bad) + " / 400");
    o.require(bad == 0, "(b)");
    // (c)
    bad = 0;
    for (int i = 0; i < 200; ++i) {
      GenOptions opt;
      opt.order = i % 2 ? kUnexpanded : 1;
      opt.laurent = true;
      Poly e = g.poly(opt);
      bad += !(total_derivative(total_derivative(e, 0), 1) == total_derivative(total_derivative(e, 1), 0));
    }
    o.note("(c) non-commuting cases: " + std::to_string(bad) + " / 200");
    o.require(bad == 0, "(c)");
    // (d), (e)
    std::size_t laws = 0, spot_bad = 0, mutations = 0, missed = 0;
    for (const std::string& id : corpus::ids()) {
      ProblemFile f = corpus::load(id);
      for (const ExpectedLaw& e : f.expected) {
        if (!e.has_fluxes() || !verify_identity(f.problem, e.law).passed()) continue;
        ++laws;
        spot_bad += !spot_check(f.problem, e.law, 8, kDefaultSeed).passed();
        for (std::size_t i = 0; i < e.law.fluxes.size(); ++i)
          for (std::size_t k = 0; k < e.law.fluxes[i].size(); ++k)
            for (const Term& t : e.law.fluxes[i][k]) {
              ConservationLaw m = e.law;
              m.fluxes[i][k] += Poly::monomial(t.mono, Rational(1));
              ++mutations;
              missed += verify_identity(f.problem, m).passed();
            }
      }
    }
    o.note("(d) spot-check failures on verified laws: " + std::to_string(spot_bad) + " / " + std::to_string(laws));
    o.note("(e) undetected mutations: " + std::to_string(missed) + " / " + std::to_string(mutations));
    o.require(laws >= 15 && spot_bad == 0, "(d)");
    o.require(mutations > 200 && missed == 0, "(e)");
  });

  criterion(8, "identical flags give byte-identical machine output", 0, [](Outcome& o) {
    struct Run {
      cli::Command c;
      std::string input;
    };
    const Run runs[] = {{cli::Command::solve, "corpus:kdv-burgers"},
                        {cli::Command::compare, "corpus:diffusion-consistent"},
                        {cli::Command::verify, "corpus:wave"},
                        {cli::Command::expand, "f(u)*u_x + u^-2"},
                        {cli::Command::audit, ""}};
    for (const Run& r : runs) {
      cli::RunConfig cfg;
      cfg.command = r.c;
      cfg.input = r.input;
      cfg.format = cli::Format::json;
      const std::string a = cli::run(cfg).output, b = cli::run(cfg).output;
      o.require(!a.empty() && a == b, "output differs for " + r.input);
    }
    o.note(std::to_string(std::size(runs)) + " commands compared");
  });

  std::cout << (failures ? "acceptance: " + std::to_string(failures) + " criteria failed\n" : "acceptance: all criteria passed\n");
  return failures ? 1 : 0;
}
