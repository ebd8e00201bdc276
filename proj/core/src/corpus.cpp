#include "aclaw/corpus.hpp"

#include <algorithm>

#include "aclaw/error.hpp"

namespace aclaw {

namespace detail {
const std::vector<std::pair<std::string_view, std::string_view>>& embedded_corpus();
}

namespace corpus {

std::vector<std::string> ids() {
  std::vector<std::string> out;
  for (const auto& [id, text] : detail::embedded_corpus()) out.emplace_back(id);
  std::sort(out.begin(), out.end());
  return out;
}

std::string_view source(const std::string& id) {
  for (const auto& [key, text] : detail::embedded_corpus())
    if (key == id) return text;
  throw InputError("unknown corpus entry '" + id + "'");
}

ProblemFile load(const std::string& id) {
  ProblemFile f = parse_problem_file(source(id), id + ".prob");
  if (f.id.empty()) f.id = id;
  return f;
}

bool LawAudit::erratum() const {
  return !euler.passed() || (has_fluxes && (status != LawStatus::identity_verified || !spot.passed()));
}

bool LawAudit::justified() const {
  return !erratum() || (euler.passed() && !documented.empty() && correction.found);
}

bool FluxCorrection::pure_scale() const {
  for (const auto& dir : patch)
    for (const Poly& p : dir)
      if (!p.is_zero()) return false;
  return true;
}

bool EntryAudit::justified() const {
  return std::all_of(laws.begin(), laws.end(), [](const LawAudit& l) { return l.justified(); });
}

bool EntryAudit::clean() const {
  return std::none_of(laws.begin(), laws.end(), [](const LawAudit& l) { return l.erratum(); });
}

namespace {

std::vector<EulerKind> annihilators(const PdeProblem& problem, Method method) {
  std::vector<EulerKind> ops;
  for (int a = 0; a < problem.n_dependent(); ++a) {
    if (method == Method::approach_a) ops.push_back(EulerKind::unexpanded(a));
    else
      for (int j = 0; j <= problem.order; ++j) ops.push_back(EulerKind::per_order(a, j));
  }
  return ops;
}

bool maybe_divergence(const Poly& p, const std::vector<EulerKind>& ops) {
  for (const EulerKind& e : ops)
    if (!euler(p, e).is_zero()) return false;
  return true;
}

}  // namespace

FluxCorrection diagnose(const PdeProblem& problem, const ConservationLaw& law, const FluxSpec& spec) {
  const EpsilonSeries c = contraction(problem, law.multipliers);
  const EpsilonSeries d = divergence(problem, law);
  const auto ops = annihilators(problem, law.multipliers.method);
  const int n = law.directions();
  const Rational scales[] = {Rational(1), Rational(-1), Rational(2), Rational(-2), Rational(1, 2), Rational(-1, 2)};
  auto residuals = [&](const Rational& s) {
    std::vector<Poly> res;
    for (int k = 0; k <= c.order(); ++k) res.push_back(c[k].scaled(s) - d[k]);
    return res;
  };
  for (const Rational& s : scales) {
    auto res = residuals(s);
    if (std::all_of(res.begin(), res.end(), [](const Poly& p) { return p.is_zero(); })) {
      FluxCorrection out;
      out.found = true;
      out.scale = s;
      out.patch.assign(static_cast<std::size_t>(n), std::vector<Poly>(res.size()));
      return out;
    }
  }
  // smallest patch wins; ties keep the earlier scale
  FluxCorrection best;
  std::size_t best_terms = 0;
  for (const Rational& s : scales) {
    auto res = residuals(s);
    if (!std::all_of(res.begin(), res.end(), [&](const Poly& p) { return maybe_divergence(p, ops); })) continue;
    FluxCorrection out;
    out.scale = s;
    out.patch.assign(static_cast<std::size_t>(n), std::vector<Poly>(res.size()));
    bool ok = true;
    std::size_t terms = 0;
    for (std::size_t k = 0; k < res.size() && ok; ++k) {
      auto phi = invert_divergence(res[k], n, spec);
      ok = phi.has_value();
      if (!ok) break;
      for (int i = 0; i < n; ++i) {
        terms += (*phi)[static_cast<std::size_t>(i)].size();
        out.patch[static_cast<std::size_t>(i)][k] = (*phi)[static_cast<std::size_t>(i)];
      }
    }
    if (!ok || (best.found && terms >= best_terms)) continue;
    ConservationLaw fixed = law;
    fixed.multipliers = law.multipliers.scaled(s);
    for (int i = 0; i < n; ++i)
      for (std::size_t k = 0; k < res.size(); ++k)
        fixed.fluxes[static_cast<std::size_t>(i)][k] += out.patch[static_cast<std::size_t>(i)][k];
    if (!residual(problem, fixed).is_zero()) continue;
    out.found = true;
    best = std::move(out);
    best_terms = terms;
  }
  return best;
}

namespace {

LawAudit audit_law(const PdeProblem& problem, std::string name, std::string label, std::string documented,
                   bool shifted, ConservationLaw law, int trials, std::uint64_t seed) {
  LawAudit a;
  a.name = std::move(name);
  a.label = std::move(label);
  a.shifted = shifted;
  a.documented = std::move(documented);
  a.has_fluxes = !law.fluxes.empty();
  a.euler = verify_euler(problem, law.multipliers);
  if (!a.has_fluxes) {
    a.note = a.euler.passed() ? "multiplier only" : "multiplier fails the Euler check";
    return a;
  }
  a.identity = verify_identity(problem, law);
  if (a.identity.passed()) {
    a.status = LawStatus::identity_verified;
  } else {
    a.on_solutions = verify_on_solutions(problem, law);
    a.status = a.on_solutions.passed() ? LawStatus::on_solution_verified : LawStatus::unverified;
  }
  a.spot = spot_check(problem, law, trials, seed);
  if (a.status == LawStatus::on_solution_verified) a.note = "fluxes conserved only on solutions";
  else if (a.status == LawStatus::unverified) a.note = "fluxes fail identity and on-solution checks";
  if (a.status != LawStatus::identity_verified && a.euler.passed()) a.correction = diagnose(problem, law);
  if (!a.euler.passed()) a.note += a.note.empty() ? "multiplier fails the Euler check" : "; multiplier fails the Euler check";
  return a;
}

}  // namespace

EntryAudit audit_entry(const ProblemFile& file, int trials, std::uint64_t seed) {
  EntryAudit out;
  out.id = file.id;
  for (const ExpectedLaw& e : file.expected) {
    out.laws.push_back(audit_law(file.problem, std::to_string(e.index), e.label, e.erratum, false, e.law, trials, seed));
    if (std::find(file.shift_family.begin(), file.shift_family.end(), e.index) != file.shift_family.end())
      out.laws.push_back(audit_law(file.problem, "eps*" + std::to_string(e.index), e.label, e.erratum, true, shifted_law(e.law),
                                   trials, seed));
  }
  return out;
}

std::vector<EntryAudit> audit(int trials, std::uint64_t seed) {
  std::vector<EntryAudit> out;
  for (const std::string& id : ids()) out.push_back(audit_entry(load(id), trials, seed));
  return out;
}

}  // namespace corpus

}  // namespace aclaw
