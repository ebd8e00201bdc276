#include "cli.hpp"

#include <fstream>
#include <memory>
#include <sstream>

#include "aclaw/corpus.hpp"
#include "aclaw/error.hpp"
#include "aclaw/flux.hpp"
#include "aclaw/jet.hpp"
#include "aclaw/parse.hpp"
#include "aclaw/print.hpp"
#include "aclaw/problem_file.hpp"
#include "aclaw/report.hpp"

namespace aclaw::cli {

namespace {

std::string command_name(Command c) {
  switch (c) {
    case Command::solve:
      return "solve";
    case Command::verify:
      return "verify";
    case Command::expand:
      return "expand";
    case Command::compare:
      return "compare";
    case Command::audit:
      return "audit";
  }
  return "solve";
}

ProblemFile load_input(const std::string& input) {
  if (input.rfind("corpus:", 0) == 0) return corpus::load(input.substr(7));
  return load_problem_file(input);
}

ProblemFile load_for_solver(const RunConfig& cfg) {
  ProblemFile f = load_input(cfg.input);
  if (cfg.order) {
    if (*cfg.order < 1) throw InputError("--order must be at least 1");
    f.problem.order = *cfg.order;
  }
  if (cfg.mult_deps) f.hint.generators = *cfg.mult_deps;
  if (cfg.mult_degree) f.hint.degrees = *cfg.mult_degree;
  if (cfg.laurent) f.hint.laurent = *cfg.laurent;
  if (cfg.flux_degree) f.hint.flux_degree = *cfg.flux_degree;
  for (int d : f.hint.degrees)
    if (d < 0) throw InputError("degree bounds must be non-negative");
  if (f.hint.generators.empty()) throw InputError("no multiplier generators: give --mult-deps or hint.mult-deps");
  return f;
}

Json header(const RunConfig& cfg) {
  Json j;
  j["tool"] = "aclaw";
  j["schema"] = kReportSchema;
  j["command"] = command_name(cfg.command);
  return j;
}

Json problem_json(const ProblemFile& f) {
  const SymbolTable& s = *f.problem.symbols;
  Json j;
  j["id"] = f.id;
  j["independent"] = s.independents();
  j["dependent"] = s.dependents();
  j["parameters"] = s.parameters();
  Json eqs = Json::array();
  for (const Poly& e : f.problem.equations) eqs.push_back(to_json(e, s));
  j["equations"] = std::move(eqs);
  j["order"] = f.problem.order;
  return j;
}

std::string problem_text(const ProblemFile& f) {
  const SymbolTable& s = *f.problem.symbols;
  std::string out = "problem " + (f.id.empty() ? std::string("(unnamed)") : f.id);
  if (!f.title.empty()) out += ": " + f.title;
  out += "\n";
  for (const Poly& e : f.problem.equations) out += "  Δ = " + print(e, s, PrintStyle::human) + "\n";
  out += "  order p = " + std::to_string(f.problem.order) + "\n";
  return out;
}

struct LawOutcome {
  std::optional<ConservationLaw> law;
  std::string error;
  VerificationReport identity;
  VerificationReport spot;
  bool ok() const { return law && identity.passed() && spot.passed(); }
};

struct MethodRun {
  Method method;
  SolveResult solve;
  std::vector<LawOutcome> laws;  // parallel to solve.classified
};

MethodRun run_method(const ProblemFile& f, Method method, const RunConfig& cfg) {
  MethodRun r{method, solve_multipliers(f.problem, ansatz_from_hint(f.problem, method, f.hint), method), {}};
  FluxSpec spec;
  spec.degree = f.hint.flux_degree;
  for (const ClassifiedMultiplier& c : r.solve.classified) {
    LawOutcome o;
    try {
      if (c.shift_of && method != Method::approach_b && r.laws.at(*c.shift_of).law &&
          c.multiplier == r.laws[*c.shift_of].law->multipliers.eps_shift()) {
        o.law = shifted_law(*r.laws[*c.shift_of].law);
      } else {
        o.law = reconstruct(f.problem, c.multiplier, spec);
      }
      o.identity = verify_identity(f.problem, *o.law);
      o.law->status = o.identity.passed() ? LawStatus::identity_verified : LawStatus::unverified;
      o.spot = spot_check(f.problem, *o.law, cfg.trials, cfg.seed);
    } catch (const ReconstructionFailed& e) {
      o.law.reset();
      o.error = e.what();
    }
    r.laws.push_back(std::move(o));
  }
  return r;
}

int method_exit(const MethodRun& r) {
  int code = kOk;
  for (const LawOutcome& o : r.laws) {
    if (!o.law) return kIncomplete;
    if (!o.ok()) code = kVerificationFailed;
  }
  return code;
}

Json method_json(const MethodRun& r, const SymbolTable& s) {
  Json j;
  j["method"] = to_string(r.method);
  j["ansatz"] = {{"unknowns", r.solve.ansatz.unknowns.size()}, {"basis", r.solve.basis.size()}};
  Json laws = Json::array();
  for (std::size_t i = 0; i < r.solve.classified.size(); ++i) {
    Json e = to_json(r.solve.classified[i], s);
    const LawOutcome& o = r.laws[i];
    if (o.law) {
      e["law"] = to_json(*o.law, s);
      e["identity"] = to_json(o.identity, s);
      e["spot"] = to_json(o.spot, s);
    } else {
      e["reconstruction_error"] = o.error;
    }
    laws.push_back(std::move(e));
  }
  j["multipliers"] = std::move(laws);
  return j;
}

std::string method_text(const MethodRun& r, const SymbolTable& s) {
  std::ostringstream os;
  os << "method " << to_string(r.method) << ": " << r.solve.basis.size() << " basis multiplier(s) from "
     << r.solve.ansatz.unknowns.size() << " unknowns\n";
  for (std::size_t i = 0; i < r.solve.classified.size(); ++i) {
    const ClassifiedMultiplier& c = r.solve.classified[i];
    os << "  #" << i + 1 << " " << to_string(c.cls);
    if (c.shift_of) os << " (eps * #" << *c.shift_of + 1 << ")";
    if (c.stable) os << " stable";
    os << "\n";
    const LawOutcome& o = r.laws[i];
    if (o.law) {
      os << format_law(*o.law, s, "    ");
      os << "    spot check: " << (o.spot.passed() ? "pass" : "FAIL") << "\n";
    } else {
      os << format_multiplier(c.multiplier, s, "    ");
      os << "    reconstruction failed: " << o.error << "\n";
    }
  }
  return os.str();
}

// c with a = c * b, if any.
std::optional<Rational> proportion(const MultiplierSet& a, const MultiplierSet& b) {
  std::optional<Rational> c;
  for (int nu = 0; nu < a.equations() && nu < b.equations(); ++nu)
    for (std::size_t k = 0; k < a.slots[static_cast<std::size_t>(nu)].size(); ++k) {
      const Poly& pa = a.slots[static_cast<std::size_t>(nu)][k];
      const Poly& pb = b.slots[static_cast<std::size_t>(nu)][k];
      if (pb.is_zero()) {
        if (!pa.is_zero()) return std::nullopt;
        continue;
      }
      if (!c) c = pa.coefficient(pb.begin()->mono) / pb.begin()->coef;
      if (!(pa == pb.scaled(*c))) return std::nullopt;
    }
  if (c && c->is_zero()) return std::nullopt;
  return c;
}

ConservationLaw scaled_law(const ConservationLaw& law, const Rational& c) {
  ConservationLaw out = law;
  out.multipliers = law.multipliers.scaled(c);
  for (auto& dir : out.fluxes)
    for (Poly& p : dir) p = p.scaled(c);
  return out;
}

void write_output(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) return;
  std::ofstream os(cfg.out, std::ios::binary);
  if (!os) throw InputError("cannot write '" + cfg.out + "'");
  os << text;
}

RunResult finish(const RunConfig& cfg, int code, Json doc, const std::string& text) {
  RunResult r;
  r.exit_code = code;
  if (cfg.format == Format::json) {
    doc["exit_code"] = code;
    r.output = dump(doc);
  } else {
    r.output = text;
  }
  return r;
}

}  // namespace

RunResult run_solve(const RunConfig& cfg) {
  ProblemFile f = load_for_solver(cfg);
  const Method method = cfg.method.value_or(f.method);
  MethodRun r = run_method(f, method, cfg);
  const SymbolTable& s = *f.problem.symbols;
  Json doc = header(cfg);
  doc["problem"] = problem_json(f);
  doc["result"] = method_json(r, s);
  return finish(cfg, method_exit(r), std::move(doc), problem_text(f) + method_text(r, s));
}

RunResult run_compare(const RunConfig& cfg) {
  ProblemFile f = load_for_solver(cfg);
  const SymbolTable& s = *f.problem.symbols;
  std::vector<MethodRun> runs;
  for (Method m : {Method::consistent, Method::approach_a, Method::approach_b}) runs.push_back(run_method(f, m, cfg));
  int code = kOk;
  for (const MethodRun& r : runs) code = std::max(code, method_exit(r));

  // consistent laws that are eps-expansions of Approach A laws
  Json notes = Json::array();
  std::string note_text;
  const MethodRun& cons = runs[0];
  const MethodRun& a = runs[1];
  for (std::size_t j = 0; j < a.laws.size(); ++j) {
    if (!a.laws[j].law) continue;
    ConservationLaw expanded = expand_law(f.problem, *a.laws[j].law);
    for (std::size_t i = 0; i < cons.laws.size(); ++i) {
      if (!cons.laws[i].law) continue;
      auto c = proportion(cons.laws[i].law->multipliers, expanded.multipliers);
      if (!c) continue;
      Equivalence e = equivalent(f.problem, *cons.laws[i].law, scaled_law(expanded, *c));
      notes.push_back({{"consistent", i + 1}, {"approach_a", j + 1}, {"scale", c->to_string()}, {"fluxes", to_json(e)}});
      note_text += "  consistent #" + std::to_string(i + 1) + " = " + c->to_string() + " * expansion of Approach A #" +
                   std::to_string(j + 1) + "; fluxes " + (e.equivalent ? "equivalent" : "not shown equivalent") +
                   " (" + e.reason + ")\n";
    }
  }

  Json doc = header(cfg);
  doc["problem"] = problem_json(f);
  Json blocks = Json::array();
  std::string text = problem_text(f);
  for (const MethodRun& r : runs) {
    blocks.push_back(method_json(r, s));
    text += method_text(r, s);
  }
  doc["methods"] = std::move(blocks);
  doc["expansions"] = std::move(notes);
  text += "expansions:\n" + (note_text.empty() ? std::string("  none\n") : note_text);
  return finish(cfg, code, std::move(doc), text);
}

RunResult run_verify(const RunConfig& cfg) {
  ProblemFile f = load_input(cfg.input);
  if (f.expected.empty()) throw InputError("the problem file carries no multiplier.N entries to verify");
  corpus::EntryAudit a = corpus::audit_entry(f, cfg.trials, cfg.seed);
  int code = kOk;
  for (const auto& l : a.laws)
    if (!l.euler.passed() || (l.has_fluxes && l.status == LawStatus::unverified) ||
        (l.status == LawStatus::identity_verified && !l.spot.passed()))
      code = kVerificationFailed;
  const SymbolTable& s = *f.problem.symbols;
  Json doc = header(cfg);
  doc["problem"] = problem_json(f);
  doc["audit"] = to_json(a, s);
  return finish(cfg, code, std::move(doc), problem_text(f) + format_audit(a, s));
}

RunResult run_expand(const RunConfig& cfg) {
  std::shared_ptr<const SymbolTable> symbols;
  int p = cfg.order.value_or(1);
  if (!cfg.problem.empty()) {
    ProblemFile f = load_input(cfg.problem);
    symbols = f.problem.symbols;
    if (!cfg.order) p = f.problem.order;
  } else {
    auto t = std::make_shared<SymbolTable>();
    for (const auto& n : cfg.independent) t->add_independent(n);
    for (const auto& n : cfg.dependent) t->add_dependent(n);
    for (const auto& n : cfg.parameters) t->add_parameter(n);
    for (const auto& decl : cfg.functions) {
      const auto open = decl.find('(');
      if (open == std::string::npos || decl.back() != ')') throw InputError("function declaration must look like f(u)");
      auto dep = t->find_dependent(decl.substr(open + 1, decl.size() - open - 2));
      if (!dep) throw InputError("function argument must be a declared dependent variable");
      t->add_function(decl.substr(0, open), *dep);
    }
    symbols = std::move(t);
  }
  if (p < 1) throw InputError("--order must be at least 1");
  Poly e = parse_poly(cfg.input, *symbols);
  EpsilonSeries series = expand_epsilon(e, p);
  Json doc = header(cfg);
  doc["input"] = to_json(e, *symbols);
  doc["order"] = p;
  doc["value"] = to_json(series.join(), *symbols);
  doc["slots"] = slots_json(series.slots, *symbols);
  std::string text = print(series.join(), *symbols, PrintStyle::machine) + "\n" + format_slots(series.slots, *symbols, "  ");
  return finish(cfg, kOk, std::move(doc), text);
}

RunResult run_audit(const RunConfig& cfg) {
  std::vector<std::string> ids = cfg.ids.empty() ? corpus::ids() : cfg.ids;
  Json doc = header(cfg);
  Json entries = Json::array();
  std::string text;
  bool justified = true;
  for (const std::string& id : ids) {
    ProblemFile f = corpus::load(id);
    corpus::EntryAudit a = corpus::audit_entry(f, cfg.trials, cfg.seed);
    justified &= a.justified();
    entries.push_back(to_json(a, *f.problem.symbols));
    text += format_audit(a, *f.problem.symbols);
  }
  doc["entries"] = std::move(entries);
  return finish(cfg, justified ? kOk : kVerificationFailed, std::move(doc), text);
}

RunResult run(const RunConfig& cfg) {
  RunResult r;
  try {
    switch (cfg.command) {
      case Command::solve:
        r = run_solve(cfg);
        break;
      case Command::verify:
        r = run_verify(cfg);
        break;
      case Command::expand:
        r = run_expand(cfg);
        break;
      case Command::compare:
        r = run_compare(cfg);
        break;
      case Command::audit:
        r = run_audit(cfg);
        break;
    }
    write_output(cfg, r.output);
  } catch (const Error& e) {
    r.exit_code = kInputError;
    if (cfg.format == Format::json) {
      Json doc = header(cfg);
      doc["error"] = e.what();
      doc["exit_code"] = kInputError;
      r.output = dump(doc);
    } else {
      r.output = std::string("error: ") + e.what() + "\n";
    }
  }
  return r;
}

}  // namespace aclaw::cli
