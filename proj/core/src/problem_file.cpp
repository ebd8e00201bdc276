#include "aclaw/problem_file.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "aclaw/error.hpp"
#include "aclaw/parse.hpp"

namespace aclaw {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string> name_list(std::string_view s) {
  std::vector<std::string> out;
  for (std::string& n : split(s, ','))
    if (!n.empty()) out.push_back(std::move(n));
  return out;
}

int to_int(const std::string& s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw InputError("'" + s + "' is not an integer");
  return v;
}

struct Line {
  int number;
  std::string key;
  std::string value;
};

std::vector<Line> logical_lines(std::string_view text) {
  std::vector<Line> out;
  std::istringstream in{std::string(text)};
  std::string raw, pending;
  int number = 0, start = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::string t = trim(raw);
    if (pending.empty()) start = number;
    if (!t.empty() && t.back() == '\\') {
      t.pop_back();
      pending += t + " ";
      continue;
    }
    pending += t;
    std::string full = trim(pending);
    pending.clear();
    if (full.empty()) continue;
    auto eq = full.find('=');
    if (eq == std::string::npos) throw InputError("line " + std::to_string(start) + ": expected 'key = value'");
    out.push_back({start, trim(std::string_view(full).substr(0, eq)), trim(std::string_view(full).substr(eq + 1))});
  }
  if (!trim(pending).empty()) throw InputError("line " + std::to_string(start) + ": continuation at end of file");
  return out;
}

}  // namespace

std::vector<Poly> multiplier_slots(const PdeProblem& problem, Method method, const Poly& value) {
  check_not_mixed(value);
  const int p = problem.order;
  if (value.contains([](Atom a) { return a.is_coefficient(); })) throw InputError("ansatz coefficients are not allowed here");
  if (method == Method::approach_a && has_expanded_jets(value))
    throw InputError("Approach A expressions use unexpanded dependent variables");
  if (method == Method::approach_b && has_unexpanded_jets(value))
    throw InputError("Approach B expressions use order-tagged dependent variables");
  if (method == Method::consistent && has_unexpanded_jets(value)) return expand_epsilon(value, p).slots;
  if (epsilon_degree(value) > p) throw InputError("expression has eps degree above the expansion order");
  if (method == Method::consistent && max_perturbation_order(value) > p)
    throw InputError("perturbation order above the expansion order");
  return split_by_epsilon(value, p);
}

std::vector<Poly> flux_slot_values(const PdeProblem& problem, Method method, const Poly& value) {
  if (method != Method::approach_b) return multiplier_slots(problem, method, value);
  if (has_unexpanded_jets(value)) throw InputError("Approach B expressions use order-tagged dependent variables");
  if (value.contains([](Atom a) { return a.is_epsilon(); })) throw InputError("Approach B fluxes do not contain eps");
  return {value};
}

AnsatzSpec ansatz_from_hint(const PdeProblem& problem, Method method, const AnsatzHint& hint) {
  const SymbolTable& sym = *problem.symbols;
  GeneratorSpec g;
  std::map<Atom, int> laurent;
  for (const std::string& l : hint.laurent) {
    Poly p = parse_poly(l, sym);
    if (p.size() != 1 || p.terms()[0].mono.size() != 1 || !p.terms()[0].coef.is_one())
      throw InputError("Laurent entry '" + l + "' must be an atom or an atom power");
    const Factor& f = p.terms()[0].mono[0];
    laurent[f.atom] = f.exp == 1 ? -1 : f.exp;
    if (f.exp != 1 && f.exp >= 0) throw InputError("Laurent exponent must be negative");
  }
  for (const std::string& name : hint.generators) {
    Atom a = parse_atom(name, sym);
    std::vector<Atom> expanded{a};
    if (method == Method::approach_b && a.is_jet() && !a.expanded()) {
      expanded.clear();
      for (int k = 0; k <= problem.order; ++k) expanded.push_back(a.with_order(k));
    }
    for (Atom e : expanded) {
      g.generators.push_back(e);
      auto it = laurent.find(a);
      if (it != laurent.end()) g.laurent_min[e] = it->second;
    }
  }
  for (const auto& [a, m] : laurent) {
    (void)m;
    bool found = std::any_of(hint.generators.begin(), hint.generators.end(),
                             [&](const std::string& n) { return parse_atom(n, sym) == a; });
    if (!found) throw InputError("Laurent atom is not a multiplier generator");
  }
  std::vector<int> degrees = hint.degrees.empty() ? std::vector<int>{0} : hint.degrees;
  return AnsatzSpec::uniform(problem.n_equations(), problem.order, g, degrees);
}

ConservationLaw shifted_law(const ConservationLaw& law) {
  if (law.multipliers.method == Method::approach_b) throw InputError("Approach B laws have no eps-shift");
  ConservationLaw out = law;
  out.multipliers = law.multipliers.eps_shift();
  for (auto& comp : out.fluxes) {
    for (std::size_t k = comp.size(); k-- > 1;) comp[k] = comp[k - 1];
    if (!comp.empty()) comp[0] = Poly();
  }
  return out;
}

ProblemFile parse_problem_file(std::string_view text, const std::string& source) {
  ProblemFile out;
  auto sym = std::make_shared<SymbolTable>();
  std::vector<Line> lines;
  try {
    lines = logical_lines(text);
  } catch (const InputError& e) {
    throw InputError(source + ": " + e.what());
  }

  std::vector<const Line*> deferred;
  bool have_order = false;
  for (const Line& l : lines) {
    auto fail = [&](const std::string& msg) { return InputError(source + ":" + std::to_string(l.number) + ": " + msg); };
    try {
      if (l.key == "id") {
        out.id = l.value;
      } else if (l.key == "title") {
        out.title = l.value;
      } else if (l.key == "note") {
        out.notes.push_back(l.value);
      } else if (l.key == "independent") {
        for (auto& n : name_list(l.value)) sym->add_independent(n);
      } else if (l.key == "dependent") {
        for (auto& n : name_list(l.value)) sym->add_dependent(n);
      } else if (l.key == "parameters") {
        for (auto& n : name_list(l.value)) sym->add_parameter(n);
      } else if (l.key == "functions") {
        for (auto& decl : name_list(l.value)) {
          auto open = decl.find('('), close = decl.find(')');
          if (open == std::string::npos || close != decl.size() - 1) throw fail("function declaration must look like f(u)");
          auto dep = sym->find_dependent(trim(decl.substr(open + 1, close - open - 1)));
          if (!dep) throw fail("function argument must be a declared dependent variable");
          sym->add_function(trim(decl.substr(0, open)), *dep);
        }
      } else if (l.key == "order") {
        out.problem.order = to_int(l.value);
        have_order = true;
      } else if (l.key == "method") {
        auto m = parse_method(l.value);
        if (!m) throw fail("unknown method '" + l.value + "'");
        out.method = *m;
      } else if (l.key == "hint.mult-deps") {
        out.hint.generators = name_list(l.value);
      } else if (l.key == "hint.mult-degree") {
        out.hint.degrees.clear();
        for (auto& d : name_list(l.value)) out.hint.degrees.push_back(to_int(d));
      } else if (l.key == "hint.laurent") {
        out.hint.laurent = name_list(l.value);
      } else if (l.key == "hint.flux-degree") {
        out.hint.flux_degree = to_int(l.value);
      } else if (l.key == "eps-shifts") {
        for (auto& d : name_list(l.value)) out.shift_family.push_back(to_int(d));
      } else {
        deferred.push_back(&l);
      }
    } catch (const InputError& e) {
      if (std::string(e.what()).rfind(source, 0) == 0) throw;
      throw fail(e.what());
    }
  }
  if (!have_order) out.problem.order = 1;
  out.problem.symbols = sym;

  struct Pending {
    std::string label;
    std::string erratum;
    std::vector<std::string> mult_whole;                  // per equation
    std::map<int, std::vector<std::string>> mult_slot;    // k -> per equation
    std::map<int, std::string> flux_whole;                // direction -> text
    std::map<std::pair<int, int>, std::string> flux_slot; // (direction, k) -> text
    int line = 0;
  };
  std::map<int, Pending> laws;

  for (const Line* lp : deferred) {
    const Line& l = *lp;
    auto fail = [&](const std::string& msg) { return InputError(source + ":" + std::to_string(l.number) + ": " + msg); };
    try {
      if (l.key == "equation") {
        out.problem.equations.push_back(parse_poly(l.value, *sym));
        continue;
      }
      if (l.key == "leading") {
        out.problem.leading.push_back(parse_atom(l.value, *sym));
        continue;
      }
      std::vector<std::string> parts = split(l.key, '.');
      if (parts.size() < 2) throw fail("unknown key '" + l.key + "'");
      const int n = to_int(parts[1]);
      if (n < 1) throw fail("law index must be positive");
      Pending& pend = laws[n];
      if (!pend.line) pend.line = l.number;
      if (parts[0] == "label" && parts.size() == 2) {
        pend.label = l.value;
      } else if (parts[0] == "erratum" && parts.size() == 2) {
        pend.erratum = l.value;
      } else if (parts[0] == "multiplier" && parts.size() == 2) {
        if (!pend.mult_whole.empty()) throw fail("duplicate multiplier");
        pend.mult_whole = split(l.value, ';');
      } else if (parts[0] == "multiplier" && parts.size() == 3) {
        auto& slot = pend.mult_slot[to_int(parts[2])];
        if (!slot.empty()) throw fail("duplicate multiplier slot");
        slot = split(l.value, ';');
      } else if (parts[0] == "flux" && (parts.size() == 3 || parts.size() == 4)) {
        auto dir = sym->find_independent(parts[2]);
        if (!dir) throw fail("flux direction '" + parts[2] + "' is not an independent variable");
        if (parts.size() == 3) {
          if (!pend.flux_whole.emplace(*dir, l.value).second) throw fail("duplicate flux");
        } else if (!pend.flux_slot.emplace(std::make_pair(*dir, to_int(parts[3])), l.value).second) {
          throw fail("duplicate flux slot");
        }
      } else {
        throw fail("unknown key '" + l.key + "'");
      }
    } catch (const ParseError& e) {
      throw fail(e.what());
    } catch (const InputError& e) {
      if (std::string(e.what()).rfind(source, 0) == 0) throw;
      throw fail(e.what());
    } catch (const UnsupportedForm& e) {
      throw fail(e.what());
    }
  }

  try {
    out.problem.validate();
  } catch (const Error& e) {
    throw InputError(source + ": " + e.what());
  }

  const PdeProblem& P = out.problem;
  const int q = P.n_equations();
  const int slots = flux_slots(P, out.method);
  for (auto& [n, pend] : laws) {
    auto fail = [&](const std::string& msg) {
      return InputError(source + ":" + std::to_string(pend.line) + ": law " + std::to_string(n) + ": " + msg);
    };
    try {
      ExpectedLaw e;
      e.index = n;
      e.label = pend.label;
      e.erratum = pend.erratum;
      MultiplierSet& m = e.law.multipliers;
      m.method = out.method;
      m.provenance = Provenance::corpus;
      m.slots.assign(static_cast<std::size_t>(q), std::vector<Poly>(static_cast<std::size_t>(P.order + 1)));
      if (!pend.mult_whole.empty() && !pend.mult_slot.empty()) throw fail("multiplier given both whole and by slot");
      if (pend.mult_whole.empty() && pend.mult_slot.empty()) throw fail("no multiplier given");
      if (!pend.mult_whole.empty()) {
        if (static_cast<int>(pend.mult_whole.size()) != q) throw fail("one multiplier component per equation is required");
        for (int nu = 0; nu < q; ++nu)
          m.slots[static_cast<std::size_t>(nu)] = multiplier_slots(P, out.method, parse_poly(pend.mult_whole[static_cast<std::size_t>(nu)], *sym));
      }
      for (const auto& [k, texts] : pend.mult_slot) {
        if (k < 0 || k > P.order) throw fail("multiplier slot out of range");
        if (static_cast<int>(texts.size()) != q) throw fail("one multiplier component per equation is required");
        for (int nu = 0; nu < q; ++nu) {
          Poly v = parse_poly(texts[static_cast<std::size_t>(nu)], *sym);
          if (v.contains([](Atom a) { return a.is_epsilon(); })) throw fail("slot values do not contain eps");
          m.slots[static_cast<std::size_t>(nu)][static_cast<std::size_t>(k)] = multiplier_slots(P, out.method, v)[0];
        }
      }
      const bool any_flux = !pend.flux_whole.empty() || !pend.flux_slot.empty();
      if (any_flux) {
        e.law.fluxes.assign(static_cast<std::size_t>(P.n_independent()), std::vector<Poly>(static_cast<std::size_t>(slots)));
        std::vector<bool> seen(static_cast<std::size_t>(P.n_independent()), false);
        for (const auto& [dir, text] : pend.flux_whole) {
          e.law.fluxes[static_cast<std::size_t>(dir)] = flux_slot_values(P, out.method, parse_poly(text, *sym));
          e.law.fluxes[static_cast<std::size_t>(dir)].resize(static_cast<std::size_t>(slots));
          seen[static_cast<std::size_t>(dir)] = true;
        }
        for (const auto& [key, text] : pend.flux_slot) {
          const auto [dir, k] = key;
          if (pend.flux_whole.count(dir)) throw fail("flux given both whole and by slot");
          if (k < 0 || k >= slots) throw fail("flux slot out of range");
          Poly v = parse_poly(text, *sym);
          if (v.contains([](Atom a) { return a.is_epsilon(); })) throw fail("slot values do not contain eps");
          e.law.fluxes[static_cast<std::size_t>(dir)][static_cast<std::size_t>(k)] = flux_slot_values(P, out.method, v)[0];
          seen[static_cast<std::size_t>(dir)] = true;
        }
        if (std::find(seen.begin(), seen.end(), false) != seen.end())
          throw fail("a flux component is required for every independent variable");
      }
      out.expected.push_back(std::move(e));
    } catch (const ParseError& e) {
      throw fail(e.what());
    } catch (const UnsupportedForm& e) {
      throw fail(e.what());
    } catch (const InputError& e) {
      if (std::string(e.what()).rfind(source, 0) == 0) throw;
      throw fail(e.what());
    }
  }
  for (int j : out.shift_family)
    if (!laws.count(j)) throw InputError(source + ": eps-shifts names an unknown law " + std::to_string(j));
  return out;
}

ProblemFile load_problem_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem_file(ss.str(), path);
}

}  // namespace aclaw
