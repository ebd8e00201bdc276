#include "aclaw/report.hpp"

#include <sstream>

#include "aclaw/print.hpp"

namespace aclaw {

Json to_json(const Poly& p, const SymbolTable& symbols) { return print(p, symbols, PrintStyle::machine); }

Json slots_json(const std::vector<Poly>& slots, const SymbolTable& symbols) {
  Json out = Json::array();
  for (const Poly& p : slots) out.push_back(to_json(p, symbols));
  return out;
}

Json to_json(const MultiplierSet& m, const SymbolTable& symbols) {
  Json j;
  j["method"] = to_string(m.method);
  Json comps = Json::array();
  for (int nu = 0; nu < m.equations(); ++nu) {
    Json c;
    c["value"] = to_json(m.joined(nu), symbols);
    c["slots"] = slots_json(m.slots[static_cast<std::size_t>(nu)], symbols);
    comps.push_back(std::move(c));
  }
  j["components"] = std::move(comps);
  return j;
}

Json to_json(const ClassifiedMultiplier& c, const SymbolTable& symbols) {
  Json j;
  j["class"] = to_string(c.cls);
  j["stable"] = c.stable;
  j["shift_of"] = c.shift_of ? Json(*c.shift_of) : Json(nullptr);
  j["multiplier"] = to_json(c.multiplier, symbols);
  return j;
}

Json to_json(const ConservationLaw& law, const SymbolTable& symbols) {
  Json j;
  j["status"] = to_string(law.status);
  j["multiplier"] = to_json(law.multipliers, symbols);
  Json fl;
  for (int i = 0; i < law.directions(); ++i) {
    Json c;
    c["value"] = to_json(law.joined(i), symbols);
    c["slots"] = slots_json(law.fluxes[static_cast<std::size_t>(i)], symbols);
    fl[symbols.independents().at(static_cast<std::size_t>(i))] = std::move(c);
  }
  j["fluxes"] = std::move(fl);
  return j;
}

Json to_json(const CheckResult& c, const SymbolTable& symbols) {
  Json j;
  j["name"] = c.name;
  j["passed"] = c.passed;
  if (c.inconclusive) j["inconclusive"] = true;
  if (!c.residual.is_zero()) j["residual"] = to_json(c.residual, symbols);
  if (!c.point.empty()) {
    Json pt;
    for (const auto& [a, v] : c.point) pt[print_atom(a, symbols)] = v.to_string();
    j["point"] = std::move(pt);
    Json fv = Json::array();
    for (const auto& [key, v] : c.function_values) {
      const auto& [fn, derivs, arg] = key;
      fv.push_back({{"function", symbols.functions().at(static_cast<std::size_t>(fn)).name},
                    {"derivatives", derivs},
                    {"argument", arg.to_string()},
                    {"value", v.to_string()}});
    }
    if (!fv.empty()) j["function_values"] = std::move(fv);
    j["value"] = c.value.to_string();
  }
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

Json to_json(const VerificationReport& r, const SymbolTable& symbols) {
  Json j;
  j["passed"] = r.passed();
  j["epsilon_order"] = r.epsilon_order;
  Json checks = Json::array();
  for (const CheckResult& c : r.checks) checks.push_back(to_json(c, symbols));
  j["checks"] = std::move(checks);
  return j;
}

Json to_json(const Equivalence& e) {
  return {{"equivalent", e.equivalent}, {"conclusive", e.conclusive}, {"reason", e.reason}};
}

Json to_json(const corpus::FluxCorrection& c, const SymbolTable& symbols) {
  Json j;
  j["found"] = c.found;
  if (!c.found) return j;
  j["scale"] = c.scale.to_string();
  Json patch;
  for (std::size_t i = 0; i < c.patch.size(); ++i) patch[symbols.independents().at(i)] = slots_json(c.patch[i], symbols);
  j["patch"] = std::move(patch);
  return j;
}

Json to_json(const corpus::LawAudit& a, const SymbolTable& symbols) {
  Json j;
  j["law"] = a.name;
  j["label"] = a.label;
  j["has_fluxes"] = a.has_fluxes;
  j["status"] = a.has_fluxes ? to_string(a.status) : "multiplier-only";
  j["euler"] = a.euler.passed();
  j["spot"] = a.has_fluxes ? Json(a.spot.passed()) : Json(nullptr);
  j["erratum"] = a.erratum();
  if (a.erratum()) {
    j["justified"] = a.justified();
    j["documented"] = a.documented;
    j["correction"] = to_json(a.correction, symbols);
    Json failing = Json::array();
    for (const VerificationReport* r : {&a.euler, &a.identity, &a.on_solutions})
      for (const CheckResult& c : r->checks)
        if (!c.passed) failing.push_back(to_json(c, symbols));
    j["failing_checks"] = std::move(failing);
  }
  if (!a.note.empty()) j["note"] = a.note;
  return j;
}

Json to_json(const corpus::EntryAudit& a, const SymbolTable& symbols) {
  Json j;
  j["id"] = a.id;
  j["clean"] = a.clean();
  j["justified"] = a.justified();
  Json laws = Json::array();
  for (const auto& l : a.laws) laws.push_back(to_json(l, symbols));
  j["laws"] = std::move(laws);
  return j;
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

std::string format_slots(const std::vector<Poly>& slots, const SymbolTable& symbols, const std::string& indent) {
  static const char* const kSup[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
  std::string out;
  for (std::size_t k = 0; k < slots.size(); ++k) {
    out += indent + "ε" + (k < 10 ? kSup[k] : "^" + std::to_string(k)) + ": ";
    out += print(slots[k], symbols, PrintStyle::human) + "\n";
  }
  return out;
}

std::string format_multiplier(const MultiplierSet& m, const SymbolTable& symbols, const std::string& indent) {
  std::string out;
  for (int nu = 0; nu < m.equations(); ++nu) {
    out += indent + "Λ" + (m.equations() > 1 ? "[" + std::to_string(nu + 1) + "]" : "") + "\n";
    out += format_slots(m.slots[static_cast<std::size_t>(nu)], symbols, indent + "  ");
  }
  return out;
}

std::string format_law(const ConservationLaw& law, const SymbolTable& symbols, const std::string& indent) {
  std::string out = format_multiplier(law.multipliers, symbols, indent);
  for (int i = 0; i < law.directions(); ++i) {
    out += indent + "Φ^" + symbols.independents().at(static_cast<std::size_t>(i)) + "\n";
    out += format_slots(law.fluxes[static_cast<std::size_t>(i)], symbols, indent + "  ");
  }
  out += indent + "status: " + to_string(law.status) + "\n";
  return out;
}

std::string format_report(const VerificationReport& r, const SymbolTable& symbols, const std::string& indent) {
  std::ostringstream os;
  for (const CheckResult& c : r.checks) {
    os << indent << c.name << ": " << (c.passed ? "pass" : c.inconclusive ? "inconclusive" : "FAIL");
    if (!c.note.empty()) os << " (" << c.note << ")";
    os << "\n";
    if (!c.residual.is_zero() && !c.passed) os << indent << "  residual: " << print(c.residual, symbols, PrintStyle::human) << "\n";
    if (!c.point.empty()) {
      os << indent << "  witness:";
      for (const auto& [a, v] : c.point) os << " " << print_atom(a, symbols, PrintStyle::human) << "=" << v.to_string();
      os << " -> " << c.value.to_string() << "\n";
    }
  }
  return os.str();
}

std::string format_audit(const corpus::EntryAudit& a, const SymbolTable& symbols) {
  std::ostringstream os;
  os << a.id << (a.clean() ? "  clean" : a.justified() ? "  errata (justified)" : "  errata (UNJUSTIFIED)") << "\n";
  for (const auto& l : a.laws) {
    os << "  " << l.name << (l.label.empty() ? "" : " [" + l.label + "]") << ": euler "
       << (l.euler.passed() ? "pass" : "FAIL");
    if (l.has_fluxes) os << ", " << to_string(l.status) << ", spot " << (l.spot.passed() ? "pass" : "FAIL");
    os << "\n";
    if (!l.erratum()) continue;
    os << "    erratum: " << (l.documented.empty() ? "(undocumented)" : l.documented) << "\n";
    if (l.correction.found) {
      os << "    correction: multiplier scale " << l.correction.scale.to_string();
      if (l.correction.pure_scale()) {
        os << ", no flux patch\n";
      } else {
        os << ", flux patch\n";
        for (std::size_t i = 0; i < l.correction.patch.size(); ++i)
          for (std::size_t k = 0; k < l.correction.patch[i].size(); ++k)
            if (!l.correction.patch[i][k].is_zero())
              os << "      Φ^" << symbols.independents().at(i) << " ε" << k << ": + "
                 << print(l.correction.patch[i][k], symbols, PrintStyle::human) << "\n";
      }
    } else {
      os << "    correction: none found\n";
    }
  }
  return os.str();
}

}  // namespace aclaw
