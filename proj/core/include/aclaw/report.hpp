#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "aclaw/corpus.hpp"
#include "aclaw/flux.hpp"
#include "aclaw/multiplier.hpp"
#include "aclaw/verify.hpp"

namespace aclaw {

// Insertion-ordered so the emitted field order is fixed by the code, not by key sorting.
using Json = nlohmann::ordered_json;

inline constexpr int kReportSchema = 1;

// Machine-style expressions only: every string re-parses to the same normal form.
Json to_json(const Poly& p, const SymbolTable& symbols);
Json slots_json(const std::vector<Poly>& slots, const SymbolTable& symbols);
Json to_json(const MultiplierSet& m, const SymbolTable& symbols);
Json to_json(const ClassifiedMultiplier& c, const SymbolTable& symbols);
Json to_json(const ConservationLaw& law, const SymbolTable& symbols);
Json to_json(const CheckResult& c, const SymbolTable& symbols);
Json to_json(const VerificationReport& r, const SymbolTable& symbols);
Json to_json(const Equivalence& e);
Json to_json(const corpus::FluxCorrection& c, const SymbolTable& symbols);
Json to_json(const corpus::LawAudit& a, const SymbolTable& symbols);
Json to_json(const corpus::EntryAudit& a, const SymbolTable& symbols);

// Two-space indentation, trailing newline.
std::string dump(const Json& doc);

// Human output: eps-series grouped by order, one line per slot.
std::string format_slots(const std::vector<Poly>& slots, const SymbolTable& symbols, const std::string& indent);
std::string format_multiplier(const MultiplierSet& m, const SymbolTable& symbols, const std::string& indent);
std::string format_law(const ConservationLaw& law, const SymbolTable& symbols, const std::string& indent);
std::string format_report(const VerificationReport& r, const SymbolTable& symbols, const std::string& indent);
std::string format_audit(const corpus::EntryAudit& a, const SymbolTable& symbols);

}  // namespace aclaw
