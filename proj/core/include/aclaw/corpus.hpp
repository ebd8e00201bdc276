#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "aclaw/problem_file.hpp"
#include "aclaw/verify.hpp"

namespace aclaw {

namespace corpus {

// Fixture ids in lexicographic order.
std::vector<std::string> ids();
// Raw fixture text; throws InputError for an unknown id.
std::string_view source(const std::string& id);
ProblemFile load(const std::string& id);

// Published fluxes that fail: a rational rescaling of the multiplier and a flux patch with
// (c * Lambda, Phi + patch) identically conserved.
struct FluxCorrection {
  bool found = false;
  Rational scale{1};
  std::vector<std::vector<Poly>> patch;  // [direction][slot]
  bool pure_scale() const;
};

FluxCorrection diagnose(const PdeProblem& problem, const ConservationLaw& law, const FluxSpec& spec = {});

struct LawAudit {
  std::string name;  // "N" or "eps*N"
  std::string label;
  bool shifted = false;
  bool has_fluxes = false;
  LawStatus status = LawStatus::unverified;
  VerificationReport euler;
  VerificationReport identity;
  VerificationReport on_solutions;  // run only when the identity fails
  VerificationReport spot;
  bool erratum() const;  // anything short of identity + Euler + spot passing
  std::string note;
  std::string documented;    // erratum text carried by the fixture
  FluxCorrection correction;  // computed when the published fluxes fail the identity
  // documented in the fixture, multiplier valid and a verified correction found
  bool justified() const;
};

struct EntryAudit {
  std::string id;
  std::vector<LawAudit> laws;
  bool clean() const;
  bool justified() const;  // every erratum justified
};

inline constexpr int kAuditTrials = 20;

EntryAudit audit_entry(const ProblemFile& file, int trials = kAuditTrials, std::uint64_t seed = kDefaultSeed);
std::vector<EntryAudit> audit(int trials = kAuditTrials, std::uint64_t seed = kDefaultSeed);

}  // namespace corpus

}  // namespace aclaw
