#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aclaw/multiplier.hpp"
#include "aclaw/verify.hpp"

namespace aclaw::cli {

enum class Command { solve, verify, expand, compare, audit };
enum class Format { text, json };

enum ExitCode : int { kOk = 0, kInputError = 2, kIncomplete = 3, kVerificationFailed = 4 };

struct RunConfig {
  Command command = Command::solve;
  std::string input;  // problem file path, `corpus:<id>`, or the expression for expand
  std::optional<Method> method;
  std::optional<int> order;
  std::optional<std::vector<std::string>> mult_deps;
  std::optional<std::vector<int>> mult_degree;
  std::optional<int> flux_degree;
  std::optional<std::vector<std::string>> laurent;
  Format format = Format::text;
  std::uint64_t seed = kDefaultSeed;
  int trials = 10;
  std::string out;  // empty: standard output
  // expand without a problem file
  std::string problem;
  std::vector<std::string> independent{"t", "x"};
  std::vector<std::string> dependent{"u"};
  std::vector<std::string> parameters;
  std::vector<std::string> functions{"f(u)"};
  // audit: restrict to these ids
  std::vector<std::string> ids;
};

struct RunResult {
  int exit_code = kOk;
  std::string output;
};

RunResult run_solve(const RunConfig& cfg);
RunResult run_compare(const RunConfig& cfg);
RunResult run_verify(const RunConfig& cfg);
RunResult run_expand(const RunConfig& cfg);
RunResult run_audit(const RunConfig& cfg);

// Dispatch on cfg.command; library errors become exit code 2 with a message.
RunResult run(const RunConfig& cfg);

}  // namespace aclaw::cli
