#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "cli.hpp"

using namespace aclaw;

namespace {

void common_flags(CLI::App* sub, cli::RunConfig& cfg, std::string& format) {
  sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  sub->add_option("--seed", cfg.seed, "Spot-check seed");
  sub->add_option("--trials", cfg.trials, "Spot-check trials")->check(CLI::PositiveNumber);
  sub->add_option("--out", cfg.out, "Write the report to this path");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate conservation laws of perturbed PDEs"};
  app.require_subcommand(1);
  cli::RunConfig cfg;
  std::string format = "text";
  std::string method;
  std::vector<std::string> mult_deps, laurent;
  std::vector<int> mult_degree;
  int order = 0, flux_degree = -1;

  auto solver_flags = [&](CLI::App* sub) {
    sub->add_option("input", cfg.input, "Problem file or corpus:<id>")->required();
    sub->add_option("--order", order, "Truncation order p")->check(CLI::PositiveNumber);
    sub->add_option("--mult-deps", mult_deps, "Multiplier generators")->delimiter(',');
    sub->add_option("--mult-degree", mult_degree, "Total degree per perturbation order")->delimiter(',');
    sub->add_option("--flux-degree", flux_degree, "Flux candidate degree bound")->check(CLI::NonNegativeNumber);
    sub->add_option("--laurent", laurent, "Atoms allowed negative exponents")->delimiter(',');
    common_flags(sub, cfg, format);
  };

  auto* solve = app.add_subcommand("solve", "Find multipliers, reconstruct and verify fluxes");
  solver_flags(solve);
  solve->add_option("--method", method, "Multiplier method")->check(CLI::IsMember({"consistent", "a", "b"}));
  auto* compare = app.add_subcommand("compare", "Run all three methods side by side");
  solver_flags(compare);
  auto* verify = app.add_subcommand("verify", "Verify the multipliers and fluxes stored in a problem file");
  verify->add_option("input", cfg.input, "Problem file or corpus:<id>")->required();
  common_flags(verify, cfg, format);
  auto* expand = app.add_subcommand("expand", "Expand an expression in eps");
  expand->add_option("expression", cfg.input, "Expression over unexpanded variables")->required();
  expand->add_option("--order", order, "Truncation order p")->check(CLI::PositiveNumber);
  expand->add_option("--problem", cfg.problem, "Take declarations from this problem file");
  expand->add_option("--independent", cfg.independent, "Independent variables")->delimiter(',');
  expand->add_option("--dependent", cfg.dependent, "Dependent variables")->delimiter(',');
  expand->add_option("--parameters", cfg.parameters, "Parameters")->delimiter(',');
  expand->add_option("--functions", cfg.functions, "Function declarations such as f(u)")->delimiter(';');
  common_flags(expand, cfg, format);
  auto* audit = app.add_subcommand("audit", "Audit the built-in corpus");
  audit->add_option("ids", cfg.ids, "Restrict to these corpus ids");
  common_flags(audit, cfg, format);

  CLI11_PARSE(app, argc, argv);

  static const std::map<CLI::App*, cli::Command> commands = {{solve, cli::Command::solve},
                                                            {compare, cli::Command::compare},
                                                            {verify, cli::Command::verify},
                                                            {expand, cli::Command::expand},
                                                            {audit, cli::Command::audit}};
  for (const auto& [sub, cmd] : commands)
    if (sub->parsed()) cfg.command = cmd;
  cfg.format = format == "json" ? cli::Format::json : cli::Format::text;
  if (!method.empty()) cfg.method = parse_method(method);
  if (order > 0) cfg.order = order;
  if (flux_degree >= 0) cfg.flux_degree = flux_degree;
  if (!mult_deps.empty()) cfg.mult_deps = mult_deps;
  if (!mult_degree.empty()) cfg.mult_degree = mult_degree;
  if (!laurent.empty()) cfg.laurent = laurent;

  cli::RunResult r = cli::run(cfg);
  if (cfg.out.empty() || r.exit_code == cli::kInputError) (r.exit_code == cli::kInputError ? std::cerr : std::cout) << r.output;
  return r.exit_code;
}
