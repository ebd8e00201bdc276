#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "aclaw/corpus.hpp"
#include "aclaw/error.hpp"
#include "aclaw/parse.hpp"
#include "aclaw/print.hpp"
#include "aclaw/problem_file.hpp"
#include "cli.hpp"

using namespace aclaw;
using nlohmann::json;

namespace {

cli::RunConfig config(cli::Command c, std::string input) {
  cli::RunConfig cfg;
  cfg.command = c;
  cfg.input = std::move(input);
  cfg.format = cli::Format::json;
  cfg.trials = 3;
  return cfg;
}

std::string temp_file(const std::string& name, const std::string& body) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path.string();
}

void collect_strings(const json& j, std::vector<std::string>& out, const std::string& key = "") {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) collect_strings(it.value(), out, it.key());
  } else if (j.is_array()) {
    for (const auto& v : j) collect_strings(v, out, key);
  } else if (j.is_string() && (key == "value" || key == "slots" || key == "residual")) {
    out.push_back(j.get<std::string>());
  }
}

}  // namespace

TEST_CASE("problem file: comments, continuation and key forms") {
  ProblemFile f = parse_problem_file(R"(# comment
independent = t, x
dependent = u
parameters = k
order = 2
equation = u_t - k*u_xx \
   + eps*u^2
leading = u_t
multiplier.1.0 = 1
multiplier.1.2 = u[0]
label.1 = L
erratum.1 = noted
)",
                                     "inline.prob");
  CHECK(f.problem.order == 2);
  REQUIRE(f.expected.size() == 1);
  CHECK(f.expected[0].label == "L");
  CHECK(f.expected[0].erratum == "noted");
  const auto& slots = f.expected[0].law.multipliers.slots[0];
  REQUIRE(slots.size() == 3);
  CHECK(slots[0] == Poly(1));
  CHECK(slots[1].is_zero());
  CHECK(slots[2] == parse_poly("u[0]", *f.problem.symbols));
}

TEST_CASE("problem file errors name the line") {
  auto message = [](const std::string& text) {
    try {
      parse_problem_file(text, "bad.prob");
    } catch (const Error& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("independent = t, x\ndependent = u\nequation = u_t +\nleading = u_t\n").find("bad.prob:3") !=
        std::string::npos);
  CHECK(message("independent = t\nnonsense\n").find("line 2") != std::string::npos);
  CHECK_FALSE(message("independent = t, x\ndependent = u\nequation = u_xx\nleading = u_t\n").empty());
  CHECK_FALSE(message("independent = t, x\ndependent = u\nmethod = c\nequation = u_t\nleading = u_t\n").empty());
}

TEST_CASE("expand prints the Taylor expansion of f(u)") {
  cli::RunConfig cfg = config(cli::Command::expand, "f(u)");
  cfg.format = cli::Format::text;
  cli::RunResult r = cli::run(cfg);
  CHECK(r.exit_code == 0);
  CHECK(r.output.rfind("f(u[0]) + eps*f'(u[0])*u[1]\n", 0) == 0);
}

TEST_CASE("solve on diffusion reports the two published multipliers") {
  cli::RunResult r = cli::run(config(cli::Command::solve, "corpus:diffusion-consistent"));
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.output);
  const auto& ms = j["result"]["multipliers"];
  REQUIRE(ms.size() == 4);
  CHECK(ms[0]["class"] == "non-trivial");
  CHECK(ms[0]["multiplier"]["components"][0]["value"] == "1");
  CHECK(ms[1]["multiplier"]["components"][0]["value"] == "x + eps*(t + x^2/2)");
  CHECK(ms[2]["class"] == "eps-shift");
  for (const auto& m : ms) CHECK(m["law"]["status"] == "identity-verified");
}

TEST_CASE("solve with degree 0 keeps only Lambda = 1 and its shift") {
  cli::RunConfig cfg = config(cli::Command::solve, "corpus:diffusion-consistent");
  cfg.mult_degree = std::vector<int>{0};
  cli::RunResult r = cli::run(cfg);
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.output);
  REQUIRE(j["result"]["multipliers"].size() == 2);
  CHECK(j["result"]["multipliers"][0]["multiplier"]["components"][0]["value"] == "1");
}

TEST_CASE("solve on a problem without multipliers succeeds with an empty list") {
  std::string path = temp_file("aclaw_toy.prob", "independent = t, x\ndependent = u\nequation = u_t + u^2\nleading = u_t\n");
  cli::RunConfig cfg = config(cli::Command::solve, path);
  cfg.mult_deps = std::vector<std::string>{"t", "x"};
  cfg.mult_degree = std::vector<int>{0};
  cli::RunResult r = cli::run(cfg);
  CHECK(r.exit_code == 0);
  CHECK(json::parse(r.output)["result"]["multipliers"].empty());
}

TEST_CASE("exit codes") {
  SUBCASE("input error") {
    CHECK(cli::run(config(cli::Command::solve, "/nonexistent/file.prob")).exit_code == cli::kInputError);
    CHECK(cli::run(config(cli::Command::expand, "u +")).exit_code == cli::kInputError);
    CHECK(cli::run(config(cli::Command::verify, "corpus:unknown")).exit_code == cli::kInputError);
  }
  SUBCASE("incomplete reconstruction still emits multipliers") {
    cli::RunConfig cfg = config(cli::Command::solve, "corpus:diffusion-consistent");
    cfg.flux_degree = 0;
    cli::RunResult r = cli::run(cfg);
    CHECK(r.exit_code == cli::kIncomplete);
    json j = json::parse(r.output);
    CHECK(j["result"]["multipliers"].size() == 4);
    CHECK(j["result"]["multipliers"][0].contains("reconstruction_error"));
  }
  SUBCASE("verification failure") {
    std::string text = R"(independent = t, x
dependent = u
equation = u_t - u_xx
leading = u_t
multiplier.1 = 1
flux.1.t = u[0] + eps*u[1]
flux.1.x = -u[0]_x - eps*u[1]_x + u[0]
)";
    cli::RunResult r = cli::run(config(cli::Command::verify, temp_file("aclaw_bad.prob", text)));
    CHECK(r.exit_code == cli::kVerificationFailed);
  }
  SUBCASE("verify on the wave laws reports the erratum failures") {
    cli::RunResult r = cli::run(config(cli::Command::verify, "corpus:wave"));
    CHECK(r.exit_code == cli::kVerificationFailed);
    json j = json::parse(r.output);
    CHECK(j["audit"]["justified"] == true);
  }
}

TEST_CASE("machine output re-parses to the same normal forms") {
  cli::RunResult r = cli::run(config(cli::Command::solve, "corpus:kdv-burgers"));
  REQUIRE(r.exit_code == 0);
  ProblemFile f = corpus::load("kdv-burgers");
  std::vector<std::string> exprs;
  collect_strings(json::parse(r.output), exprs);
  REQUIRE(exprs.size() > 20);
  for (const std::string& e : exprs) {
    Poly p = parse_poly(e, *f.problem.symbols);
    CHECK(print(p, *f.problem.symbols) == e);
  }
}

TEST_CASE("identical flags give byte-identical output") {
  for (cli::Command c : {cli::Command::solve, cli::Command::compare, cli::Command::verify}) {
    cli::RunConfig cfg = config(c, "corpus:diffusion-consistent");
    CHECK(cli::run(cfg).output == cli::run(cfg).output);
  }
  cli::RunConfig a = config(cli::Command::audit, "");
  a.ids = {"nls2"};
  CHECK(cli::run(a).output == cli::run(a).output);
}

TEST_CASE("--out writes the report") {
  cli::RunConfig cfg = config(cli::Command::expand, "u^2");
  cfg.out = (std::filesystem::temp_directory_path() / "aclaw_out.json").string();
  cli::RunResult r = cli::run(cfg);
  std::ifstream in(cfg.out);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == r.output);
  CHECK(json::parse(ss.str())["slots"][1] == "2*u[0]*u[1]");
}

TEST_CASE("compare notes that consistent laws expand Approach A laws") {
  cli::RunResult r = cli::run(config(cli::Command::compare, "corpus:diffusion-consistent"));
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.output);
  REQUIRE(j["methods"].size() == 3);
  CHECK(j["methods"][2]["multipliers"].size() == 4);
  CHECK(j["expansions"].size() >= 2);
  for (const auto& e : j["expansions"]) CHECK(e["fluxes"]["equivalent"] == true);
}
