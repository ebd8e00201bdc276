#include <benchmark/benchmark.h>

#include <map>

#include "aclaw/corpus.hpp"
#include "aclaw/flux.hpp"
#include "aclaw/jet.hpp"
#include "aclaw/multiplier.hpp"
#include "aclaw/parse.hpp"

using namespace aclaw;

namespace {

const ProblemFile& fixture(const std::string& id) {
  static std::map<std::string, ProblemFile> cache;
  auto it = cache.find(id);
  if (it == cache.end()) it = cache.emplace(id, corpus::load(id)).first;
  return it->second;
}

void BM_ParseNormalize(benchmark::State& state) {
  const ProblemFile& f = fixture("kaup-newell");
  const std::string text = "(u^2 + v^2)^3*u_x*v_xx - eps*(u*v_x - v*u_x)^2";
  for (auto _ : state) benchmark::DoNotOptimize(parse_poly(text, *f.problem.symbols));
}
BENCHMARK(BM_ParseNormalize);

void BM_ExpandEpsilon(benchmark::State& state) {
  const ProblemFile& f = fixture("wave");
  Poly e = parse_poly("f(u)*u_x*u_t^2 + lambda*u^3*u_xx - eps*c^2*u_x^2", *f.problem.symbols);
  const int p = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(expand_epsilon(e, p));
}
BENCHMARK(BM_ExpandEpsilon)->Arg(1)->Arg(2)->Arg(3);

void BM_ExpandByRecursion(benchmark::State& state) {
  const ProblemFile& f = fixture("wave");
  Poly e = parse_poly("f(u)*u_x*u_t^2 + lambda*u^3*u_xx - eps*c^2*u_x^2", *f.problem.symbols);
  const int p = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(expand_by_recursion(e, p));
}
BENCHMARK(BM_ExpandByRecursion)->Arg(1)->Arg(2)->Arg(3);

void BM_ConsistentEuler(benchmark::State& state) {
  const ProblemFile& f = fixture("kdv-burgers");
  const ExpectedLaw& e = f.expected[1];
  Poly c = contraction(f.problem, e.law.multipliers).join();
  for (auto _ : state) benchmark::DoNotOptimize(euler(c, EulerKind::consistent(0)));
}
BENCHMARK(BM_ConsistentEuler);

void BM_Solve(benchmark::State& state, const std::string& id) {
  const ProblemFile& f = fixture(id);
  AnsatzSpec spec = ansatz_from_hint(f.problem, f.method, f.hint);
  for (auto _ : state) benchmark::DoNotOptimize(solve_multipliers(f.problem, spec, f.method));
}
BENCHMARK_CAPTURE(BM_Solve, diffusion, std::string("diffusion-consistent"))->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Solve, diffusion_b, std::string("diffusion-approach-b"))->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Solve, kdv_burgers, std::string("kdv-burgers"))->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Solve, wave, std::string("wave"))->Unit(benchmark::kMillisecond);

void BM_Reconstruct(benchmark::State& state) {
  const ProblemFile& f = fixture("kdv-burgers");
  const MultiplierSet& m = f.expected[1].law.multipliers;
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct(f.problem, m));
}
BENCHMARK(BM_Reconstruct)->Unit(benchmark::kMillisecond);

void BM_Audit(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(corpus::audit(5));
}
BENCHMARK(BM_Audit)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
