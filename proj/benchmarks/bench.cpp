#include <benchmark/benchmark.h>

#include "lpverify/curvature.hpp"
#include "lpverify/expr.hpp"
#include "lpverify/sampling.hpp"
#include "lpverify/submanifold.hpp"

using namespace lpv;

namespace {

const StructurePtr& example() {
  static const StructurePtr st = build_example3();
  return st;
}

const Point kPoint{{0.3, -0.2, 0.4}};

void BM_ParseExpr(benchmark::State& state) {
  const std::vector<std::string> vars{"x", "y", "z"};
  for (auto _ : state) benchmark::DoNotOptimize(parse_expr("e^z * sin(x*y) + log(1 + x^2) / (2 + cos(z))", vars));
}
BENCHMARK(BM_ParseExpr);

void BM_LocalFrame(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(LocalFrame(example()->spec(), kPoint));
}
BENCHMARK(BM_LocalFrame);

void BM_ConnectionAt(benchmark::State& state) {
  const Connection c = Connection::generalized(example(), {0.7, -1.3});
  for (auto _ : state) benchmark::DoNotOptimize(c.at(kPoint));
}
BENCHMARK(BM_ConnectionAt);

void BM_CurvatureTensor(benchmark::State& state) {
  const ConnectionAt at = Connection::generalized(example(), {0.7, -1.3}).at(kPoint);
  for (auto _ : state) benchmark::DoNotOptimize(CurvatureTensor(at));
}
BENCHMARK(BM_CurvatureTensor);

void BM_Ricci(benchmark::State& state) {
  const Connection c = Connection::generalized(example(), {0.7, -1.3});
  for (auto _ : state) benchmark::DoNotOptimize(ricci(c, kPoint));
}
BENCHMARK(BM_Ricci);

void BM_AxiomSuite(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(verify_lp_axioms(example(), 1, state.range(0)));
}
BENCHMARK(BM_AxiomSuite)->Arg(8)->Arg(64);

void BM_Theorem44Suite(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(theorem44_verify(example(), {0, 0}, 1, state.range(0)));
}
BENCHMARK(BM_Theorem44Suite)->Arg(8)->Arg(64);

void BM_LeafSecondFundamental(benchmark::State& state) {
  const SubmanifoldPtr sub = build_example3_leaf();
  const Connection lc = Connection::levi_civita(sub->ambient_ptr());
  const Eigen::Vector3d x(1, 0, 0.5), y(0.3, 0, 1), n(0, 1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(second_fundamental_form(*sub, lc, x, y, n, {0.2, -0.1}));
}
BENCHMARK(BM_LeafSecondFundamental);

void BM_Lemma54Suite(benchmark::State& state) {
  const SubmanifoldPtr sub = build_example3_leaf();
  for (auto _ : state) benchmark::DoNotOptimize(lemma54_and_prop59_residuals(sub, {0.7, -1.3}, 1, 16));
}
BENCHMARK(BM_Lemma54Suite);

}  // namespace

BENCHMARK_MAIN();
