#include <benchmark/benchmark.h>

#include "gwt/corpus.hpp"

using namespace gwt;

namespace {

const std::string flagshipPath = std::string(GWT_SOURCE_DIR) + "/corpus/flagship.gwt";

void BM_EnumerateTrees(benchmark::State& state) {
  GlobeContext ctx{2};
  for (auto _ : state) {
    auto trees = enumerateTrees(ctx, (int)state.range(0), 2);
    benchmark::DoNotOptimize(trees.size());
  }
}
BENCHMARK(BM_EnumerateTrees)->Arg(3)->Arg(4)->Arg(5);

void BM_FlagshipElaborate(benchmark::State& state) {
  std::string text = readFile(flagshipPath);
  for (auto _ : state) {
    auto decls = parse(text, "flagship.gwt");
    CheckReport r = elaborate(decls);
    benchmark::DoNotOptimize(r.allAssertionsPassed);
  }
}
BENCHMARK(BM_FlagshipElaborate);

void BM_CompositeBoundary(benchmark::State& state) {
  auto decls = parse(readFile(flagshipPath), "flagship.gwt");
  CheckReport r = elaborate(decls);
  Term top = r.operations.at("ABCDEF").top();
  for (auto _ : state) {
    benchmark::DoNotOptimize(source(top));
    benchmark::DoNotOptimize(target(top));
  }
}
BENCHMARK(BM_CompositeBoundary);

void BM_EnumerateAdmissibleStage0(benchmark::State& state) {
  Registry reg(GlobeContext{2});
  EnumBounds bounds{2, 1, 5, 0};
  for (auto _ : state) {
    auto pairs = enumerateAdmissible(reg, bounds);
    benchmark::DoNotOptimize(pairs.size());
  }
}
BENCHMARK(BM_EnumerateAdmissibleStage0);

void BM_StrictNormalize(benchmark::State& state) {
  auto decls = parse(readFile(flagshipPath), "flagship.gwt");
  CheckReport r = elaborate(decls);
  const OperationRef& op = r.operations.at("ABCDEF");
  for (auto _ : state) {
    benchmark::DoNotOptimize(strictNormalize(op.arrow.cod, op.top()));
  }
}
BENCHMARK(BM_StrictNormalize);

} // namespace

BENCHMARK_MAIN();
