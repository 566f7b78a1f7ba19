// Serial reference versus OpenMP path for the heavy kernels. Arg 0 is the
// serial path, arg 1 the parallel path.

#include <benchmark/benchmark.h>

#include "imconf/core.hpp"
#include "imconf/experiments.hpp"
#include "imconf/models/behrens_fisher.hpp"
#include "imconf/models/binomial.hpp"
#include "imconf/models/dkw.hpp"
#include "imconf/models/normal.hpp"

using namespace imconf;

namespace {

Execution mode(const benchmark::State& s) { return s.range(0) == 0 ? Execution::serial : Execution::parallel; }

void label(benchmark::State& s) {
  s.SetLabel(s.range(0) == 0 ? "serial" : "parallel, " + std::to_string(max_threads()) + " threads");
}

void BM_EvaluateOnGrid(benchmark::State& s) {
  const auto c = family_contour(models::normal::pivot_family(), 0.3, ContourShape::unimodal);
  const GridSpec g = GridSpec::line(-5, 5, 4096);
  for (auto _ : s) benchmark::DoNotOptimize(evaluate_on_grid(c, g, mode(s)));
  label(s);
}

void BM_LambdaTable(benchmark::State& s) {
  for (auto _ : s) {
    models::behrens_fisher::LambdaTable t(5, 11, models::behrens_fisher::LambdaTable::default_grid(101),
                                          MCConfig{20000, 1, 0}, mode(s));
    benchmark::DoNotOptimize(t.reps());
  }
  label(s);
}

void BM_KsNullTable(benchmark::State& s) {
  for (auto _ : s) {
    models::dkw::KsNullTable t(799, MCConfig{5000, 1, 0}, mode(s));
    benchmark::DoNotOptimize(t.reps());
  }
  label(s);
}

void BM_BinomialAudit(benchmark::State& s) {
  experiments::AuditSetup a;
  a.model = "binomial";
  a.mc = MCConfig{5000, 1, 0};
  for (auto _ : s) benchmark::DoNotOptimize(experiments::fused_validity_audit(a, mode(s)).flagged);
  label(s);
}

}  // namespace

BENCHMARK(BM_EvaluateOnGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LambdaTable)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KsNullTable)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BinomialAudit)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
