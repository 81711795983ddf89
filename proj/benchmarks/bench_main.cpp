#include <benchmark/benchmark.h>

#include "chorc/conc.hpp"
#include "chorc/epp.hpp"
#include "chorc/net.hpp"
#include "chorc/seq.hpp"
#include "chorc/syntax.hpp"
#include "chorc/verify.hpp"

namespace {

const char* kScatterGather =
    "{p.1 -> s0.y0, p.2 -> s1.y1};\n"
    "{s0.y0 + 10 -> p.x0, s1.y1 + 10 -> p.x1}";

const char* kCrawler =
    "{p.pair(item, auth(p, s1)) -> s1.t, p.pair(item, auth(p, s2)) -> s2.t};\n"
    "{s1.priceof(t) -> p.x_s1, s2.priceof(t) -> p.x_s2}";

void BM_ParseCrawler(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(chorc::parse_chor(kCrawler));
}
BENCHMARK(BM_ParseCrawler);

void BM_PrintCrawler(benchmark::State& state) {
  chorc::ChorPtr c = chorc::parse_chor(kCrawler);
  for (auto _ : state) benchmark::DoNotOptimize(chorc::print_chor(c));
}
BENCHMARK(BM_PrintCrawler);

void BM_SeqRun(benchmark::State& state) {
  chorc::GenConfig cfg;
  cfg.seed = 7;
  cfg.max_depth = static_cast<int>(state.range(0));
  chorc::ChorPtr c = chorc::gen_chor(cfg);
  for (auto _ : state)
    benchmark::DoNotOptimize(chorc::run_seq({c, chorc::State{}}, 256));
}
BENCHMARK(BM_SeqRun)->Arg(3)->Arg(5);

void BM_EnabledConc(benchmark::State& state) {
  chorc::ChorPtr c = chorc::parse_chor(kScatterGather);
  chorc::SeqConfig cfg{c, chorc::State{}};
  for (auto _ : state) benchmark::DoNotOptimize(chorc::enabled_conc(cfg));
}
BENCHMARK(BM_EnabledConc);

void BM_AllTracesScatterGather(benchmark::State& state) {
  chorc::ChorPtr c = chorc::parse_chor(kScatterGather);
  for (auto _ : state)
    benchmark::DoNotOptimize(chorc::all_traces({c, chorc::State{}}, 16));
}
BENCHMARK(BM_AllTracesScatterGather);

void BM_Project(benchmark::State& state) {
  chorc::GenConfig cfg;
  cfg.seed = 11;
  cfg.max_depth = static_cast<int>(state.range(0));
  chorc::ChorPtr c = chorc::gen_chor(cfg);
  for (auto _ : state) benchmark::DoNotOptimize(chorc::project(c));
}
BENCHMARK(BM_Project)->Arg(3)->Arg(5);

void BM_NetworkRun(benchmark::State& state) {
  chorc::ChorPtr c = chorc::parse_chor(kCrawler);
  chorc::Network n = chorc::project(chorc::annotate(c));
  for (auto _ : state)
    benchmark::DoNotOptimize(chorc::run_net({n, chorc::State{}}, 64, 1));
}
BENCHMARK(BM_NetworkRun);

}  // namespace

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  benchmark::RunSpecifiedBenchmarks();
  return 0;
}
