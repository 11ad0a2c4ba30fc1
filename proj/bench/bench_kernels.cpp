#include "vcseffort/activity.hpp"
#include "vcseffort/calibration.hpp"
#include "vcseffort/effort.hpp"
#include "vcseffort/ingest.hpp"
#include "vcseffort/synth.hpp"

#include <benchmark/benchmark.h>

using namespace vcseffort;

namespace {

struct Corpus {
  std::vector<CommitRecord> commits;
  IdentityResolution ids;
  ActivityMatrix matrix;
  std::vector<LabeledActivity> sample;
};

const Corpus& corpus() {
  static const Corpus c = [] {
    Corpus out;
    LogSpec spec;
    spec.commits = 200'000;
    spec.authors = 3'000;
    out.commits = synthetic_log(spec);
    out.ids = resolve_identities(out.commits, {});
    out.matrix = aggregate(out.commits, out.ids, PeriodSpec{});
    PopulationSpec pop;
    pop.n_fulltime = 2'000;
    pop.n_other = 18'000;
    pop.theta_true = 200;
    pop.label_noise = 0.05;
    out.sample = generate(pop).sample();
    return out;
  }();
  return c;
}

void BM_Aggregate(benchmark::State& state) {
  const auto& c = corpus();
  for (auto _ : state)
    benchmark::DoNotOptimize(aggregate(c.commits, c.ids, PeriodSpec{}, ActivityMetric::ActiveDays));
}

void BM_AggregateSerial(benchmark::State& state) {
  const auto& c = corpus();
  for (auto _ : state)
    benchmark::DoNotOptimize(aggregate_serial(c.commits, c.ids, PeriodSpec{}, ActivityMetric::ActiveDays));
}

void BM_Sweep(benchmark::State& state) {
  const auto& c = corpus();
  for (auto _ : state)
    benchmark::DoNotOptimize(sweep(c.sample));
}

void BM_SweepSerial(benchmark::State& state) {
  const auto& c = corpus();
  for (auto _ : state)
    benchmark::DoNotOptimize(sweep_serial(c.sample));
}

void BM_ProjectEffort(benchmark::State& state) {
  const auto& c = corpus();
  for (auto _ : state)
    benchmark::DoNotOptimize(project_effort(c.matrix, 20));
}

void BM_ProjectEffortSerial(benchmark::State& state) {
  const auto& c = corpus();
  for (auto _ : state)
    benchmark::DoNotOptimize(project_effort_serial(c.matrix, 20));
}

void BM_BotFilter(benchmark::State& state) {
  const auto& c = corpus();
  FilterConfig cfg(default_bot_patterns(), true);
  for (auto _ : state)
    benchmark::DoNotOptimize(apply_filters(c.commits, cfg));
}

} // namespace

BENCHMARK(BM_Aggregate)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AggregateSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Sweep)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProjectEffort)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ProjectEffortSerial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_BotFilter)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
