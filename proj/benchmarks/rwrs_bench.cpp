// Copyright 2026 The rwrs Authors
// SPDX-License-Identifier: Apache-2.0

#include <vector>

#include <benchmark/benchmark.h>

#include "rwrs/limit_process.hpp"
#include "rwrs/rwrs.hpp"
#include "rwrs/stable.hpp"
#include "rwrs/walk.hpp"

namespace rwrs {
namespace {

void BM_FillStable(benchmark::State& state) {
  const double index = static_cast<double>(state.range(0)) / 10.0;
  const StableLaw law = make_stable(index, 1.0, index == 1.0 ? 0.0 : 0.5);
  std::vector<double> out(4096);
  CounterRng rng(StreamKey(1));
  for (auto _ : state) {
    fill_stable(law, rng, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(out.size()));
}
BENCHMARK(BM_FillStable)->Arg(5)->Arg(15)->Arg(20);

void BM_WalkPositions(benchmark::State& state) {
  const auto law = state.range(0) == 0 ? WalkIncrementLaw::simple_symmetric()
                                       : WalkIncrementLaw::discrete_pareto(1.5);
  std::vector<std::int64_t> pos;
  CounterRng rng(StreamKey(2));
  for (auto _ : state) {
    generate_positions(1 << 14, law, rng, pos);
    benchmark::DoNotOptimize(pos.data());
  }
  state.SetItemsProcessed(state.iterations() * (1 << 14));
}
BENCHMARK(BM_WalkPositions)->Arg(0)->Arg(1);

void BM_SchemaSample(benchmark::State& state) {
  SchemaConfig c;
  c.alpha = 1.5;
  c.beta = 1.5;
  c.n = state.range(0);
  c.copies = 16;
  SchemaEvaluator ev(c);
  std::uint64_t r = 0;
  for (auto _ : state) benchmark::DoNotOptimize(ev.sample(r++));
}
BENCHMARK(BM_SchemaSample)->Arg(1024)->Arg(4096);

void BM_GammaPath(benchmark::State& state) {
  LimitConfig c;
  c.scenery = make_stable(1.5, 1.0);
  c.time_step = 1.0 / static_cast<double>(state.range(0));
  c.copies = 64;
  GammaSampler g(c);
  std::vector<double> out(g.steps() + 1);
  std::uint64_t r = 0;
  for (auto _ : state) {
    g.gamma_path(r++, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_GammaPath)->Arg(256)->Arg(4096);

}  // namespace
}  // namespace rwrs

BENCHMARK_MAIN();
