// Copyright 2026 The specpresheaf Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <memory>

#include "specpresheaf/bundles.hpp"
#include "specpresheaf/correspondences.hpp"
#include "specpresheaf/spectral_presheaf.hpp"

using namespace specpresheaf;

namespace {

PosetPtr shared(ContextPoset p) { return std::make_shared<const ContextPoset>(std::move(p)); }

void BM_FullAbelianPoset(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(full_abelian_poset(n));
}
BENCHMARK(BM_FullAbelianPoset)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_MerminClosure(benchmark::State& state) {
  const StarAlgebra m4 = StarAlgebra::full_matrix(4);
  const auto gens = mermin_peres_generators();
  for (auto _ : state) benchmark::DoNotOptimize(closure(m4, gens));
}
BENCHMARK(BM_MerminClosure)->Unit(benchmark::kMillisecond);

void BM_GlobalSectionsAbelian(benchmark::State& state) {
  const SpectralPresheaf s(shared(full_abelian_poset(static_cast<std::size_t>(state.range(0)))));
  for (auto _ : state) benchmark::DoNotOptimize(global_sections(s));
}
BENCHMARK(BM_GlobalSectionsAbelian)->DenseRange(3, 6)->Unit(benchmark::kMicrosecond);

void BM_GlobalSectionsMermin(benchmark::State& state) {
  const SpectralPresheaf s(shared(mermin_peres_poset()));
  for (auto _ : state) benchmark::DoNotOptimize(global_sections(s));
}
BENCHMARK(BM_GlobalSectionsMermin)->Unit(benchmark::kMicrosecond);

void BM_OrderAutomorphisms(benchmark::State& state) {
  const ContextPoset p = bundle_poset(state.range(0) == 0 ? "c4" : state.range(0) == 1 ? "c5" : "mermin");
  for (auto _ : state) benchmark::DoNotOptimize(order_automorphisms(p));
}
BENCHMARK(BM_OrderAutomorphisms)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_PresheafAutomorphisms(benchmark::State& state) {
  const PosetPtr p = shared(bundle_poset(state.range(0) == 0 ? "c4" : "mermin"));
  for (auto _ : state) benchmark::DoNotOptimize(presheaf_automorphisms(p));
}
BENCHMARK(BM_PresheafAutomorphisms)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_AutGroupsC4(benchmark::State& state) {
  const PosetPtr p = shared(full_abelian_poset(4));
  const auto autos = abelian_automorphisms(4);
  for (auto _ : state) benchmark::DoNotOptimize(aut_groups(p, autos));
}
BENCHMARK(BM_AutGroupsC4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
