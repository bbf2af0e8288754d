// Copyright 2026 The Authors.
//
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


// Microbenchmarks for the hot paths: Segre ranks over GF(p) and Q, set
// analysis, and the enumeration harness.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "segre/constructions.hpp"
#include "segre/dependence.hpp"
#include "segre/harness.hpp"
#include "segre/linalg.hpp"
#include "segre/multiproj.hpp"
#include "segre/random.hpp"
#include "segre/theorems.hpp"

namespace segre {
namespace {

PointSet random_set(const FieldSpec& f, int k, std::size_t s, std::uint64_t seed) {
  const MultiprojectiveSpace y(f, std::vector<int>(static_cast<std::size_t>(k), 1));
  Rng rng = make_rng(seed);
  std::vector<MultiPoint> pts;
  for (std::size_t i = 0; i < s; ++i) pts.push_back(random_point(rng, y));
  return PointSet(y, std::move(pts));
}

// Args: p (0 = Q), k. The set has 2^k points in (P^1)^k.
void BM_SegreRank(benchmark::State& state) {
  const auto p = static_cast<std::uint32_t>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  const FieldSpec f = p == 0 ? FieldSpec::rationals() : FieldSpec::prime(p);
  const Matrix m = embed_set(random_set(f, k, std::size_t{1} << k, 7));
  for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_SegreRank)
    ->Args({2, 6})->Args({2, 9})->Args({3, 6})->Args({3, 8})->Args({0, 4})->Args({0, 6});

void BM_RowSubsetRank(benchmark::State& state) {
  const auto p = static_cast<std::uint32_t>(state.range(0));
  const Matrix m = embed_set(random_set(FieldSpec::prime(p), 5, 12, 3));
  const RowSubsetRanker r(m);
  std::uint64_t mask = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(r.rank_mask(mask));
    mask = (mask + 1) & 0xfff;
  }
}
BENCHMARK(BM_RowSubsetRank)->Arg(2)->Arg(3);

void BM_AnalyzeK3(benchmark::State& state) {
  const PointSet s = gen_example_k3(3, 2, FieldSpec::prime(5), 1, false).set;
  for (auto _ : state) benchmark::DoNotOptimize(analyze(s));
}
BENCHMARK(BM_AnalyzeK3)->Unit(benchmark::kMicrosecond);

void BM_VerifyClassWalk(benchmark::State& state) {
  VerificationJob job;
  job.statement = Statement::kO4_1;
  job.domain.field = FieldSpec::prime(3);
  job.domain.shapes = {{1, 1}};
  job.domain.sizes = {3, 4, 5};
  job.domain.reduction = Reduction::kProjectiveClass;
  job.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(verify(job));
}
BENCHMARK(BM_VerifyClassWalk)->Unit(benchmark::kMillisecond);

void BM_VerifySampledIs1(benchmark::State& state) {
  VerificationJob job;
  job.statement = Statement::kIs1;
  job.domain.field = FieldSpec::prime(static_cast<std::uint32_t>(state.range(0)));
  job.domain.shapes = {{1, 1, 1, 1}};
  job.domain.sizes = {6};
  job.domain.mode = Mode::kSampled;
  job.domain.proposal = Proposal::kDependent;
  job.domain.samples = 500;
  job.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(verify(job));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * job.domain.samples));
}
BENCHMARK(BM_VerifySampledIs1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace segre

BENCHMARK_MAIN();
