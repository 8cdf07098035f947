// Copyright 2026 The wtasep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Linear KNN scans over T dictionary frames: cosine on D float features vs
// popcount Hamming on packed WTA codes.

#include <benchmark/benchmark.h>

#include <random>

#include "wtasep/knn.hpp"
#include "wtasep/wta_hash.hpp"

namespace {

using namespace wtasep;

FeatureMatrix random_features(std::size_t rows, std::size_t dim, std::uint32_t seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<float> dist(0.0F, 1.0F);
  FeatureMatrix f(rows, dim, FeatureKind::kStftMagnitude);
  for (float& v : f.data()) v = dist(gen);
  return f;
}

void BM_CosineScan(benchmark::State& state) {
  const auto rows = static_cast<std::size_t>(state.range(0));
  const auto dim = static_cast<std::size_t>(state.range(1));
  const auto dict = random_features(rows, dim, 1);
  const auto queries = random_features(64, dim, 2);
  const CosineIndex index(dict);
  std::size_t q = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(knn_search(queries.row(q++ % queries.rows()), index, 5));
  }
  state.counters["frames/s"] = benchmark::Counter(static_cast<double>(rows) * state.iterations(),
                                                  benchmark::Counter::kIsRate);
  state.counters["bytes/frame"] = static_cast<double>(dim * sizeof(float));
}

void BM_HammingScan(benchmark::State& state) {
  const auto rows = static_cast<std::size_t>(state.range(0));
  const auto dim = static_cast<std::size_t>(state.range(1));
  const auto subsample = static_cast<std::size_t>(state.range(2));
  const auto code_length = static_cast<std::size_t>(state.range(3));
  const auto dict = random_features(rows, dim, 1);
  const auto table = generate_permutations(7, code_length, subsample, dim);
  const auto codes = hash_matrix(dict, table);
  const auto query_features = random_features(64, dim, 2);
  std::vector<std::vector<std::uint64_t>> queries;
  for (std::size_t i = 0; i < query_features.rows(); ++i) queries.push_back(hash_packed(query_features.row(i), table));
  std::size_t q = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(knn_search(queries[q++ % queries.size()], codes, 5));
  }
  state.counters["frames/s"] = benchmark::Counter(static_cast<double>(rows) * state.iterations(),
                                                  benchmark::Counter::kIsRate);
  state.counters["bytes/frame"] = static_cast<double>(codes.layout().row_bytes());
}

void BM_HashFrame(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  const auto table = generate_permutations(7, 100, 6, dim);
  const auto x = random_features(1, dim, 3);
  for (auto _ : state) benchmark::DoNotOptimize(hash_packed(x.row(0), table));
}

BENCHMARK(BM_CosineScan)->Args({15000, 40})->Args({15000, 513})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_HammingScan)
    ->Args({15000, 40, 6, 100})
    ->Args({15000, 513, 6, 100})
    ->Args({15000, 513, 2, 100})
    ->Args({15000, 513, 6, 500})
    ->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_HashFrame)->Arg(40)->Arg(513);

}  // namespace

BENCHMARK_MAIN();
