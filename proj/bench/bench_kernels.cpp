#include "simpca/kernels.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using simpca::Index;
using simpca::IndexList;
using simpca::Matrix;
using simpca::Vector;

struct Problem {
  Matrix x;
  Vector y;
  IndexList base;
  IndexList candidates;
};

Problem make(Index n, Index p) {
  std::mt19937_64 gen(7);
  std::normal_distribution<double> d;
  Problem pr;
  pr.x.resize(n, p);
  for (Index j = 0; j < p; ++j)
    for (Index i = 0; i < n; ++i) pr.x(i, j) = d(gen);
  pr.x.rowwise() -= pr.x.colwise().mean();
  pr.y = pr.x.leftCols(p / 2).rowwise().sum();
  for (Index j = 0; j < 4; ++j) pr.base.push_back(j);
  for (Index j = 4; j < p; ++j) pr.candidates.push_back(j);
  return pr;
}

void BM_CandidateSerial(benchmark::State& s) {
  const Problem pr = make(s.range(0), s.range(1));
  for (auto _ : s)
    benchmark::DoNotOptimize(
        simpca::kernels::serial::candidate_r2(pr.x, pr.y, pr.base, pr.candidates));
}

void BM_CandidateOmp(benchmark::State& s) {
  const Problem pr = make(s.range(0), s.range(1));
  for (auto _ : s)
    benchmark::DoNotOptimize(
        simpca::kernels::omp::candidate_r2(pr.x, pr.y, pr.base, pr.candidates));
}

void BM_VifSerial(benchmark::State& s) {
  const Problem pr = make(s.range(0), s.range(1));
  IndexList all(static_cast<std::size_t>(s.range(1)));
  for (Index j = 0; j < s.range(1); ++j) all[static_cast<std::size_t>(j)] = j;
  for (auto _ : s) benchmark::DoNotOptimize(simpca::kernels::serial::vif(pr.x, all));
}

void BM_VifOmp(benchmark::State& s) {
  const Problem pr = make(s.range(0), s.range(1));
  IndexList all(static_cast<std::size_t>(s.range(1)));
  for (Index j = 0; j < s.range(1); ++j) all[static_cast<std::size_t>(j)] = j;
  for (auto _ : s) benchmark::DoNotOptimize(simpca::kernels::omp::vif(pr.x, all));
}

}  // namespace

BENCHMARK(BM_CandidateSerial)->Args({263, 16})->Args({500, 60});
BENCHMARK(BM_CandidateOmp)->Args({263, 16})->Args({500, 60});
BENCHMARK(BM_VifSerial)->Args({263, 16})->Args({500, 60});
BENCHMARK(BM_VifOmp)->Args({263, 16})->Args({500, 60});

BENCHMARK_MAIN();
