// Compares the serial and OpenMP code paths of the batched linear-layer
// kernels.  Before timing anything it asserts that both paths produce
// bitwise-identical output, which is the property the rest of the project
// relies on for reproducibility.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <cstdio>
#include <cstdlib>
#include <vector>

#include "coverart/dense_net.h"
#include "coverart/kernels.h"
#include "coverart/rng.h"

using namespace coverart;

namespace {

constexpr size_t kBatch = 64;
constexpr size_t kIn = 256;
constexpr size_t kOut = 3072;

struct Workload {
  std::vector<double> W, b, X, dY;
  Workload() : W(kOut * kIn), b(kOut), X(kBatch * kIn), dY(kBatch * kOut) {
    Rng r(123);
    for (auto& v : W) v = r.normal() * 0.05;
    for (auto& v : b) v = r.normal() * 0.05;
    for (auto& v : X) v = r.normal();
    for (auto& v : dY) v = r.normal();
  }
};

const Workload& workload() {
  static Workload w;
  return w;
}

void require_bitwise_equal() {
  const Workload& w = workload();
  std::vector<double> ys(kBatch * kOut), yp(kBatch * kOut);
  std::vector<double> dxs(kBatch * kIn), dxp(kBatch * kIn);
  std::vector<double> dws(kOut * kIn, 0), dwp(kOut * kIn, 0);
  std::vector<double> dbs(kOut, 0), dbp(kOut, 0);

  linear_forward_batch(w.W.data(), w.b.data(), w.X.data(), ys.data(), kBatch,
                       kOut, kIn, false);
  linear_forward_batch(w.W.data(), w.b.data(), w.X.data(), yp.data(), kBatch,
                       kOut, kIn, true);
  linear_backward_data(w.W.data(), w.dY.data(), dxs.data(), kBatch, kOut, kIn,
                       false);
  linear_backward_data(w.W.data(), w.dY.data(), dxp.data(), kBatch, kOut, kIn,
                       true);
  linear_backward_weights(w.X.data(), w.dY.data(), dws.data(), dbs.data(),
                          kBatch, kOut, kIn, false);
  linear_backward_weights(w.X.data(), w.dY.data(), dwp.data(), dbp.data(),
                          kBatch, kOut, kIn, true);

  if (ys != yp || dxs != dxp || dws != dwp || dbs != dbp) {
    std::fprintf(stderr,
                 "serial and parallel kernels disagree bitwise; aborting\n");
    std::abort();
  }
  std::fprintf(stderr,
               "serial/parallel bitwise equality verified (%d threads)\n",
               omp_get_max_threads());
}

void BM_forward(benchmark::State& state) {
  const Workload& w = workload();
  const bool parallel = state.range(0) != 0;
  std::vector<double> Y(kBatch * kOut);
  for (auto _ : state) {
    linear_forward_batch(w.W.data(), w.b.data(), w.X.data(), Y.data(), kBatch,
                         kOut, kIn, parallel);
    benchmark::DoNotOptimize(Y.data());
  }
  state.SetItemsProcessed(int64_t(state.iterations()) * kBatch * kOut * kIn);
}

void BM_backward_data(benchmark::State& state) {
  const Workload& w = workload();
  const bool parallel = state.range(0) != 0;
  std::vector<double> dX(kBatch * kIn);
  for (auto _ : state) {
    linear_backward_data(w.W.data(), w.dY.data(), dX.data(), kBatch, kOut, kIn,
                         parallel);
    benchmark::DoNotOptimize(dX.data());
  }
  state.SetItemsProcessed(int64_t(state.iterations()) * kBatch * kOut * kIn);
}

void BM_backward_weights(benchmark::State& state) {
  const Workload& w = workload();
  const bool parallel = state.range(0) != 0;
  std::vector<double> dW(kOut * kIn), db(kOut);
  for (auto _ : state) {
    std::fill(dW.begin(), dW.end(), 0.0);
    std::fill(db.begin(), db.end(), 0.0);
    linear_backward_weights(w.X.data(), w.dY.data(), dW.data(), db.data(),
                            kBatch, kOut, kIn, parallel);
    benchmark::DoNotOptimize(dW.data());
  }
  state.SetItemsProcessed(int64_t(state.iterations()) * kBatch * kOut * kIn);
}

BENCHMARK(BM_forward)->Arg(0)->Name("forward/serial");
BENCHMARK(BM_forward)->Arg(1)->Name("forward/parallel");
BENCHMARK(BM_backward_data)->Arg(0)->Name("backward_data/serial");
BENCHMARK(BM_backward_data)->Arg(1)->Name("backward_data/parallel");
BENCHMARK(BM_backward_weights)->Arg(0)->Name("backward_weights/serial");
BENCHMARK(BM_backward_weights)->Arg(1)->Name("backward_weights/parallel");

}  // namespace

int main(int argc, char** argv) {
  require_bitwise_equal();
  benchmark::Initialize(&argc, argv);
  benchmark::RunSpecifiedBenchmarks();
  return 0;
}
