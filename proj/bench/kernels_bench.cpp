// Serial reference vs OpenMP kernels on autoencoder-sized layers.
// Run with OMP_NUM_THREADS=N to vary the parallel side.

#include <random>

#include <benchmark/benchmark.h>

#include "rotortrack/autoencoder/model.hpp"
#include "rotortrack/neural/layers.hpp"

using namespace rotortrack;
using namespace rotortrack::neural;

namespace {

constexpr std::size_t kBatch = 32;

Tensor3 random_tensor(std::size_t b, std::size_t l, std::size_t c) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1, 1);
  Tensor3 t(b, l, c);
  for (auto& v : t.values()) v = u(rng);
  return t;
}

template <class Layer>
void fill(Layer& layer) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-0.1, 0.1);
  for (auto& w : layer.weights) w = u(rng);
}

// First encoder stage: 100 x 6 -> 50 x 16.
Conv1DLayer conv() {
  auto l = Conv1DLayer::zeros(7, 2, 6, 16);
  fill(l);
  return l;
}

// Second decoder stage: 25 x 32 -> 50 x 16.
ConvTranspose1DLayer convt() {
  auto l = ConvTranspose1DLayer::zeros(5, 2, 32, 16);
  fill(l);
  return l;
}

// Bottleneck expansion: 16 -> 13 * 64.
DenseLayer dense() {
  auto l = DenseLayer::zeros(16, 13 * 64);
  fill(l);
  return l;
}

template <auto Fn, class Layer>
void run_forward(benchmark::State& state, Layer layer, Tensor3 x) {
  for (auto _ : state) benchmark::DoNotOptimize(Fn(layer, x));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * x.batch()));
}

template <auto Fwd, auto Bwd, class Layer>
void run_backward(benchmark::State& state, Layer layer, Tensor3 x) {
  Tensor3 g = Fwd(layer, x);
  for (auto& v : g.values()) v = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(Bwd(layer, x, g));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * x.batch()));
}

void BM_Conv1dForwardSerial(benchmark::State& s) { run_forward<serial::conv1d_forward>(s, conv(), random_tensor(kBatch, 100, 6)); }
void BM_Conv1dForwardOmp(benchmark::State& s) { run_forward<conv1d_forward>(s, conv(), random_tensor(kBatch, 100, 6)); }
void BM_Conv1dBackwardSerial(benchmark::State& s) {
  run_backward<serial::conv1d_forward, serial::conv1d_backward>(s, conv(), random_tensor(kBatch, 100, 6));
}
void BM_Conv1dBackwardOmp(benchmark::State& s) {
  run_backward<conv1d_forward, conv1d_backward>(s, conv(), random_tensor(kBatch, 100, 6));
}
void BM_ConvTForwardSerial(benchmark::State& s) {
  run_forward<serial::convtranspose1d_forward>(s, convt(), random_tensor(kBatch, 25, 32));
}
void BM_ConvTForwardOmp(benchmark::State& s) {
  run_forward<convtranspose1d_forward>(s, convt(), random_tensor(kBatch, 25, 32));
}
void BM_ConvTBackwardSerial(benchmark::State& s) {
  run_backward<serial::convtranspose1d_forward, serial::convtranspose1d_backward>(s, convt(),
                                                                                  random_tensor(kBatch, 25, 32));
}
void BM_ConvTBackwardOmp(benchmark::State& s) {
  run_backward<convtranspose1d_forward, convtranspose1d_backward>(s, convt(), random_tensor(kBatch, 25, 32));
}
void BM_DenseForwardSerial(benchmark::State& s) { run_forward<serial::dense_forward>(s, dense(), random_tensor(kBatch, 1, 16)); }
void BM_DenseForwardOmp(benchmark::State& s) { run_forward<dense_forward>(s, dense(), random_tensor(kBatch, 1, 16)); }

void BM_ModelReconstruct(benchmark::State& state) {
  auto model = Autoencoder::build(AutoencoderSpec{});
  Tensor3 x = random_tensor(kBatch, 100, 6);
  for (auto _ : state) benchmark::DoNotOptimize(model.reconstruct(x));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * kBatch));
}

}  // namespace

BENCHMARK(BM_Conv1dForwardSerial);
BENCHMARK(BM_Conv1dForwardOmp);
BENCHMARK(BM_Conv1dBackwardSerial);
BENCHMARK(BM_Conv1dBackwardOmp);
BENCHMARK(BM_ConvTForwardSerial);
BENCHMARK(BM_ConvTForwardOmp);
BENCHMARK(BM_ConvTBackwardSerial);
BENCHMARK(BM_ConvTBackwardOmp);
BENCHMARK(BM_DenseForwardSerial);
BENCHMARK(BM_DenseForwardOmp);
BENCHMARK(BM_ModelReconstruct);

BENCHMARK_MAIN();
