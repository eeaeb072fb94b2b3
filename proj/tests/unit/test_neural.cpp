#include <gtest/gtest.h>
#include <omp.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rotortrack/error.hpp"
#include "rotortrack/neural/adam.hpp"
#include "rotortrack/neural/layers.hpp"
#include "rotortrack/neural/loss.hpp"

using namespace rotortrack;
using namespace rotortrack::neural;

namespace {

double max_rel(std::span<const real> analytic, const std::vector<double>& numeric) {
  double worst = 0;
  for (std::size_t i = 0; i < numeric.size(); ++i) {
    worst = std::max(worst, oracle::relative_error(analytic[i], numeric[i]));
  }
  return worst;
}

Conv1DLayer random_conv(std::mt19937_64& rng, std::size_t k, std::size_t s, std::size_t cin,
                        std::size_t cout, Padding pad) {
  auto layer = Conv1DLayer::zeros(k, s, cin, cout, pad);
  oracle::randomize(rng, layer.weights);
  oracle::randomize(rng, layer.bias);
  return layer;
}

}  // namespace

TEST(Conv1D, IdentityKernelReturnsInput) {
  std::mt19937_64 rng(1);
  auto layer = Conv1DLayer::zeros(1, 1, 3, 3);
  for (std::size_t c = 0; c < 3; ++c) layer.weights[layer.weight_index(0, c, c)] = 1;
  Tensor3 x = oracle::random_tensor(rng, 2, 7, 3);
  EXPECT_EQ(conv1d_forward(layer, x), x);
}

TEST(Conv1D, MatchesNaiveDirectConvolution) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<std::size_t> ks(1, 7), ss(1, 3), cs(1, 5), ls(7, 30), bs(1, 3);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t k = ks(rng), s = ss(rng), cin = cs(rng), cout = cs(rng), L = ls(rng), B = bs(rng);
    Padding pad = trial % 2 ? Padding::valid : Padding::same;
    auto layer = random_conv(rng, k, s, cin, cout, pad);
    Tensor3 x = oracle::random_tensor(rng, B, L, cin);
    Tensor3 expected = oracle::naive_conv1d(x, layer.weights, layer.bias, k, s, pad == Padding::same);
    Tensor3 got = conv1d_forward(layer, x);
    ASSERT_TRUE(got.same_shape(expected)) << "trial " << trial;
    EXPECT_LT(oracle::max_abs_diff(got, expected), 1e-12) << "trial " << trial;
  }
}

TEST(Conv1D, SamePaddingOutputLengthIsCeilLOverS) {
  auto layer = Conv1DLayer::zeros(7, 2, 1, 1);
  EXPECT_EQ(layer.output_length(100), 50u);
  EXPECT_EQ(Conv1DLayer::zeros(3, 2, 1, 1).output_length(25), 13u);
}

TEST(Conv1D, GradientsMatchFiniteDifferences) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    std::mt19937_64 rng(seed);
    // 5*5*8 + 8 = 208 parameters.
    auto layer = random_conv(rng, 5, 2, 5, 8, seed % 2 ? Padding::valid : Padding::same);
    Tensor3 x = oracle::random_tensor(rng, 2, 12, 5);
    Tensor3 r = oracle::random_tensor(rng, 2, layer.output_length(12), 8);
    auto forward = [&] { return conv1d_forward(layer, x); };
    auto g = conv1d_backward(layer, x, r);

    EXPECT_LT(max_rel(g.weights, oracle::central_differences_vjp(layer.weights, forward, r)), 1e-6) << seed;
    EXPECT_LT(max_rel(g.bias, oracle::central_differences_vjp(layer.bias, forward, r)), 1e-6) << seed;
    EXPECT_LT(max_rel(g.input.values(), oracle::central_differences_vjp(x.values(), forward, r)), 1e-6) << seed;
  }
}

TEST(Conv1D, ShapeErrors) {
  auto layer = Conv1DLayer::zeros(3, 1, 2, 2, Padding::valid);
  EXPECT_THROW(conv1d_forward(layer, Tensor3(1, 5, 3)), ShapeMismatch);
  EXPECT_THROW(conv1d_forward(layer, Tensor3(1, 2, 2)), ShapeMismatch);
  EXPECT_THROW(conv1d_backward(layer, Tensor3(1, 5, 2), Tensor3(1, 4, 2)), ShapeMismatch);
  EXPECT_THROW(Conv1DLayer::zeros(0, 1, 1, 1), InvalidArgument);
}

TEST(ConvTranspose1D, IdentityKernelReturnsInput) {
  std::mt19937_64 rng(2);
  auto layer = ConvTranspose1DLayer::zeros(1, 1, 4, 4);
  for (std::size_t c = 0; c < 4; ++c) layer.weights[layer.weight_index(0, c, c)] = 1;
  Tensor3 x = oracle::random_tensor(rng, 3, 9, 4);
  EXPECT_EQ(convtranspose1d_forward(layer, x), x);
}

TEST(ConvTranspose1D, IsAdjointOfConv1D) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> ks(1, 7), ss(1, 3), cs(1, 5), ls(8, 31);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t k = ks(rng), s = ss(rng), c = cs(rng), d = cs(rng), N = ls(rng);
    Padding pad = trial % 2 ? Padding::valid : Padding::same;
    auto conv = random_conv(rng, k, s, c, d, pad);
    std::fill(conv.bias.begin(), conv.bias.end(), 0.0);
    const std::size_t L = conv.output_length(N);

    auto convt = ConvTranspose1DLayer::zeros(k, s, d, c, pad, N);
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t ci = 0; ci < c; ++ci)
        for (std::size_t co = 0; co < d; ++co)
          convt.weights[convt.weight_index(j, co, ci)] = conv.weights[conv.weight_index(j, ci, co)];

    Tensor3 x = oracle::random_tensor(rng, 2, N, c);
    Tensor3 y = oracle::random_tensor(rng, 2, L, d);
    Tensor3 ty = convtranspose1d_forward(convt, y);
    ASSERT_TRUE(ty.same_shape(x)) << "trial " << trial;
    EXPECT_NEAR(oracle::dot(conv1d_forward(conv, x), y), oracle::dot(x, ty), 1e-10) << "trial " << trial;
  }
}

TEST(ConvTranspose1D, SamePaddingOutputIsLengthTimesStride) {
  for (std::size_t k = 1; k <= 7; ++k)
    for (std::size_t s = 1; s <= 4; ++s)
      for (std::size_t L : {1u, 5u, 13u}) {
        auto layer = ConvTranspose1DLayer::zeros(k, s, 2, 3);
        EXPECT_EQ(convtranspose1d_forward(layer, Tensor3(1, L, 2)).length(), L * s);
      }
}

TEST(ConvTranspose1D, FixedOutputLengthMustBeReachable) {
  auto ok = ConvTranspose1DLayer::zeros(3, 2, 1, 1, Padding::same, 25);
  EXPECT_EQ(convtranspose1d_forward(ok, Tensor3(1, 13, 1)).length(), 25u);
  auto bad = ConvTranspose1DLayer::zeros(3, 2, 1, 1, Padding::same, 24);
  EXPECT_THROW(convtranspose1d_forward(bad, Tensor3(1, 13, 1)), ShapeMismatch);
}

TEST(ConvTranspose1D, GradientsMatchFiniteDifferences) {
  for (std::uint64_t seed = 10; seed < 15; ++seed) {
    std::mt19937_64 rng(seed);
    auto layer = ConvTranspose1DLayer::zeros(5, 2, 5, 8, seed % 2 ? Padding::valid : Padding::same,
                                             seed % 2 ? 0 : 11);
    oracle::randomize(rng, layer.weights);
    oracle::randomize(rng, layer.bias);
    Tensor3 x = oracle::random_tensor(rng, 2, 6, 5);
    Tensor3 r = oracle::random_tensor(rng, 2, layer.output_length(6), 8);
    auto forward = [&] { return convtranspose1d_forward(layer, x); };
    auto g = convtranspose1d_backward(layer, x, r);

    EXPECT_LT(max_rel(g.weights, oracle::central_differences_vjp(layer.weights, forward, r)), 1e-6) << seed;
    EXPECT_LT(max_rel(g.bias, oracle::central_differences_vjp(layer.bias, forward, r)), 1e-6) << seed;
    EXPECT_LT(max_rel(g.input.values(), oracle::central_differences_vjp(x.values(), forward, r)), 1e-6) << seed;
  }
}

TEST(Dense, IdentityMatrixReturnsInput) {
  std::mt19937_64 rng(4);
  auto layer = DenseLayer::zeros(6, 6);
  for (std::size_t i = 0; i < 6; ++i) layer.weights[i * 6 + i] = 1;
  Tensor3 x = oracle::random_tensor(rng, 3, 1, 6);
  EXPECT_EQ(dense_forward(layer, x), x);
}

TEST(Dense, FlattensLengthAndChannels) {
  auto layer = DenseLayer::zeros(12, 2);
  EXPECT_EQ(dense_forward(layer, Tensor3(2, 3, 4)).channels(), 2u);
  EXPECT_THROW(dense_forward(layer, Tensor3(2, 3, 3)), ShapeMismatch);
}

TEST(Dense, GradientsMatchFiniteDifferences) {
  for (std::uint64_t seed = 20; seed < 25; ++seed) {
    std::mt19937_64 rng(seed);
    auto layer = DenseLayer::zeros(20, 9);
    oracle::randomize(rng, layer.weights);
    oracle::randomize(rng, layer.bias);
    Tensor3 x = oracle::random_tensor(rng, 3, 4, 5);
    Tensor3 r = oracle::random_tensor(rng, 3, 1, 9);
    auto forward = [&] { return dense_forward(layer, x); };
    auto g = dense_backward(layer, x, r);

    EXPECT_LT(max_rel(g.weights, oracle::central_differences_vjp(layer.weights, forward, r)), 1e-6) << seed;
    EXPECT_LT(max_rel(g.bias, oracle::central_differences_vjp(layer.bias, forward, r)), 1e-6) << seed;
    EXPECT_LT(max_rel(g.input.values(), oracle::central_differences_vjp(x.values(), forward, r)), 1e-6) << seed;
  }
}

TEST(Relu, ForwardAndBackward) {
  Tensor3 x(1, 3, 1);
  x(0, 0, 0) = -1;
  x(0, 1, 0) = 0;
  x(0, 2, 0) = 2;
  Tensor3 y = relu_forward(x);
  EXPECT_EQ(y(0, 0, 0), 0);
  EXPECT_EQ(y(0, 1, 0), 0);
  EXPECT_EQ(y(0, 2, 0), 2);
  Tensor3 g = relu_backward(x, Tensor3(1, 3, 1, 5.0));
  EXPECT_EQ(g(0, 0, 0), 0);
  EXPECT_EQ(g(0, 1, 0), 0);
  EXPECT_EQ(g(0, 2, 0), 5);
}

TEST(Mae, HandComputedAndIdentity) {
  Tensor3 x(1, 2, 1), xp(1, 2, 1);
  x(0, 0, 0) = 1;
  x(0, 1, 0) = 2;
  xp(0, 0, 0) = 0;
  xp(0, 1, 0) = 4;
  EXPECT_DOUBLE_EQ(mae(x, xp), 1.5);
  EXPECT_EQ(mae(x, x), 0.0);
  EXPECT_THROW(mae(x, Tensor3(1, 3, 1)), ShapeMismatch);
}

TEST(Mae, EqualsElementwiseLoop) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    Tensor3 a = oracle::random_tensor(rng, 3, 17, 4), b = oracle::random_tensor(rng, 3, 17, 4);
    double sum = 0;
    for (std::size_t n = 0; n < a.size(); ++n) sum += std::fabs(a.values()[n] - b.values()[n]);
    EXPECT_EQ(mae(a, b), sum / static_cast<double>(a.size()));
  }
}

TEST(Mae, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(6);
  Tensor3 a = oracle::random_tensor(rng, 2, 5, 3), b = oracle::random_tensor(rng, 2, 5, 3);
  auto g = mae_gradient(a, b);
  auto fd = oracle::central_differences(b.values(), [&] { return mae(a, b); });
  EXPECT_LT(max_rel(g.values(), fd), 1e-6);
}

TEST(Adam, ZeroGradientLeavesParametersUnchanged) {
  std::vector<real> w{0.5, -1.0};
  std::vector<real> g{0.0, 0.0};
  AdamState state;
  std::vector<ParamSlot> slots{{w, g}};
  adam_step(slots, state);
  EXPECT_EQ(w[0], 0.5);
  EXPECT_EQ(w[1], -1.0);
  EXPECT_EQ(state.step, 1);
}

TEST(Adam, FirstStepMovesByLearningRate) {
  std::vector<real> w{2.0};
  std::vector<real> g{1.0};
  AdamState state;
  state.config.lr = 0.1;
  std::vector<ParamSlot> slots{{w, g}};
  adam_step(slots, state);
  EXPECT_NEAR(w[0], 2.0 - 0.1, 1e-6);
}

TEST(Adam, DescendsConvexQuadratic) {
  std::vector<real> w{1.0};
  std::vector<real> g{0.0};
  AdamState state;
  state.config.lr = 0.01;
  std::vector<ParamSlot> slots{{w, g}};
  double previous = std::abs(w[0]);
  for (int i = 0; i < 10; ++i) {
    g[0] = 2 * w[0];
    adam_step(slots, state);
    EXPECT_LT(std::abs(w[0]), previous);
    previous = std::abs(w[0]);
  }
}

TEST(Adam, RejectsShapeChanges) {
  std::vector<real> w{1.0, 2.0}, g{0.1, 0.1}, w2{1.0}, g2{1.0};
  AdamState state;
  std::vector<ParamSlot> slots{{w, g}};
  adam_step(slots, state);
  std::vector<ParamSlot> other{{w2, g2}};
  EXPECT_THROW(adam_step(other, state), ShapeMismatch);
}

// Parallel kernels must reproduce the serial reference bit for bit at any thread count.
TEST(ParallelKernels, BitIdenticalToSerialReference) {
  std::mt19937_64 rng(7);
  const int saved = omp_get_max_threads();
  for (int threads : {1, 3, 8}) {
    omp_set_num_threads(threads);
    auto conv = random_conv(rng, 5, 2, 6, 16, Padding::same);
    Tensor3 x = oracle::random_tensor(rng, 4, 50, 6);
    Tensor3 y = conv1d_forward(conv, x);
    EXPECT_EQ(y, serial::conv1d_forward(conv, x));
    Tensor3 gy = oracle::random_tensor(rng, 4, y.length(), 16);
    auto a = conv1d_backward(conv, x, gy);
    auto b = serial::conv1d_backward(conv, x, gy);
    EXPECT_EQ(a.input, b.input);
    EXPECT_EQ(a.weights, b.weights);
    EXPECT_EQ(a.bias, b.bias);

    auto convt = ConvTranspose1DLayer::zeros(7, 2, 16, 8, Padding::same, 49);
    oracle::randomize(rng, convt.weights);
    oracle::randomize(rng, convt.bias);
    Tensor3 z = oracle::random_tensor(rng, 4, 25, 16);
    Tensor3 zt = convtranspose1d_forward(convt, z);
    EXPECT_EQ(zt, serial::convtranspose1d_forward(convt, z));
    Tensor3 gz = oracle::random_tensor(rng, 4, 49, 8);
    auto c = convtranspose1d_backward(convt, z, gz);
    auto d = serial::convtranspose1d_backward(convt, z, gz);
    EXPECT_EQ(c.input, d.input);
    EXPECT_EQ(c.weights, d.weights);
    EXPECT_EQ(c.bias, d.bias);

    auto dense = DenseLayer::zeros(40, 12);
    oracle::randomize(rng, dense.weights);
    Tensor3 v = oracle::random_tensor(rng, 5, 8, 5);
    EXPECT_EQ(dense_forward(dense, v), serial::dense_forward(dense, v));
    Tensor3 gv = oracle::random_tensor(rng, 5, 1, 12);
    auto e = dense_backward(dense, v, gv);
    auto f = serial::dense_backward(dense, v, gv);
    EXPECT_EQ(e.input, f.input);
    EXPECT_EQ(e.weights, f.weights);
    EXPECT_EQ(e.bias, f.bias);
  }
  omp_set_num_threads(saved);
}

TEST(Layers, BoundedWeightsGiveFiniteOutputs) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 5; ++trial) {
    auto conv = random_conv(rng, 7, 2, 6, 16, Padding::same);
    oracle::randomize(rng, conv.weights, 10.0);
    Tensor3 x = oracle::random_tensor(rng, 2, 100, 6, 10.0);
    Tensor3 y = relu_forward(conv1d_forward(conv, x));
    EXPECT_TRUE(y.all_finite());
    auto g = conv1d_backward(conv, x, y);
    EXPECT_TRUE(g.input.all_finite());
  }
}
