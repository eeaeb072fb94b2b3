#include <algorithm>
#include <cstdint>

#include "kernels_detail.hpp"
#include "rotortrack/neural/layers.hpp"

namespace rotortrack::neural {

using detail::expect_channels;
using detail::expect_shape;
using detail::taps_for;

Tensor3 conv1d_forward(const Conv1DLayer& layer, const Tensor3& x) {
  expect_channels("conv1d_forward", x, layer.in_channels);
  const std::size_t out_len = layer.output_length(x.length());
  const auto L = static_cast<std::int64_t>(x.length());
  const auto pad = static_cast<std::int64_t>(layer.pad_left());
  const std::size_t cin = layer.in_channels;
  const std::size_t cout = layer.out_channels;
  Tensor3 y(x.batch(), out_len, cout);
  const auto rows = static_cast<std::int64_t>(x.batch() * out_len);

#pragma omp parallel for schedule(static)
  for (std::int64_t r = 0; r < rows; ++r) {
    const std::size_t b = static_cast<std::size_t>(r) / out_len;
    const std::size_t o = static_cast<std::size_t>(r) % out_len;
    real* row = y.row(b, o);
    std::copy(layer.bias.begin(), layer.bias.end(), row);
    for (std::size_t j = 0; j < layer.kernel; ++j) {
      std::int64_t i = static_cast<std::int64_t>(o * layer.stride + j) - pad;
      if (i < 0 || i >= L) continue;
      const real* xin = x.row(b, static_cast<std::size_t>(i));
      for (std::size_t ci = 0; ci < cin; ++ci) {
        const real xv = xin[ci];
        const real* w = &layer.weights[layer.weight_index(j, ci, 0)];
        for (std::size_t co = 0; co < cout; ++co) row[co] += xv * w[co];
      }
    }
  }
  return y;
}

LayerGrads conv1d_backward(const Conv1DLayer& layer, const Tensor3& x, const Tensor3& grad_out) {
  expect_channels("conv1d_backward", x, layer.in_channels);
  const std::size_t out_len = layer.output_length(x.length());
  expect_shape("conv1d_backward", grad_out, x.batch(), out_len, layer.out_channels);
  const auto L = static_cast<std::int64_t>(x.length());
  const auto pad = static_cast<std::int64_t>(layer.pad_left());
  const auto k = static_cast<std::int64_t>(layer.kernel);
  const auto s = static_cast<std::int64_t>(layer.stride);
  const std::size_t cin = layer.in_channels;
  const std::size_t cout = layer.out_channels;
  const std::size_t batch = x.batch();

  LayerGrads g{Tensor3(batch, x.length(), cin), std::vector<real>(layer.weights.size(), real(0)),
               std::vector<real>(cout, real(0))};

#pragma omp parallel for schedule(static)
  for (std::int64_t co = 0; co < static_cast<std::int64_t>(cout); ++co) {
    real acc = 0;
    for (std::size_t b = 0; b < batch; ++b)
      for (std::size_t o = 0; o < out_len; ++o) acc += grad_out(b, o, static_cast<std::size_t>(co));
    g.bias[static_cast<std::size_t>(co)] = acc;
  }

  // Weight gradient: one (tap, input channel) row per iteration.
#pragma omp parallel for schedule(static)
  for (std::int64_t r = 0; r < static_cast<std::int64_t>(layer.kernel * cin); ++r) {
    const std::size_t j = static_cast<std::size_t>(r) / cin;
    const std::size_t ci = static_cast<std::size_t>(r) % cin;
    real* gw = &g.weights[layer.weight_index(j, ci, 0)];
    for (std::size_t b = 0; b < batch; ++b) {
      for (std::size_t o = 0; o < out_len; ++o) {
        std::int64_t i = static_cast<std::int64_t>(o * layer.stride + j) - pad;
        if (i < 0 || i >= L) continue;
        const real xv = x(b, static_cast<std::size_t>(i), ci);
        const real* go = grad_out.row(b, o);
        for (std::size_t co = 0; co < cout; ++co) gw[co] += xv * go[co];
      }
    }
  }

  // Input gradient gathered per input position.
  const auto rows = static_cast<std::int64_t>(batch * x.length());
#pragma omp parallel for schedule(static)
  for (std::int64_t r = 0; r < rows; ++r) {
    const std::size_t b = static_cast<std::size_t>(r) / x.length();
    const std::int64_t i = r % L;
    real* gx = g.input.row(b, static_cast<std::size_t>(i));
    auto taps = taps_for(i, pad, k, s, static_cast<std::int64_t>(out_len));
    for (std::int64_t o = taps.lo; o < taps.hi; ++o) {
      const auto j = static_cast<std::size_t>(i + pad - o * s);
      const real* go = grad_out.row(b, static_cast<std::size_t>(o));
      for (std::size_t ci = 0; ci < cin; ++ci) {
        const real* w = &layer.weights[layer.weight_index(j, ci, 0)];
        real acc = gx[ci];
        for (std::size_t co = 0; co < cout; ++co) acc += w[co] * go[co];
        gx[ci] = acc;
      }
    }
  }
  return g;
}

Tensor3 convtranspose1d_forward(const ConvTranspose1DLayer& layer, const Tensor3& x) {
  expect_channels("convtranspose1d_forward", x, layer.in_channels);
  const std::size_t out_len = layer.output_length(x.length());
  const auto pad = static_cast<std::int64_t>(layer.pad_left());
  const auto k = static_cast<std::int64_t>(layer.kernel);
  const auto s = static_cast<std::int64_t>(layer.stride);
  const std::size_t cin = layer.in_channels;
  const std::size_t cout = layer.out_channels;
  Tensor3 y(x.batch(), out_len, cout);
  const auto rows = static_cast<std::int64_t>(x.batch() * out_len);

#pragma omp parallel for schedule(static)
  for (std::int64_t r = 0; r < rows; ++r) {
    const std::size_t b = static_cast<std::size_t>(r) / out_len;
    const auto i = static_cast<std::int64_t>(static_cast<std::size_t>(r) % out_len);
    real* row = y.row(b, static_cast<std::size_t>(i));
    std::copy(layer.bias.begin(), layer.bias.end(), row);
    auto taps = taps_for(i, pad, k, s, static_cast<std::int64_t>(x.length()));
    for (std::int64_t o = taps.lo; o < taps.hi; ++o) {
      const auto j = static_cast<std::size_t>(i + pad - o * s);
      const real* xin = x.row(b, static_cast<std::size_t>(o));
      for (std::size_t ci = 0; ci < cin; ++ci) {
        const real xv = xin[ci];
        const real* w = &layer.weights[layer.weight_index(j, ci, 0)];
        for (std::size_t co = 0; co < cout; ++co) row[co] += xv * w[co];
      }
    }
  }
  return y;
}

LayerGrads convtranspose1d_backward(const ConvTranspose1DLayer& layer, const Tensor3& x,
                                    const Tensor3& grad_out) {
  expect_channels("convtranspose1d_backward", x, layer.in_channels);
  const std::size_t out_len = layer.output_length(x.length());
  expect_shape("convtranspose1d_backward", grad_out, x.batch(), out_len, layer.out_channels);
  const auto N = static_cast<std::int64_t>(out_len);
  const auto pad = static_cast<std::int64_t>(layer.pad_left());
  const std::size_t cin = layer.in_channels;
  const std::size_t cout = layer.out_channels;
  const std::size_t batch = x.batch();
  const std::size_t in_len = x.length();

  LayerGrads g{Tensor3(batch, in_len, cin), std::vector<real>(layer.weights.size(), real(0)),
               std::vector<real>(cout, real(0))};

#pragma omp parallel for schedule(static)
  for (std::int64_t co = 0; co < static_cast<std::int64_t>(cout); ++co) {
    real acc = 0;
    for (std::size_t b = 0; b < batch; ++b)
      for (std::size_t i = 0; i < out_len; ++i) acc += grad_out(b, i, static_cast<std::size_t>(co));
    g.bias[static_cast<std::size_t>(co)] = acc;
  }

#pragma omp parallel for schedule(static)
  for (std::int64_t r = 0; r < static_cast<std::int64_t>(layer.kernel * cin); ++r) {
    const std::size_t j = static_cast<std::size_t>(r) / cin;
    const std::size_t ci = static_cast<std::size_t>(r) % cin;
    real* gw = &g.weights[layer.weight_index(j, ci, 0)];
    for (std::size_t b = 0; b < batch; ++b) {
      for (std::size_t o = 0; o < in_len; ++o) {
        std::int64_t i = static_cast<std::int64_t>(o * layer.stride + j) - pad;
        if (i < 0 || i >= N) continue;
        const real xv = x(b, o, ci);
        const real* go = grad_out.row(b, static_cast<std::size_t>(i));
        for (std::size_t co = 0; co < cout; ++co) gw[co] += xv * go[co];
      }
    }
  }

  const auto rows = static_cast<std::int64_t>(batch * in_len);
#pragma omp parallel for schedule(static)
  for (std::int64_t r = 0; r < rows; ++r) {
    const std::size_t b = static_cast<std::size_t>(r) / in_len;
    const std::size_t o = static_cast<std::size_t>(r) % in_len;
    real* gx = g.input.row(b, o);
    for (std::size_t j = 0; j < layer.kernel; ++j) {
      std::int64_t i = static_cast<std::int64_t>(o * layer.stride + j) - pad;
      if (i < 0 || i >= N) continue;
      const real* go = grad_out.row(b, static_cast<std::size_t>(i));
      for (std::size_t ci = 0; ci < cin; ++ci) {
        const real* w = &layer.weights[layer.weight_index(j, ci, 0)];
        real acc = gx[ci];
        for (std::size_t co = 0; co < cout; ++co) acc += w[co] * go[co];
        gx[ci] = acc;
      }
    }
  }
  return g;
}

Tensor3 dense_forward(const DenseLayer& layer, const Tensor3& x) {
  if (x.item_size() != layer.in_dim) throw ShapeMismatch("dense_forward: input size mismatch");
  Tensor3 y(x.batch(), 1, layer.out_dim);
#pragma omp parallel for schedule(static)
  for (std::int64_t bi = 0; bi < static_cast<std::int64_t>(x.batch()); ++bi) {
    const auto b = static_cast<std::size_t>(bi);
    auto in = x.item(b);
    real* row = y.row(b, 0);
    std::copy(layer.bias.begin(), layer.bias.end(), row);
    for (std::size_t i = 0; i < layer.in_dim; ++i) {
      const real xv = in[i];
      const real* w = &layer.weights[i * layer.out_dim];
      for (std::size_t o = 0; o < layer.out_dim; ++o) row[o] += xv * w[o];
    }
  }
  return y;
}

LayerGrads dense_backward(const DenseLayer& layer, const Tensor3& x, const Tensor3& grad_out) {
  if (x.item_size() != layer.in_dim) throw ShapeMismatch("dense_backward: input size mismatch");
  expect_shape("dense_backward", grad_out, x.batch(), 1, layer.out_dim);
  const std::size_t batch = x.batch();
  const std::size_t out = layer.out_dim;
  LayerGrads g{Tensor3(batch, x.length(), x.channels()),
               std::vector<real>(layer.weights.size(), real(0)), std::vector<real>(out, real(0))};

  for (std::size_t b = 0; b < batch; ++b)
    for (std::size_t o = 0; o < out; ++o) g.bias[o] += grad_out(b, 0, o);

#pragma omp parallel for schedule(static)
  for (std::int64_t ii = 0; ii < static_cast<std::int64_t>(layer.in_dim); ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    real* gw = &g.weights[i * out];
    for (std::size_t b = 0; b < batch; ++b) {
      const real xv = x.item(b)[i];
      const real* go = grad_out.row(b, 0);
      for (std::size_t o = 0; o < out; ++o) gw[o] += xv * go[o];
    }
  }

#pragma omp parallel for schedule(static)
  for (std::int64_t bi = 0; bi < static_cast<std::int64_t>(batch); ++bi) {
    const auto b = static_cast<std::size_t>(bi);
    auto gin = g.input.item(b);
    const real* go = grad_out.row(b, 0);
    for (std::size_t i = 0; i < layer.in_dim; ++i) {
      const real* w = &layer.weights[i * out];
      real acc = 0;
      for (std::size_t o = 0; o < out; ++o) acc += w[o] * go[o];
      gin[i] = acc;
    }
  }
  return g;
}

Tensor3 relu_forward(const Tensor3& x) {
  Tensor3 y = x;
  for (real& v : y.values()) v = v > real(0) ? v : real(0);
  return y;
}

Tensor3 relu_backward(const Tensor3& x, const Tensor3& grad_out) {
  if (!x.same_shape(grad_out)) throw ShapeMismatch("relu_backward: shape mismatch");
  Tensor3 g = grad_out;
  auto xs = x.values();
  auto gs = g.values();
  for (std::size_t n = 0; n < gs.size(); ++n) {
    if (!(xs[n] > real(0))) gs[n] = real(0);
  }
  return g;
}

}  // namespace rotortrack::neural
