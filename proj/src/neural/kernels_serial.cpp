#include <cstdint>

#include "kernels_detail.hpp"
#include "rotortrack/neural/layers.hpp"

namespace rotortrack::neural::serial {

using detail::expect_channels;
using detail::expect_shape;

Tensor3 conv1d_forward(const Conv1DLayer& layer, const Tensor3& x) {
  expect_channels("conv1d_forward", x, layer.in_channels);
  const auto L = static_cast<std::int64_t>(x.length());
  const std::size_t out_len = layer.output_length(x.length());
  const auto pad = static_cast<std::int64_t>(layer.pad_left());
  Tensor3 y(x.batch(), out_len, layer.out_channels);
  for (std::size_t b = 0; b < x.batch(); ++b) {
    for (std::size_t o = 0; o < out_len; ++o) {
      for (std::size_t co = 0; co < layer.out_channels; ++co) {
        real acc = layer.bias[co];
        for (std::size_t j = 0; j < layer.kernel; ++j) {
          std::int64_t i = static_cast<std::int64_t>(o * layer.stride + j) - pad;
          if (i < 0 || i >= L) continue;
          for (std::size_t ci = 0; ci < layer.in_channels; ++ci) {
            acc += x(b, static_cast<std::size_t>(i), ci) * layer.weights[layer.weight_index(j, ci, co)];
          }
        }
        y(b, o, co) = acc;
      }
    }
  }
  return y;
}

LayerGrads conv1d_backward(const Conv1DLayer& layer, const Tensor3& x, const Tensor3& grad_out) {
  expect_channels("conv1d_backward", x, layer.in_channels);
  const auto L = static_cast<std::int64_t>(x.length());
  const std::size_t out_len = layer.output_length(x.length());
  expect_shape("conv1d_backward", grad_out, x.batch(), out_len, layer.out_channels);
  const auto pad = static_cast<std::int64_t>(layer.pad_left());

  LayerGrads g{Tensor3(x.batch(), x.length(), x.channels()),
               std::vector<real>(layer.weights.size(), real(0)),
               std::vector<real>(layer.bias.size(), real(0))};
  for (std::size_t b = 0; b < x.batch(); ++b)
    for (std::size_t o = 0; o < out_len; ++o)
      for (std::size_t co = 0; co < layer.out_channels; ++co) g.bias[co] += grad_out(b, o, co);

  for (std::size_t b = 0; b < x.batch(); ++b) {
    for (std::size_t o = 0; o < out_len; ++o) {
      for (std::size_t j = 0; j < layer.kernel; ++j) {
        std::int64_t i = static_cast<std::int64_t>(o * layer.stride + j) - pad;
        if (i < 0 || i >= L) continue;
        auto iu = static_cast<std::size_t>(i);
        for (std::size_t ci = 0; ci < layer.in_channels; ++ci) {
          for (std::size_t co = 0; co < layer.out_channels; ++co) {
            const std::size_t w = layer.weight_index(j, ci, co);
            g.weights[w] += x(b, iu, ci) * grad_out(b, o, co);
            g.input(b, iu, ci) += layer.weights[w] * grad_out(b, o, co);
          }
        }
      }
    }
  }
  return g;
}

Tensor3 convtranspose1d_forward(const ConvTranspose1DLayer& layer, const Tensor3& x) {
  expect_channels("convtranspose1d_forward", x, layer.in_channels);
  const std::size_t out_len = layer.output_length(x.length());
  const auto N = static_cast<std::int64_t>(out_len);
  const auto pad = static_cast<std::int64_t>(layer.pad_left());
  Tensor3 y(x.batch(), out_len, layer.out_channels);
  for (std::size_t b = 0; b < x.batch(); ++b)
    for (std::size_t i = 0; i < out_len; ++i)
      for (std::size_t co = 0; co < layer.out_channels; ++co) y(b, i, co) = layer.bias[co];

  for (std::size_t b = 0; b < x.batch(); ++b) {
    for (std::size_t o = 0; o < x.length(); ++o) {
      for (std::size_t j = 0; j < layer.kernel; ++j) {
        std::int64_t i = static_cast<std::int64_t>(o * layer.stride + j) - pad;
        if (i < 0 || i >= N) continue;
        auto iu = static_cast<std::size_t>(i);
        for (std::size_t ci = 0; ci < layer.in_channels; ++ci)
          for (std::size_t co = 0; co < layer.out_channels; ++co)
            y(b, iu, co) += x(b, o, ci) * layer.weights[layer.weight_index(j, ci, co)];
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

  LayerGrads g{Tensor3(x.batch(), x.length(), x.channels()),
               std::vector<real>(layer.weights.size(), real(0)),
               std::vector<real>(layer.bias.size(), real(0))};
  for (std::size_t b = 0; b < x.batch(); ++b)
    for (std::size_t i = 0; i < out_len; ++i)
      for (std::size_t co = 0; co < layer.out_channels; ++co) g.bias[co] += grad_out(b, i, co);

  for (std::size_t b = 0; b < x.batch(); ++b) {
    for (std::size_t o = 0; o < x.length(); ++o) {
      for (std::size_t j = 0; j < layer.kernel; ++j) {
        std::int64_t i = static_cast<std::int64_t>(o * layer.stride + j) - pad;
        if (i < 0 || i >= N) continue;
        auto iu = static_cast<std::size_t>(i);
        for (std::size_t ci = 0; ci < layer.in_channels; ++ci) {
          for (std::size_t co = 0; co < layer.out_channels; ++co) {
            const std::size_t w = layer.weight_index(j, ci, co);
            g.input(b, o, ci) += layer.weights[w] * grad_out(b, iu, co);
            g.weights[w] += x(b, o, ci) * grad_out(b, iu, co);
          }
        }
      }
    }
  }
  return g;
}

Tensor3 dense_forward(const DenseLayer& layer, const Tensor3& x) {
  if (x.item_size() != layer.in_dim) throw ShapeMismatch("dense_forward: input size mismatch");
  Tensor3 y(x.batch(), 1, layer.out_dim);
  for (std::size_t b = 0; b < x.batch(); ++b) {
    auto in = x.item(b);
    for (std::size_t o = 0; o < layer.out_dim; ++o) {
      real acc = layer.bias[o];
      for (std::size_t i = 0; i < layer.in_dim; ++i) acc += in[i] * layer.weights[i * layer.out_dim + o];
      y(b, 0, o) = acc;
    }
  }
  return y;
}

LayerGrads dense_backward(const DenseLayer& layer, const Tensor3& x, const Tensor3& grad_out) {
  if (x.item_size() != layer.in_dim) throw ShapeMismatch("dense_backward: input size mismatch");
  expect_shape("dense_backward", grad_out, x.batch(), 1, layer.out_dim);
  LayerGrads g{Tensor3(x.batch(), x.length(), x.channels()),
               std::vector<real>(layer.weights.size(), real(0)),
               std::vector<real>(layer.bias.size(), real(0))};
  for (std::size_t b = 0; b < x.batch(); ++b)
    for (std::size_t o = 0; o < layer.out_dim; ++o) g.bias[o] += grad_out(b, 0, o);
  for (std::size_t b = 0; b < x.batch(); ++b) {
    auto in = x.item(b);
    auto gin = g.input.item(b);
    for (std::size_t i = 0; i < layer.in_dim; ++i) {
      for (std::size_t o = 0; o < layer.out_dim; ++o) {
        g.weights[i * layer.out_dim + o] += in[i] * grad_out(b, 0, o);
        gin[i] += layer.weights[i * layer.out_dim + o] * grad_out(b, 0, o);
      }
    }
  }
  return g;
}

}  // namespace rotortrack::neural::serial
