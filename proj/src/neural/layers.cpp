#include "rotortrack/neural/layers.hpp"

#include <cmath>
#include <string>

#include "rotortrack/error.hpp"

namespace rotortrack::neural {

namespace {

void check_params(const char* what, std::size_t weights, std::size_t expected_weights,
                  std::size_t bias, std::size_t expected_bias) {
  if (weights != expected_weights || bias != expected_bias) {
    throw ShapeMismatch(std::string(what) + ": parameter buffers do not match layer shape");
  }
}

void check_finite(const char* what, const std::vector<real>& values) {
  for (real v : values) {
    if (!std::isfinite(v)) throw InvalidArgument(std::string(what) + ": non-finite parameter");
  }
}

}  // namespace

Conv1DLayer Conv1DLayer::zeros(std::size_t kernel, std::size_t stride, std::size_t in_channels,
                               std::size_t out_channels, Padding padding) {
  Conv1DLayer layer{kernel, stride, in_channels, out_channels, padding, {}, {}};
  layer.weights.assign(kernel * in_channels * out_channels, real(0));
  layer.bias.assign(out_channels, real(0));
  layer.check();
  return layer;
}

std::size_t Conv1DLayer::output_length(std::size_t input_length) const {
  if (input_length == 0) throw ShapeMismatch("conv1d: empty input");
  if (padding == Padding::same) return (input_length + stride - 1) / stride;
  if (input_length < kernel) {
    throw ShapeMismatch("conv1d: input length " + std::to_string(input_length) +
                        " shorter than kernel " + std::to_string(kernel));
  }
  return (input_length - kernel) / stride + 1;
}

void Conv1DLayer::check() const {
  if (kernel < 1 || stride < 1 || in_channels < 1 || out_channels < 1) {
    throw InvalidArgument("conv1d: kernel, stride and channel counts must be >= 1");
  }
  check_params("conv1d", weights.size(), kernel * in_channels * out_channels, bias.size(),
               out_channels);
  check_finite("conv1d", weights);
  check_finite("conv1d", bias);
}

ConvTranspose1DLayer ConvTranspose1DLayer::zeros(std::size_t kernel, std::size_t stride,
                                                 std::size_t in_channels, std::size_t out_channels,
                                                 Padding padding, std::size_t fixed_output_length) {
  ConvTranspose1DLayer layer{kernel,  stride, in_channels, out_channels, padding,
                             fixed_output_length, {}, {}};
  layer.weights.assign(kernel * in_channels * out_channels, real(0));
  layer.bias.assign(out_channels, real(0));
  layer.check();
  return layer;
}

std::size_t ConvTranspose1DLayer::output_length(std::size_t input_length) const {
  if (input_length == 0) throw ShapeMismatch("convtranspose1d: empty input");
  if (fixed_output_length == 0) {
    return padding == Padding::same ? input_length * stride : (input_length - 1) * stride + kernel;
  }
  const std::size_t n = fixed_output_length;
  const bool reachable = padding == Padding::same
                             ? (n + stride - 1) / stride == input_length
                             : n >= kernel && (n - kernel) / stride + 1 == input_length;
  if (!reachable) {
    throw ShapeMismatch("convtranspose1d: output length " + std::to_string(n) +
                        " is not reachable from input length " + std::to_string(input_length));
  }
  return n;
}

void ConvTranspose1DLayer::check() const {
  if (kernel < 1 || stride < 1 || in_channels < 1 || out_channels < 1) {
    throw InvalidArgument("convtranspose1d: kernel, stride and channel counts must be >= 1");
  }
  check_params("convtranspose1d", weights.size(), kernel * in_channels * out_channels, bias.size(),
               out_channels);
  check_finite("convtranspose1d", weights);
  check_finite("convtranspose1d", bias);
}

DenseLayer DenseLayer::zeros(std::size_t in_dim, std::size_t out_dim) {
  DenseLayer layer{in_dim, out_dim, {}, {}};
  layer.weights.assign(in_dim * out_dim, real(0));
  layer.bias.assign(out_dim, real(0));
  layer.check();
  return layer;
}

void DenseLayer::check() const {
  if (in_dim < 1 || out_dim < 1) throw InvalidArgument("dense: dimensions must be >= 1");
  check_params("dense", weights.size(), in_dim * out_dim, bias.size(), out_dim);
  check_finite("dense", weights);
  check_finite("dense", bias);
}

}  // namespace rotortrack::neural
