#pragma once

#include <cstddef>
#include <vector>

#include "rotortrack/neural/tensor.hpp"

namespace rotortrack::neural {

enum class Padding { same, valid };

/// 1-D convolution over the length axis. Weights are laid out [k][c_in][c_out].
///
/// "same" padding adds k-1 zeros in total, floor((k-1)/2) on the left and the
/// rest on the right, giving an output length of ceil(L/s).
struct Conv1DLayer {
  std::size_t kernel = 1;
  std::size_t stride = 1;
  std::size_t in_channels = 1;
  std::size_t out_channels = 1;
  Padding padding = Padding::same;
  std::vector<real> weights;
  std::vector<real> bias;

  static Conv1DLayer zeros(std::size_t kernel, std::size_t stride, std::size_t in_channels,
                           std::size_t out_channels, Padding padding = Padding::same);

  std::size_t weight_index(std::size_t j, std::size_t ci, std::size_t co) const {
    return (j * in_channels + ci) * out_channels + co;
  }
  std::size_t pad_left() const { return padding == Padding::same ? (kernel - 1) / 2 : 0; }
  /// Throws ShapeMismatch when a valid-padded input is shorter than the kernel.
  std::size_t output_length(std::size_t input_length) const;
  void check() const;
};

/// Transposed 1-D convolution: the adjoint of Conv1DLayer with the same
/// (k, s, padding) and weights transposed in the channel axes.
///
/// The output length defaults to L*s (same) or (L-1)*s+k (valid).
/// `fixed_output_length` selects any N that a conv with the same settings maps
/// to L, making this layer its exact adjoint; decoders use it to mirror odd
/// encoder lengths.
struct ConvTranspose1DLayer {
  std::size_t kernel = 1;
  std::size_t stride = 1;
  std::size_t in_channels = 1;
  std::size_t out_channels = 1;
  Padding padding = Padding::same;
  std::size_t fixed_output_length = 0;  // 0: derive from input length
  std::vector<real> weights;            // [k][c_in][c_out]
  std::vector<real> bias;

  static ConvTranspose1DLayer zeros(std::size_t kernel, std::size_t stride, std::size_t in_channels,
                                    std::size_t out_channels, Padding padding = Padding::same,
                                    std::size_t fixed_output_length = 0);

  std::size_t weight_index(std::size_t j, std::size_t ci, std::size_t co) const {
    return (j * in_channels + ci) * out_channels + co;
  }
  std::size_t pad_left() const { return padding == Padding::same ? (kernel - 1) / 2 : 0; }
  std::size_t output_length(std::size_t input_length) const;
  void check() const;
};

/// Fully connected layer on the flattened (length*channels) item; output is (B, 1, out).
/// Weights are laid out [in][out].
struct DenseLayer {
  std::size_t in_dim = 1;
  std::size_t out_dim = 1;
  std::vector<real> weights;
  std::vector<real> bias;

  static DenseLayer zeros(std::size_t in_dim, std::size_t out_dim);
  void check() const;
};

struct LayerGrads {
  Tensor3 input;
  std::vector<real> weights;
  std::vector<real> bias;
};

// Parallel kernels. Each output element is accumulated by exactly one thread in
// the same order as the serial reference, so results do not depend on the
// number of OpenMP threads and match neural::serial bit for bit.
Tensor3 conv1d_forward(const Conv1DLayer& layer, const Tensor3& x);
LayerGrads conv1d_backward(const Conv1DLayer& layer, const Tensor3& x, const Tensor3& grad_out);

Tensor3 convtranspose1d_forward(const ConvTranspose1DLayer& layer, const Tensor3& x);
LayerGrads convtranspose1d_backward(const ConvTranspose1DLayer& layer, const Tensor3& x,
                                    const Tensor3& grad_out);

Tensor3 dense_forward(const DenseLayer& layer, const Tensor3& x);
LayerGrads dense_backward(const DenseLayer& layer, const Tensor3& x, const Tensor3& grad_out);

Tensor3 relu_forward(const Tensor3& x);
Tensor3 relu_backward(const Tensor3& x, const Tensor3& grad_out);

namespace serial {

// Straightforward single-threaded scatter/accumulate forms, kept as the
// reference the parallel kernels are tested and benchmarked against.
Tensor3 conv1d_forward(const Conv1DLayer& layer, const Tensor3& x);
LayerGrads conv1d_backward(const Conv1DLayer& layer, const Tensor3& x, const Tensor3& grad_out);
Tensor3 convtranspose1d_forward(const ConvTranspose1DLayer& layer, const Tensor3& x);
LayerGrads convtranspose1d_backward(const ConvTranspose1DLayer& layer, const Tensor3& x,
                                    const Tensor3& grad_out);
Tensor3 dense_forward(const DenseLayer& layer, const Tensor3& x);
LayerGrads dense_backward(const DenseLayer& layer, const Tensor3& x, const Tensor3& grad_out);

}  // namespace serial

}  // namespace rotortrack::neural
