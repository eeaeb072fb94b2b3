#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "rotortrack/neural/adam.hpp"
#include "rotortrack/neural/layers.hpp"
#include "rotortrack/trackdata/window.hpp"

namespace rotortrack {

enum class Activation { relu, linear };

std::string_view to_string(Activation a);
Activation parse_activation(std::string_view text);

/// One strided convolution stage: kernel, stride, output channels.
struct ConvStage {
  std::size_t kernel = 3;
  std::size_t stride = 2;
  std::size_t channels = 16;
  Activation activation = Activation::relu;

  friend bool operator==(const ConvStage&, const ConvStage&) = default;
};

/// Shape of the encoder/decoder pair.
///
/// The encoder is a stack of same-padded Conv1D stages followed by a dense
/// projection to the latent vector. The decoder projects back, reshapes to the
/// last encoder shape and runs transposed convolutions; an empty decoder list
/// means "mirror the encoder". A final pointwise linear layer maps back to the
/// input channel count.
struct AutoencoderSpec {
  std::size_t input_length = kWindowLength;
  std::size_t input_channels = kFeatureCount;
  std::vector<ConvStage> encoder{{7, 2, 16, Activation::relu},
                                 {5, 2, 32, Activation::relu},
                                 {3, 2, 64, Activation::relu}};
  std::size_t latent_dim = 16;
  Activation latent_activation = Activation::linear;
  std::vector<ConvStage> decoder;
  std::uint64_t seed = 0;

  /// The decoder stages actually used (the mirror when `decoder` is empty).
  std::vector<ConvStage> resolved_decoder() const;

  friend bool operator==(const AutoencoderSpec&, const AutoencoderSpec&) = default;
};

std::string spec_to_json(const AutoencoderSpec& spec);
AutoencoderSpec spec_from_json(std::string_view text);

using AnyLayer = std::variant<neural::Conv1DLayer, neural::ConvTranspose1DLayer, neural::DenseLayer>;

struct ModelStage {
  AnyLayer layer;
  Activation activation = Activation::linear;
  // Non-zero: reshape the (B, 1, n) dense output to (B, length, channels).
  std::size_t reshape_length = 0;
  std::size_t reshape_channels = 0;
};

/// Activations kept from a forward pass for backpropagation.
struct ForwardCache {
  std::vector<neural::Tensor3> inputs;
  std::vector<neural::Tensor3> pre_activation;
  neural::Tensor3 output;
};

struct ModelGradients {
  std::vector<std::vector<neural::real>> weights;
  std::vector<std::vector<neural::real>> bias;
};

/// Encoder, decoder and the normalization the model was trained with.
class Autoencoder {
 public:
  /// Random fan-in scaled uniform weights from spec.seed, zero biases, identity
  /// normalization. A dry-run forward pass validates every shape; throws
  /// InvalidArgument for a spec whose decoder cannot restore the input shape.
  static Autoencoder build(const AutoencoderSpec& spec);

  /// Rebuild from stored parameters (used by the loader).
  static Autoencoder from_parts(const AutoencoderSpec& spec, std::vector<ModelStage> stages,
                                const NormStats& norm);

  const AutoencoderSpec& spec() const noexcept { return spec_; }
  const NormStats& norm() const noexcept { return norm_; }
  void set_norm(const NormStats& norm) { norm_ = norm; }
  std::span<const ModelStage> stages() const noexcept { return stages_; }
  std::size_t encoder_stage_count() const noexcept { return spec_.encoder.size() + 1; }
  std::size_t parameter_count() const;

  /// Inputs here are already normalized (B, length, channels) tensors.
  neural::Tensor3 encode(const neural::Tensor3& x) const;
  neural::Tensor3 decode(const neural::Tensor3& z) const;
  neural::Tensor3 reconstruct(const neural::Tensor3& x) const;

  neural::Tensor3 forward(const neural::Tensor3& x, ForwardCache& cache) const;
  ModelGradients backward(const ForwardCache& cache, const neural::Tensor3& grad_output) const;

  /// Parameter/gradient pairs in a fixed order, for the optimizer.
  std::vector<neural::ParamSlot> param_slots(const ModelGradients& grads);
  /// Flat copy of all parameters; restore() puts them back.
  std::vector<neural::real> snapshot() const;
  void restore(std::span<const neural::real> values);

 private:
  neural::Tensor3 run(const neural::Tensor3& x, std::size_t begin, std::size_t end) const;

  AutoencoderSpec spec_;
  std::vector<ModelStage> stages_;
  NormStats norm_;
};

/// Identity normalization: mean 0, std 1.
NormStats identity_norm();

/// Stack windows into a (B, length, channels) tensor without normalizing.
neural::Tensor3 to_tensor(std::span<const FeatureWindow> windows);

/// Normalize raw feature windows with the model's stats and stack them.
neural::Tensor3 normalized_tensor(const Autoencoder& model, std::span<const FeatureWindow> raw_windows);

/// Latent vector for one raw (un-normalized) window.
std::vector<neural::real> encode_window(const Autoencoder& model, const FeatureWindow& raw);

/// Reconstruction MAE for each raw window, in input order.
std::vector<double> reconstruction_errors(const Autoencoder& model, std::span<const FeatureWindow> raw_windows);
double reconstruction_error(const Autoencoder& model, const FeatureWindow& raw);

}  // namespace rotortrack
