#include "rotortrack/autoencoder/model.hpp"

#include <cmath>
#include <random>

#include "json.hpp"
#include "rotortrack/error.hpp"
#include "rotortrack/neural/loss.hpp"

namespace rotortrack {

using neural::real;
using neural::Tensor3;
using json = nlohmann::ordered_json;

std::string_view to_string(Activation a) { return a == Activation::relu ? "relu" : "linear"; }

Activation parse_activation(std::string_view text) {
  if (text == "relu") return Activation::relu;
  if (text == "linear") return Activation::linear;
  throw InvalidArgument("unknown activation '" + std::string(text) + "'");
}

std::vector<ConvStage> AutoencoderSpec::resolved_decoder() const {
  if (!decoder.empty()) return decoder;
  std::vector<ConvStage> out;
  for (std::size_t n = encoder.size(); n-- > 0;) {
    // Stage n undoes encoder stage n and restores the channel count that fed it,
    // except the last one, which keeps the first stage's width for the output layer.
    std::size_t channels = n > 0 ? encoder[n - 1].channels : encoder[0].channels;
    out.push_back({encoder[n].kernel, encoder[n].stride, channels, Activation::relu});
  }
  return out;
}

namespace {

json stages_json(const std::vector<ConvStage>& stages) {
  json arr = json::array();
  for (const auto& s : stages) {
    arr.push_back({{"kernel", s.kernel}, {"stride", s.stride}, {"channels", s.channels},
                   {"activation", std::string(to_string(s.activation))}});
  }
  return arr;
}

std::vector<ConvStage> stages_from(const json& arr) {
  std::vector<ConvStage> out;
  for (const auto& s : arr) {
    out.push_back({s.at("kernel").get<std::size_t>(), s.at("stride").get<std::size_t>(),
                   s.at("channels").get<std::size_t>(),
                   parse_activation(s.value("activation", std::string("relu")))});
  }
  return out;
}

}  // namespace

std::string spec_to_json(const AutoencoderSpec& spec) {
  json j;
  j["input_length"] = spec.input_length;
  j["input_channels"] = spec.input_channels;
  j["encoder"] = stages_json(spec.encoder);
  j["latent_dim"] = spec.latent_dim;
  j["latent_activation"] = std::string(to_string(spec.latent_activation));
  j["decoder"] = stages_json(spec.decoder);
  j["seed"] = spec.seed;
  return j.dump();
}

AutoencoderSpec spec_from_json(std::string_view text) {
  try {
    json j = json::parse(text);
    AutoencoderSpec spec;
    spec.input_length = j.at("input_length").get<std::size_t>();
    spec.input_channels = j.at("input_channels").get<std::size_t>();
    spec.encoder = stages_from(j.at("encoder"));
    spec.latent_dim = j.at("latent_dim").get<std::size_t>();
    spec.latent_activation = parse_activation(j.at("latent_activation").get<std::string>());
    spec.decoder = stages_from(j.at("decoder"));
    spec.seed = j.at("seed").get<std::uint64_t>();
    return spec;
  } catch (const json::exception& e) {
    throw ParseError(std::string("autoencoder spec: ") + e.what());
  }
}

NormStats identity_norm() {
  NormStats n;
  n.mean.fill(0.0);
  n.stddev.fill(1.0);
  return n;
}

namespace {

template <class Layer>
void init_uniform(Layer& layer, std::size_t fan_in, std::mt19937_64& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(fan_in));
  std::uniform_real_distribution<double> u(-limit, limit);
  for (auto& w : layer.weights) w = static_cast<real>(u(rng));
}

std::vector<real>& weights_of(AnyLayer& l) {
  return std::visit([](auto& x) -> std::vector<real>& { return x.weights; }, l);
}
std::vector<real>& bias_of(AnyLayer& l) {
  return std::visit([](auto& x) -> std::vector<real>& { return x.bias; }, l);
}
const std::vector<real>& weights_of(const AnyLayer& l) {
  return std::visit([](const auto& x) -> const std::vector<real>& { return x.weights; }, l);
}
const std::vector<real>& bias_of(const AnyLayer& l) {
  return std::visit([](const auto& x) -> const std::vector<real>& { return x.bias; }, l);
}

Tensor3 layer_forward(const AnyLayer& l, const Tensor3& x) {
  struct {
    const Tensor3& x;
    Tensor3 operator()(const neural::Conv1DLayer& c) const { return neural::conv1d_forward(c, x); }
    Tensor3 operator()(const neural::ConvTranspose1DLayer& c) const {
      return neural::convtranspose1d_forward(c, x);
    }
    Tensor3 operator()(const neural::DenseLayer& d) const { return neural::dense_forward(d, x); }
  } visitor{x};
  return std::visit(visitor, l);
}

neural::LayerGrads layer_backward(const AnyLayer& l, const Tensor3& x, const Tensor3& g) {
  struct {
    const Tensor3& x;
    const Tensor3& g;
    neural::LayerGrads operator()(const neural::Conv1DLayer& c) const {
      return neural::conv1d_backward(c, x, g);
    }
    neural::LayerGrads operator()(const neural::ConvTranspose1DLayer& c) const {
      return neural::convtranspose1d_backward(c, x, g);
    }
    neural::LayerGrads operator()(const neural::DenseLayer& d) const {
      return neural::dense_backward(d, x, g);
    }
  } visitor{x, g};
  return std::visit(visitor, l);
}

Tensor3 apply_stage(const ModelStage& stage, const Tensor3& x, Tensor3* pre = nullptr) {
  Tensor3 y = layer_forward(stage.layer, x);
  if (stage.reshape_length) y = y.reshaped(stage.reshape_length, stage.reshape_channels);
  if (pre) *pre = y;
  return stage.activation == Activation::relu ? neural::relu_forward(y) : y;
}

}  // namespace

Autoencoder Autoencoder::build(const AutoencoderSpec& spec) {
  if (spec.input_length < 1 || spec.input_channels < 1) {
    throw InvalidArgument("autoencoder: input shape must be non-empty");
  }
  if (spec.latent_dim < 1) throw InvalidArgument("autoencoder: latent dim must be >= 1");
  if (spec.encoder.empty()) throw InvalidArgument("autoencoder: encoder needs at least one stage");

  Autoencoder model;
  model.spec_ = spec;
  model.norm_ = identity_norm();
  std::mt19937_64 rng(spec.seed);

  // Encoder lengths: lengths[n] is the input length of encoder stage n.
  std::vector<std::size_t> lengths{spec.input_length};
  std::vector<std::size_t> channels{spec.input_channels};
  for (const auto& s : spec.encoder) {
    if (s.kernel < 1 || s.stride < 1 || s.channels < 1) {
      throw InvalidArgument("autoencoder: conv stage values must be >= 1");
    }
    auto conv = neural::Conv1DLayer::zeros(s.kernel, s.stride, channels.back(), s.channels);
    init_uniform(conv, s.kernel * channels.back(), rng);
    lengths.push_back(conv.output_length(lengths.back()));
    channels.push_back(s.channels);
    model.stages_.push_back({std::move(conv), s.activation});
  }
  const std::size_t flat = lengths.back() * channels.back();
  auto to_latent = neural::DenseLayer::zeros(flat, spec.latent_dim);
  init_uniform(to_latent, flat, rng);
  model.stages_.push_back({std::move(to_latent), spec.latent_activation});

  auto decoder = spec.resolved_decoder();
  auto from_latent = neural::DenseLayer::zeros(spec.latent_dim, flat);
  init_uniform(from_latent, spec.latent_dim, rng);
  model.stages_.push_back({std::move(from_latent), Activation::relu, lengths.back(), channels.back()});

  std::size_t length = lengths.back();
  std::size_t width = channels.back();
  for (std::size_t d = 0; d < decoder.size(); ++d) {
    const auto& s = decoder[d];
    if (s.kernel < 1 || s.stride < 1 || s.channels < 1) {
      throw InvalidArgument("autoencoder: conv stage values must be >= 1");
    }
    // Mirror the matching encoder length when that length is reachable.
    std::size_t target = 0;
    if (d < spec.encoder.size()) {
      std::size_t mirror = lengths[spec.encoder.size() - 1 - d];
      if ((mirror + s.stride - 1) / s.stride == length) target = mirror;
    }
    auto convt = neural::ConvTranspose1DLayer::zeros(s.kernel, s.stride, width, s.channels,
                                                     neural::Padding::same, target);
    init_uniform(convt, s.kernel * width, rng);
    length = convt.output_length(length);
    width = s.channels;
    model.stages_.push_back({std::move(convt), s.activation});
  }
  if (length != spec.input_length) {
    throw InvalidArgument("autoencoder: decoder produces length " + std::to_string(length) +
                          ", expected " + std::to_string(spec.input_length));
  }
  auto output = neural::Conv1DLayer::zeros(1, 1, width, spec.input_channels);
  init_uniform(output, width, rng);
  model.stages_.push_back({std::move(output), Activation::linear});

  Tensor3 probe(2, spec.input_length, spec.input_channels);
  Tensor3 out = model.reconstruct(probe);
  if (out.length() != spec.input_length || out.channels() != spec.input_channels) {
    throw InvalidArgument("autoencoder: dry run produced the wrong output shape");
  }
  return model;
}

Autoencoder Autoencoder::from_parts(const AutoencoderSpec& spec, std::vector<ModelStage> stages,
                                    const NormStats& norm) {
  Autoencoder shape = build(spec);
  if (stages.size() != shape.stages_.size()) throw ShapeMismatch("autoencoder: stage count mismatch");
  for (std::size_t i = 0; i < stages.size(); ++i) {
    if (weights_of(stages[i].layer).size() != weights_of(shape.stages_[i].layer).size() ||
        bias_of(stages[i].layer).size() != bias_of(shape.stages_[i].layer).size()) {
      throw ShapeMismatch("autoencoder: parameter shape mismatch in stage " + std::to_string(i));
    }
    weights_of(shape.stages_[i].layer) = std::move(weights_of(stages[i].layer));
    bias_of(shape.stages_[i].layer) = std::move(bias_of(stages[i].layer));
  }
  shape.norm_ = norm;
  return shape;
}

std::size_t Autoencoder::parameter_count() const {
  std::size_t n = 0;
  for (const auto& s : stages_) n += weights_of(s.layer).size() + bias_of(s.layer).size();
  return n;
}

Tensor3 Autoencoder::run(const Tensor3& x, std::size_t begin, std::size_t end) const {
  Tensor3 h = x;
  for (std::size_t i = begin; i < end; ++i) h = apply_stage(stages_[i], h);
  return h;
}

Tensor3 Autoencoder::encode(const Tensor3& x) const { return run(x, 0, encoder_stage_count()); }

Tensor3 Autoencoder::decode(const Tensor3& z) const {
  return run(z, encoder_stage_count(), stages_.size());
}

Tensor3 Autoencoder::reconstruct(const Tensor3& x) const { return run(x, 0, stages_.size()); }

Tensor3 Autoencoder::forward(const Tensor3& x, ForwardCache& cache) const {
  cache.inputs.assign(stages_.size(), {});
  cache.pre_activation.assign(stages_.size(), {});
  Tensor3 h = x;
  for (std::size_t i = 0; i < stages_.size(); ++i) {
    cache.inputs[i] = h;
    h = apply_stage(stages_[i], h, &cache.pre_activation[i]);
  }
  cache.output = h;
  return h;
}

ModelGradients Autoencoder::backward(const ForwardCache& cache, const Tensor3& grad_output) const {
  ModelGradients grads;
  grads.weights.resize(stages_.size());
  grads.bias.resize(stages_.size());
  Tensor3 g = grad_output;
  for (std::size_t i = stages_.size(); i-- > 0;) {
    const auto& stage = stages_[i];
    if (stage.activation == Activation::relu) g = neural::relu_backward(cache.pre_activation[i], g);
    if (stage.reshape_length) g = g.reshaped(1, g.item_size());
    auto lg = layer_backward(stage.layer, cache.inputs[i], g);
    grads.weights[i] = std::move(lg.weights);
    grads.bias[i] = std::move(lg.bias);
    g = std::move(lg.input);
  }
  return grads;
}

std::vector<neural::ParamSlot> Autoencoder::param_slots(const ModelGradients& grads) {
  std::vector<neural::ParamSlot> slots;
  for (std::size_t i = 0; i < stages_.size(); ++i) {
    slots.push_back({weights_of(stages_[i].layer), grads.weights[i]});
    slots.push_back({bias_of(stages_[i].layer), grads.bias[i]});
  }
  return slots;
}

std::vector<real> Autoencoder::snapshot() const {
  std::vector<real> out;
  out.reserve(parameter_count());
  for (const auto& s : stages_) {
    const auto& w = weights_of(s.layer);
    const auto& b = bias_of(s.layer);
    out.insert(out.end(), w.begin(), w.end());
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

void Autoencoder::restore(std::span<const real> values) {
  if (values.size() != parameter_count()) throw ShapeMismatch("autoencoder: snapshot size mismatch");
  std::size_t at = 0;
  for (auto& s : stages_) {
    for (auto* buf : {&weights_of(s.layer), &bias_of(s.layer)}) {
      std::copy(values.begin() + static_cast<std::ptrdiff_t>(at),
                values.begin() + static_cast<std::ptrdiff_t>(at + buf->size()), buf->begin());
      at += buf->size();
    }
  }
}

Tensor3 to_tensor(std::span<const FeatureWindow> windows) {
  if (windows.empty()) return {};
  Tensor3 t(windows.size(), windows[0].rows.size(), kFeatureCount);
  for (std::size_t b = 0; b < windows.size(); ++b) {
    if (windows[b].rows.size() != t.length()) throw ShapeMismatch("to_tensor: ragged windows");
    for (std::size_t i = 0; i < t.length(); ++i)
      for (std::size_t f = 0; f < kFeatureCount; ++f) t(b, i, f) = static_cast<real>(windows[b].rows[i][f]);
  }
  return t;
}

Tensor3 normalized_tensor(const Autoencoder& model, std::span<const FeatureWindow> raw_windows) {
  std::vector<FeatureWindow> z;
  z.reserve(raw_windows.size());
  for (const auto& w : raw_windows) z.push_back(normalize(w, model.norm()));
  Tensor3 t = to_tensor(z);
  if (!raw_windows.empty() &&
      (t.length() != model.spec().input_length || t.channels() != model.spec().input_channels)) {
    throw ShapeMismatch("window shape does not match the model input");
  }
  return t;
}

std::vector<real> encode_window(const Autoencoder& model, const FeatureWindow& raw) {
  Tensor3 z = model.encode(normalized_tensor(model, std::span(&raw, 1)));
  return {z.values().begin(), z.values().end()};
}

std::vector<double> reconstruction_errors(const Autoencoder& model,
                                          std::span<const FeatureWindow> raw_windows) {
  constexpr std::size_t kChunk = 64;
  std::vector<double> out;
  out.reserve(raw_windows.size());
  for (std::size_t at = 0; at < raw_windows.size(); at += kChunk) {
    auto chunk = raw_windows.subspan(at, std::min(kChunk, raw_windows.size() - at));
    Tensor3 x = normalized_tensor(model, chunk);
    for (real e : neural::mae_per_item(x, model.reconstruct(x))) out.push_back(static_cast<double>(e));
  }
  return out;
}

double reconstruction_error(const Autoencoder& model, const FeatureWindow& raw) {
  Tensor3 x = normalized_tensor(model, std::span(&raw, 1));
  return static_cast<double>(neural::mae(x, model.reconstruct(x)));
}

}  // namespace rotortrack
