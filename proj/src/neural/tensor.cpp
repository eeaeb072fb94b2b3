#include "rotortrack/neural/tensor.hpp"

#include <cmath>
#include <string>

#include "rotortrack/error.hpp"

namespace rotortrack::neural {

Tensor3::Tensor3(std::size_t batch, std::size_t length, std::size_t channels, real fill)
    : batch_(batch), length_(length), channels_(channels), values_(batch * length * channels, fill) {}

Tensor3 Tensor3::reshaped(std::size_t length, std::size_t channels) const {
  if (length * channels != item_size()) {
    throw ShapeMismatch("reshape: " + std::to_string(length_) + "x" + std::to_string(channels_) +
                        " -> " + std::to_string(length) + "x" + std::to_string(channels));
  }
  Tensor3 out = *this;
  out.length_ = length;
  out.channels_ = channels;
  return out;
}

bool Tensor3::all_finite() const noexcept {
  for (real v : values_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace rotortrack::neural
