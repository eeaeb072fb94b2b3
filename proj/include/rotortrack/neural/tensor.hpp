#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rotortrack::neural {

// Arithmetic width for the whole numeric core. Gradient checks assume 64-bit.
#ifdef ROTORTRACK_SINGLE_PRECISION
using real = float;
#else
using real = double;
#endif

/// Dense (batch, length, channels) array, channels fastest.
class Tensor3 {
 public:
  Tensor3() = default;
  Tensor3(std::size_t batch, std::size_t length, std::size_t channels, real fill = real(0));

  std::size_t batch() const noexcept { return batch_; }
  std::size_t length() const noexcept { return length_; }
  std::size_t channels() const noexcept { return channels_; }
  std::size_t size() const noexcept { return values_.size(); }
  /// Elements per batch item.
  std::size_t item_size() const noexcept { return length_ * channels_; }

  real& operator()(std::size_t b, std::size_t i, std::size_t c) {
    return values_[(b * length_ + i) * channels_ + c];
  }
  real operator()(std::size_t b, std::size_t i, std::size_t c) const {
    return values_[(b * length_ + i) * channels_ + c];
  }

  /// Pointer to the channel vector at (b, i).
  real* row(std::size_t b, std::size_t i) { return values_.data() + (b * length_ + i) * channels_; }
  const real* row(std::size_t b, std::size_t i) const {
    return values_.data() + (b * length_ + i) * channels_;
  }

  real* data() noexcept { return values_.data(); }
  const real* data() const noexcept { return values_.data(); }
  std::span<real> values() noexcept { return values_; }
  std::span<const real> values() const noexcept { return values_; }

  std::span<real> item(std::size_t b) { return {values_.data() + b * item_size(), item_size()}; }
  std::span<const real> item(std::size_t b) const {
    return {values_.data() + b * item_size(), item_size()};
  }

  /// Same values, new (length, channels); the element count per item must match.
  Tensor3 reshaped(std::size_t length, std::size_t channels) const;

  bool all_finite() const noexcept;
  bool same_shape(const Tensor3& other) const noexcept {
    return batch_ == other.batch_ && length_ == other.length_ && channels_ == other.channels_;
  }

  friend bool operator==(const Tensor3&, const Tensor3&) = default;

 private:
  std::size_t batch_ = 0;
  std::size_t length_ = 0;
  std::size_t channels_ = 0;
  std::vector<real> values_;
};

}  // namespace rotortrack::neural
