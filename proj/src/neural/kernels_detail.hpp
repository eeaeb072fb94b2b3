#pragma once

#include <cstdint>
#include <string>

#include "rotortrack/error.hpp"
#include "rotortrack/neural/tensor.hpp"

namespace rotortrack::neural::detail {

inline void expect_channels(const char* op, const Tensor3& x, std::size_t channels) {
  if (x.channels() != channels) {
    throw ShapeMismatch(std::string(op) + ": expected " + std::to_string(channels) +
                        " input channels, got " + std::to_string(x.channels()));
  }
}

inline void expect_shape(const char* op, const Tensor3& t, std::size_t batch, std::size_t length,
                         std::size_t channels) {
  if (t.batch() != batch || t.length() != length || t.channels() != channels) {
    throw ShapeMismatch(std::string(op) + ": gradient shape does not match forward output");
  }
}

// Range [lo, hi) of strided positions o (0 <= o < count) that touch index i
// through some tap j = i + pad - o*stride with 0 <= j < kernel.
struct TapRange {
  std::int64_t lo;
  std::int64_t hi;
};

inline TapRange taps_for(std::int64_t i, std::int64_t pad, std::int64_t kernel,
                         std::int64_t stride, std::int64_t count) {
  std::int64_t top = i + pad;  // o*stride <= top
  std::int64_t bottom = top - kernel + 1;  // o*stride >= bottom
  std::int64_t lo = bottom <= 0 ? 0 : (bottom + stride - 1) / stride;
  std::int64_t hi = top < 0 ? 0 : top / stride + 1;
  if (hi > count) hi = count;
  if (lo > hi) lo = hi;
  return {lo, hi};
}

}  // namespace rotortrack::neural::detail
