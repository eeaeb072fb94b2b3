#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rotortrack/neural/tensor.hpp"

namespace rotortrack::neural {

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct AdamState {
  AdamConfig config;
  std::int64_t step = 0;
  // One moment buffer per parameter tensor, allocated on the first step.
  std::vector<std::vector<real>> m;
  std::vector<std::vector<real>> v;
};

struct ParamSlot {
  std::span<real> value;
  std::span<const real> grad;
};

/// Bias-corrected Adam update applied to every slot; increments state.step once.
void adam_step(std::span<const ParamSlot> params, AdamState& state);

}  // namespace rotortrack::neural
