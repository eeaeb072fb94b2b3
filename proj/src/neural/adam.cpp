#include "rotortrack/neural/adam.hpp"

#include <cmath>

#include "rotortrack/error.hpp"

namespace rotortrack::neural {

void adam_step(std::span<const ParamSlot> params, AdamState& state) {
  const AdamConfig& c = state.config;
  if (state.m.empty() && state.step == 0) {
    for (const auto& p : params) {
      state.m.emplace_back(p.value.size(), real(0));
      state.v.emplace_back(p.value.size(), real(0));
    }
  }
  if (state.m.size() != params.size()) throw ShapeMismatch("adam: parameter count changed");
  for (std::size_t n = 0; n < params.size(); ++n) {
    if (params[n].value.size() != params[n].grad.size() ||
        params[n].value.size() != state.m[n].size()) {
      throw ShapeMismatch("adam: moment buffers do not match parameter shape");
    }
  }

  ++state.step;
  const double t = static_cast<double>(state.step);
  const double correction1 = 1.0 - std::pow(c.beta1, t);
  const double correction2 = 1.0 - std::pow(c.beta2, t);

  for (std::size_t n = 0; n < params.size(); ++n) {
    auto value = params[n].value;
    auto grad = params[n].grad;
    auto& m = state.m[n];
    auto& v = state.v[n];
    for (std::size_t i = 0; i < value.size(); ++i) {
      const double g = grad[i];
      m[i] = static_cast<real>(c.beta1 * m[i] + (1.0 - c.beta1) * g);
      v[i] = static_cast<real>(c.beta2 * v[i] + (1.0 - c.beta2) * g * g);
      const double m_hat = m[i] / correction1;
      const double v_hat = v[i] / correction2;
      value[i] -= static_cast<real>(c.lr * m_hat / (std::sqrt(v_hat) + c.epsilon));
    }
  }
}

}  // namespace rotortrack::neural
