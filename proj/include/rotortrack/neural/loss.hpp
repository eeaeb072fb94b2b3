#pragma once

#include <vector>

#include "rotortrack/neural/tensor.hpp"

namespace rotortrack::neural {

/// Mean absolute error over every element: sum |x - x'| / n.
real mae(const Tensor3& x, const Tensor3& x_prime);

/// One MAE per batch item.
std::vector<real> mae_per_item(const Tensor3& x, const Tensor3& x_prime);

/// d mae / d x_prime, using sign(0) = 0.
Tensor3 mae_gradient(const Tensor3& x, const Tensor3& x_prime);

}  // namespace rotortrack::neural
