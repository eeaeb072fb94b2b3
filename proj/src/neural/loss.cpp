#include "rotortrack/neural/loss.hpp"

#include <cmath>

#include "rotortrack/error.hpp"

namespace rotortrack::neural {

namespace {

void expect_same(const Tensor3& x, const Tensor3& x_prime) {
  if (!x.same_shape(x_prime)) throw ShapeMismatch("mae: shape mismatch");
  if (x.size() == 0) throw ShapeMismatch("mae: empty tensors");
}

}  // namespace

real mae(const Tensor3& x, const Tensor3& x_prime) {
  expect_same(x, x_prime);
  auto a = x.values();
  auto b = x_prime.values();
  real sum = 0;
  for (std::size_t n = 0; n < a.size(); ++n) sum += std::abs(a[n] - b[n]);
  return sum / static_cast<real>(a.size());
}

std::vector<real> mae_per_item(const Tensor3& x, const Tensor3& x_prime) {
  expect_same(x, x_prime);
  std::vector<real> out(x.batch());
  for (std::size_t b = 0; b < x.batch(); ++b) {
    auto a = x.item(b);
    auto c = x_prime.item(b);
    real sum = 0;
    for (std::size_t n = 0; n < a.size(); ++n) sum += std::abs(a[n] - c[n]);
    out[b] = sum / static_cast<real>(a.size());
  }
  return out;
}

Tensor3 mae_gradient(const Tensor3& x, const Tensor3& x_prime) {
  expect_same(x, x_prime);
  Tensor3 g(x.batch(), x.length(), x.channels());
  const real scale = real(1) / static_cast<real>(x.size());
  auto a = x.values();
  auto b = x_prime.values();
  auto out = g.values();
  for (std::size_t n = 0; n < out.size(); ++n) {
    real d = b[n] - a[n];
    out[n] = d > 0 ? scale : (d < 0 ? -scale : real(0));
  }
  return g;
}

}  // namespace rotortrack::neural
