#include "lgram/rng.hpp"

#include <cmath>
#include <numbers>

namespace lgram {

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed) : state_(splitmix64(seed)) {
  if (state_ == 0) state_ = 1;
}

std::uint64_t Rng::next() noexcept {
  state_ ^= state_ >> 12;
  state_ ^= state_ << 25;
  state_ ^= state_ >> 27;
  return state_ * 0x2545F4914F6CDD1DULL;
}

double Rng::uniform() noexcept {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Rng::normal() noexcept {
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Eigen::VectorXd Rng::gaussian(Eigen::Index size) {
  Eigen::VectorXd g(size);
  for (Eigen::Index i = 0; i < size; ++i) g[i] = normal();
  return g;
}

Eigen::VectorXd Rng::direction(Eigen::Index size) {
  for (;;) {
    Eigen::VectorXd g = gaussian(size);
    const double len = g.norm();
    if (len > 1e-12) return g / len;
  }
}

}  // namespace lgram
