#pragma once

// Seeded 64-bit generator with a fixed, documented algorithm so streams are
// reproducible bit-for-bit:
//
//   seeding:  state = splitmix64(seed), replaced by 1 if zero
//   step:     x ^= x >> 12; x ^= x << 25; x ^= x >> 27;
//             return x * 0x2545F4914F6CDD1D          (xorshift64*)
//   uniform:  (next() >> 11) * 2^-53                  in [0, 1)
//   normal:   Box-Muller, sqrt(-2 ln(1 - u1)) cos(2 pi u2), one value per call

#include <Eigen/Dense>

#include <cstdint>

namespace lgram {

class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next() noexcept;
  double uniform() noexcept;
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  double normal() noexcept;
  /// +1 or -1 with equal probability.
  int sign() noexcept { return (next() >> 63) != 0 ? -1 : 1; }
  Eigen::VectorXd gaussian(Eigen::Index size);
  /// Uniform direction on the unit sphere of R^size.
  Eigen::VectorXd direction(Eigen::Index size);

 private:
  std::uint64_t state_;
};

}  // namespace lgram
