#pragma once

#include <cstdint>
#include <random>

namespace umo {

// Seeded random stream. All variates are derived from the raw mt19937_64 bit
// stream through fixed transforms (no std::*_distribution, whose output is
// implementation defined), so a seed pins the exact sample sequence.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Inclusive integer range; span must fit comfortably in a double.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const double span = static_cast<double>(hi - lo + 1);
    auto k = static_cast<std::int64_t>(uniform01() * span);
    if (k > hi - lo) k = hi - lo;
    return lo + k;
  }

  // Box-Muller, cosine branch only; a (0,1] guard keeps log finite.
  double standard_gaussian();

  double gaussian(double mean, double variance);

  // Marsaglia-Tsang for shape >= 1, with the power boost for shape < 1.
  double gamma(double shape);

  double beta(double alpha, double beta_param);

  // Stateless mixer for deriving independent child seeds.
  static std::uint64_t mix(std::uint64_t a, std::uint64_t b);

 private:
  std::mt19937_64 engine_;
};

}  // namespace umo
