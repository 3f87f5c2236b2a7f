#pragma once

#include <cstdint>
#include <vector>

// Self-contained generator so draws are bit-identical across platforms and
// library versions. Streams are cheap to construct; samplers key one stream
// per observation off (seed, index) so results do not depend on evaluation
// order.

namespace skewfa {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& w : state_) w = splitmix(sm);
  }

  /// Stream for observation `index` under master `seed`.
  static Rng stream(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t sm = seed;
    const std::uint64_t a = splitmix(sm);
    sm = index + 0x632BE59BD9B4E019ULL;
    const std::uint64_t b = splitmix(sm);
    return Rng(a ^ (b * 0x9E3779B97F4A7C15ULL));
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform on (0, 1).
  double uniform() {
    double u;
    do {
      u = (next_u64() >> 11) * 0x1.0p-53;
    } while (u <= 0.0);
    return u;
  }

  double normal();
  /// Gamma(shape, rate) via Marsaglia-Tsang.
  double gamma(double shape, double rate);
  /// Index draw from unnormalized nonnegative weights.
  int categorical(const std::vector<double>& weights);

 private:
  static std::uint64_t splitmix(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
  double normal_spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace skewfa
