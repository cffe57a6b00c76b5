#ifndef CITENET_RNG_HPP
#define CITENET_RNG_HPP

#include <cstdint>
#include <random>

namespace citenet {

/// Seedable generator with independent, reproducible streams.
///
/// Stream k of seed s is std::mt19937_64 seeded with
/// splitmix64(s ^ splitmix64(k + 0x9e3779b97f4a7c15)). Both the engine and
/// the conversions below are fully specified, so sequences are identical on
/// every platform (std::uniform_*_distribution is not, hence not used).
class Rng {
 public:
  static constexpr const char* kName = "mt19937_64+splitmix64-streams";

  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : engine_(splitmix64(seed ^ splitmix64(stream + 0x9e3779b97f4a7c15ULL))) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = -bound % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t x = engine_();
      if (x >= limit) return x % bound;
    }
  }

  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace citenet

#endif  // CITENET_RNG_HPP
