#ifndef CHMP_RNG_HPP
#define CHMP_RNG_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

namespace chmp {

// Counter-based SplitMix64.
//
// Stream layout: the k-th draw (k = 1, 2, ...) of a generator seeded with s is
//   mix64(s + k * 0x9E3779B97F4A7C15)
// with the standard SplitMix64 finalizer. This is bit-identical to the
// sequential SplitMix64 reference, so any language can reproduce instances.
//
// Derived values:
//   uniform()       = (draw >> 11) * 2^-53                       in [0, 1)
//   uniform_index(n): rejection on draw >= 2^64 - (2^64 mod n), then draw mod n
//   normal()        : Box-Muller on (u1 = 1 - uniform(), u2 = uniform()),
//                     returns r*cos(2 pi u2) first and caches r*sin(2 pi u2)
//                     for the next call.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed = 0) noexcept : seed_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  static constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Draw at an absolute counter position without advancing the stream.
  [[nodiscard]] std::uint64_t at(std::uint64_t k) const noexcept {
    return mix64(seed_ + k * kGolden);
  }

  result_type operator()() noexcept { return at(++counter_); }

  double uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  std::uint64_t uniform_index(std::uint64_t n) noexcept {
    if (n <= 1) return 0;
    const std::uint64_t limit = max() - (max() % n + 1) % n;
    std::uint64_t x = (*this)();
    while (x > limit) x = (*this)();
    return x % n;
  }

  double normal() noexcept {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(angle);
    has_spare_ = true;
    return r * std::cos(angle);
  }

  [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
  [[nodiscard]] std::uint64_t draws() const noexcept { return counter_; }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace chmp

#endif  // CHMP_RNG_HPP
