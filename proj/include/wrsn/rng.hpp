#ifndef WRSN_RNG_HPP
#define WRSN_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace wrsn {

/// Stateless 64-bit mixer (splitmix64 finalizer). Used to derive independent
/// seeds for sub-streams so that concurrent units never share generator state.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  return mix64(base ^ mix64(stream + 0x51ed270b7a14c253ULL));
}

/// Seeded random source. Distribution helpers are hand-rolled on top of the
/// raw 64-bit stream so results do not depend on standard-library internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(mix64(seed)) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform double in [0, 1).
  double uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, n). Debiased by rejection.
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % n;
    std::uint64_t v;
    do {
      v = gen_();
    } while (v >= limit);
    return v % n;
  }

  /// Uniform integer in [lo, hi] inclusive.
  long uniform_int(long lo, long hi) {
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(below(n)); }

  bool chance(double probability) { return uniform01() < probability; }

  /// Standard normal via Marsaglia polar method.
  double normal01() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
  }

  double normal(double mean, double stddev) { return mean + stddev * normal01(); }

  /// Independent child stream.
  Rng spawn(std::uint64_t stream) { return Rng(derive_seed(gen_(), stream)); }

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace wrsn

#endif
