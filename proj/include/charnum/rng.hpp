#ifndef CHARNUM_RNG_HPP
#define CHARNUM_RNG_HPP

#include <cstdint>
#include <initializer_list>

namespace charnum {

/// Deterministic 64-bit generator (splitmix64). We avoid <random>
/// distributions on purpose: their output is implementation-defined and the
/// replay contract requires identical draws on every platform.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform value in [0, n). n must be nonzero.
  std::uint64_t below(std::uint64_t n) {
    // Rejection sampling on the biased tail keeps the draw exactly uniform.
    const std::uint64_t limit = n * ((~0ULL) / n);
    std::uint64_t r = u64();
    while (r >= limit) r = u64();
    return r % n;
  }

private:
  std::uint64_t state_;
};

/// Stable seed derivation: mixes the base seed with a list of tags so that
/// every (index, prime, attempt) computation has its own reproducible stream.
inline std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> tags) {
  std::uint64_t h = base ^ 0x6a09e667f3bcc909ULL;
  for (std::uint64_t t : tags) {
    h = (h ^ t) * 0x100000001b3ULL;
    h = Rng(h).u64();
  }
  return h;
}

}  // namespace charnum

#endif
