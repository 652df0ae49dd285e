#ifndef MRMAC_RANDOM_HPP
#define MRMAC_RANDOM_HPP

#include <cstdint>
#include <random>

namespace mrmac {

using Rng = std::mt19937_64;

// The standard distributions are implementation-defined; these two helpers
// keep seeded outputs identical across standard libraries.

/// Uniform double in [0, 1) from the top 53 bits of one engine draw.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Uniform index in [0, n). n must be positive.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

/// Independent stream for one (master seed, stream id) pair.
inline Rng make_stream(std::uint64_t master_seed, std::uint64_t stream, std::uint64_t salt = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    static_cast<std::uint32_t>(salt)};
  return Rng(seq);
}

}  // namespace mrmac

#endif  // MRMAC_RANDOM_HPP
