#pragma once

#include <cstdint>
#include <random>

namespace tridot {

// Reproducible stream family: mt19937_64 seeded through seed_seq from the
// (run seed, stream index) pair, so every trajectory owns an independent
// generator derived deterministically from the run seed regardless of
// scheduling order.
inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{
      static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
      static_cast<std::uint32_t>(stream),
      static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

// Uniform double in [0, 1) built from the top 53 bits; avoids the
// implementation-defined std::uniform_real_distribution so streams are
// bit-identical across standard libraries.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace tridot
