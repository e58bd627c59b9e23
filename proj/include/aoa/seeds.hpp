#pragma once

#include <array>
#include <cstdint>
#include <random>

namespace aoa {

// Independent 64-bit seed for a named sub-stream of a run seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint32_t stream, std::uint32_t salt = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), stream, salt};
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

}  // namespace aoa
