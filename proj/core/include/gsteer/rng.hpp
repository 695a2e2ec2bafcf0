/*
 * This code is part of gsteer.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef GSTEER_RNG_HPP
#define GSTEER_RNG_HPP

#include <cstdint>
#include <random>

namespace gsteer::mc {

/// splitmix64 step; used to derive well-separated substream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Shots are generated in fixed-size blocks; block index -> substream seed is
/// a pure function of (seed, block), so the stream is identical no matter how
/// blocks are scheduled across threads.
inline constexpr std::uint64_t kShotBlock = 1u << 16;

inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t block) {
  std::uint64_t s = seed ^ (0xd1342543de82ef95ULL * (block + 1));
  const std::uint64_t a = splitmix64(s);
  const std::uint64_t b = splitmix64(s);
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace gsteer::mc

#endif
