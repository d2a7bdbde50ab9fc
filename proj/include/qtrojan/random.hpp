// Copyright 2026 The qtrojan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Portable randomness. The standard engines have fixed output sequences but
// the standard distributions do not, so bounded and real draws are done here.
//
//   * insertion target choice: std::mt19937_64 seeded with the user seed
//   * per-shot streams:        SplitMix64 seeded with derive_seed(seed, shot)

#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <string_view>

namespace qtrojan {

/** SplitMix64 (Steele, Lea, Flood 2014). Small counter-based engine used for
 * per-shot streams where constructing a Mersenne Twister would dominate.
 */
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  SplitMix64 mix(seed ^ (stream * 0xd1b54a32d192ed03ULL));
  mix();
  return mix();
}

// FNV-1a; stable across platforms unlike std::hash.
inline std::uint64_t stable_hash(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Uniform integer in [0, n) by rejection; n must be positive.
template <class Engine>
std::uint64_t uniform_index(Engine& eng, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = static_cast<std::uint64_t>(eng());
  } while (x >= limit);
  return x % n;
}

// Uniform double in [0, 1) from the top 53 bits.
template <class Engine>
double uniform_real(Engine& eng) {
  return static_cast<double>(static_cast<std::uint64_t>(eng()) >> 11) * 0x1.0p-53;
}

}  // namespace qtrojan
