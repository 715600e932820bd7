/*
 * Copyright 2026 The hdrqa Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Seedable, portable randomness: xoshiro256++ states derived through
// SplitMix64. std::normal_distribution and std::shuffle are implementation
// defined, so Gaussian draws (Box-Muller) and shuffles are spelled out here
// to keep outputs reproducible from a recorded seed.

#ifndef HDRQA_RNG_HPP
#define HDRQA_RNG_HPP

#include <cmath>
#include <cstdint>
#include <vector>

namespace hdrqa {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& w : s_) w = sm.next();
  }

  std::uint64_t next() {
    auto rotl = [](std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
    std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform double in [0,1), 53 significant bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform double in (0,1]; safe as a log() argument.
  double next_unit_open() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

  /// Uniform integer in [0, n). Modulo reduction; the bias at 64 bits is
  /// negligible for plan shuffles and pixel sampling.
  std::uint64_t next_below(std::uint64_t n) { return next() % n; }

  /// Standard normal via Box-Muller, one spare value cached.
  double next_gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = next_unit_open();
    double u2 = next_unit();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::uint64_t s_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Stream-splitting rule: frame k of a run seeded with S draws from
/// xoshiro256++ seeded with S + (k+1)*0x9E3779B97F4A7C15, so per-frame
/// results do not depend on processing order.
inline Xoshiro256pp frame_stream(std::uint64_t seed, std::uint64_t frame_index) {
  return Xoshiro256pp(seed + (frame_index + 1) * 0x9E3779B97F4A7C15ULL);
}

/// Fisher-Yates with explicit draws (stable across standard libraries).
template <typename T>
void deterministic_shuffle(std::vector<T>& items, Xoshiro256pp& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.next_below(i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace hdrqa

#endif  // HDRQA_RNG_HPP
