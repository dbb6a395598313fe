/*
Copyright 2026 The FRAM-RIR Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS-IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#ifndef FRAMRIR_RNG_HPP_
#define FRAMRIR_RNG_HPP_

#include <array>
#include <cstdint>
#include <limits>

namespace framrir {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Every output
// block is a pure function of (counter, key), so any draw can be recomputed
// independently of the order in which others were made.
//
// Stream assignment used throughout the library:
//   key     = (seed & 0xffffffff, seed >> 32)
//   counter = (index, stream, domain, block)
// where `domain` separates subsystems (see RngDomain), `stream` is e.g. the
// source index, `index` the image index or a sequential draw number, and
// `block` selects successive 128-bit blocks for one (index, stream) cell.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;
  using Block = std::array<std::uint32_t, 4>;

  static Block Generate(Counter counter, Key key);
  static Key KeyFromSeed(std::uint64_t seed) {
    return {static_cast<std::uint32_t>(seed),
            static_cast<std::uint32_t>(seed >> 32)};
  }
};

enum class RngDomain : std::uint32_t {
  kImageGeometry = 1,
  kSequential = 2,
};

// 53-bit uniform in (0, 1] built from two 32-bit words.
inline double UniformOpenClosed(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t bits =
      ((static_cast<std::uint64_t>(hi) << 32) | lo) >> 11;
  return (static_cast<double>(bits) + 1.0) * 0x1.0p-53;
}

// Four independent uniforms in (0, 1] for one (stream, index) cell.
std::array<double, 4> CellUniforms(std::uint64_t seed, RngDomain domain,
                                   std::uint32_t stream, std::uint32_t index);

// SplitMix64 finaliser, used to derive child seeds from a master seed.
std::uint64_t MixSeed(std::uint64_t x);
std::uint64_t DeriveSeed(std::uint64_t master, std::uint64_t a,
                         std::uint64_t b = 0);

// Sequential generator over a Philox stream. Satisfies
// UniformRandomBitGenerator; the library uses its own Uniform() rather than
// <random> distributions so sequences are identical across standard
// libraries.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed, std::uint32_t stream = 0)
      : key_(Philox4x32::KeyFromSeed(seed)), stream_(stream) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();

  // Uniform in [lo, hi]. Returns lo exactly when lo == hi.
  double Uniform(double lo, double hi);
  // Integer in [lo, hi].
  std::int64_t UniformInt(std::int64_t lo, std::int64_t hi);

 private:
  Philox4x32::Key key_;
  std::uint32_t stream_;
  std::uint64_t counter_ = 0;
  Philox4x32::Block block_{};
  int used_ = 2;  // 64-bit words consumed from block_
};

}  // namespace framrir

#endif  // FRAMRIR_RNG_HPP_
