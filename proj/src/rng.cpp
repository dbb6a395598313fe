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

#include "framrir/rng.hpp"

namespace framrir {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85;

inline void MulHiLo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace

Philox4x32::Block Philox4x32::Generate(Counter ctr, Key key) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    MulHiLo(kPhiloxM0, ctr[0], hi0, lo0);
    MulHiLo(kPhiloxM1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kPhiloxW0;
    key[1] += kPhiloxW1;
  }
  return ctr;
}

std::array<double, 4> CellUniforms(std::uint64_t seed, RngDomain domain,
                                   std::uint32_t stream, std::uint32_t index) {
  const auto key = Philox4x32::KeyFromSeed(seed);
  const auto d = static_cast<std::uint32_t>(domain);
  const auto a = Philox4x32::Generate({index, stream, d, 0}, key);
  const auto b = Philox4x32::Generate({index, stream, d, 1}, key);
  return {UniformOpenClosed(a[0], a[1]), UniformOpenClosed(a[2], a[3]),
          UniformOpenClosed(b[0], b[1]), UniformOpenClosed(b[2], b[3])};
}

std::uint64_t MixSeed(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t DeriveSeed(std::uint64_t master, std::uint64_t a,
                         std::uint64_t b) {
  return MixSeed(MixSeed(MixSeed(master) ^ a) ^ b);
}

CounterRng::result_type CounterRng::operator()() {
  if (used_ == 2) {
    const auto lo = static_cast<std::uint32_t>(counter_);
    const auto hi = static_cast<std::uint32_t>(counter_ >> 32);
    block_ = Philox4x32::Generate(
        {lo, stream_, static_cast<std::uint32_t>(RngDomain::kSequential), hi},
        key_);
    ++counter_;
    used_ = 0;
  }
  const std::uint64_t out =
      (static_cast<std::uint64_t>(block_[2 * used_]) << 32) |
      block_[2 * used_ + 1];
  ++used_;
  return out;
}

double CounterRng::Uniform(double lo, double hi) {
  if (lo == hi) return lo;
  // [0, 1) with 53 bits.
  const double u = static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

std::int64_t CounterRng::UniformInt(std::int64_t lo, std::int64_t hi) {
  if (hi <= lo) return lo;
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>((*this)());
  // Rejection sampling to avoid modulo bias.
  const std::uint64_t limit = max() - (max() % span);
  std::uint64_t x;
  do {
    x = (*this)();
  } while (x >= limit);
  return lo + static_cast<std::int64_t>(x % span);
}

}  // namespace framrir
