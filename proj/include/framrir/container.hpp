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


#ifndef FRAMRIR_CONTAINER_HPP_
#define FRAMRIR_CONTAINER_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "framrir/types.hpp"

namespace framrir {

// Binary filter container, little-endian throughout:
//   "FRIR" | u16 version | u32 count
//   per record: u16 channels | u32 samples | u32 sample rate | u8 kind |
//               u64 seed | f32 samples, channel-major
inline constexpr std::uint16_t kContainerVersion = 1;

void WriteRirContainer(std::ostream& out, std::span<const RirFilter> filters);
void WriteRirContainer(const std::filesystem::path& path,
                       std::span<const RirFilter> filters);

// Restores channels, sample_rate, kind and seed of every record. Throws
// Error(kIo) on a bad magic, unknown version or truncated payload.
std::vector<RirFilter> ReadRirContainer(std::istream& in);
std::vector<RirFilter> ReadRirContainer(const std::filesystem::path& path);

}  // namespace framrir

#endif  // FRAMRIR_CONTAINER_HPP_
