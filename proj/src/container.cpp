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


#include "framrir/container.hpp"

#include <bit>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

namespace framrir {

namespace {

static_assert(std::endian::native == std::endian::little,
              "container I/O assumes a little-endian host");

template <typename T>
void Put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T Get(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw Error(ErrorCode::kIo, "truncated FRIR container");
  return v;
}

}  // namespace

void WriteRirContainer(std::ostream& out, std::span<const RirFilter> filters) {
  if (filters.size() > std::numeric_limits<std::uint32_t>::max()) {
    ThrowInvalidArgument("too many records for one container");
  }
  out.write("FRIR", 4);
  Put<std::uint16_t>(out, kContainerVersion);
  Put<std::uint32_t>(out, static_cast<std::uint32_t>(filters.size()));
  for (const RirFilter& f : filters) {
    const std::size_t n = f.num_samples();
    for (const auto& ch : f.channels) {
      if (ch.size() != n) ThrowInvalidArgument("filter channels differ in length");
    }
    if (f.num_channels() > std::numeric_limits<std::uint16_t>::max() ||
        n > std::numeric_limits<std::uint32_t>::max() || f.sample_rate <= 0) {
      ThrowInvalidArgument("filter does not fit the container header");
    }
    Put<std::uint16_t>(out, static_cast<std::uint16_t>(f.num_channels()));
    Put<std::uint32_t>(out, static_cast<std::uint32_t>(n));
    Put<std::uint32_t>(out, static_cast<std::uint32_t>(f.sample_rate));
    Put<std::uint8_t>(out, static_cast<std::uint8_t>(f.kind));
    Put<std::uint64_t>(out, f.seed);
    for (const auto& ch : f.channels) {
      out.write(reinterpret_cast<const char*>(ch.data()),
                static_cast<std::streamsize>(ch.size() * sizeof(float)));
    }
  }
  if (!out) throw Error(ErrorCode::kIo, "failed writing FRIR container");
}

void WriteRirContainer(const std::filesystem::path& path,
                       std::span<const RirFilter> filters) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  WriteRirContainer(out, filters);
}

std::vector<RirFilter> ReadRirContainer(std::istream& in) {
  char magic[4] = {};
  in.read(magic, 4);
  if (!in || std::string(magic, 4) != "FRIR") {
    throw Error(ErrorCode::kIo, "not an FRIR container");
  }
  const auto version = Get<std::uint16_t>(in);
  if (version != kContainerVersion) {
    throw Error(ErrorCode::kIo, "unsupported FRIR version " + std::to_string(version));
  }
  const auto count = Get<std::uint32_t>(in);
  std::vector<RirFilter> filters;
  for (std::uint32_t r = 0; r < count; ++r) {
    RirFilter f;
    const auto channels = Get<std::uint16_t>(in);
    const auto samples = Get<std::uint32_t>(in);
    f.sample_rate = static_cast<int>(Get<std::uint32_t>(in));
    const auto kind = Get<std::uint8_t>(in);
    if (kind > static_cast<std::uint8_t>(RirKind::kEarly)) {
      throw Error(ErrorCode::kIo, "unknown filter kind in FRIR record");
    }
    f.kind = static_cast<RirKind>(kind);
    f.seed = Get<std::uint64_t>(in);
    f.params.seed = f.seed;
    f.params.sample_rate = f.sample_rate;
    f.channels.assign(channels, std::vector<float>(samples));
    for (auto& ch : f.channels) {
      in.read(reinterpret_cast<char*>(ch.data()),
              static_cast<std::streamsize>(ch.size() * sizeof(float)));
      if (!in) throw Error(ErrorCode::kIo, "truncated FRIR container");
    }
    filters.push_back(std::move(f));
  }
  return filters;
}

std::vector<RirFilter> ReadRirContainer(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return ReadRirContainer(in);
}

}  // namespace framrir
