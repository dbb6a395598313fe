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


#include "framrir/wav.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>

#include "framrir/types.hpp"

namespace framrir {

namespace {

static_assert(std::endian::native == std::endian::little,
              "WAV I/O assumes a little-endian host");

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

[[noreturn]] void Fail(const std::filesystem::path& path, const std::string& what) {
  throw Error(ErrorCode::kIo, path.string() + ": " + what);
}

template <typename T>
T Load(const unsigned char* p) {
  T v;
  std::memcpy(&v, p, sizeof(T));
  return v;
}

template <typename T>
void Put(std::ofstream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

}  // namespace

WavData ReadWav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(path, "cannot open");
  const std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                         std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    Fail(path, "not a RIFF/WAVE file");
  }

  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  const unsigned char* data = nullptr;
  std::size_t data_size = 0;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* chunk = bytes.data() + pos;
    const std::uint32_t size = Load<std::uint32_t>(chunk + 4);
    const std::size_t body = pos + 8;
    const std::size_t available = bytes.size() - body;
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16 || size > available) Fail(path, "truncated fmt chunk");
      format = Load<std::uint16_t>(chunk + 8);
      channels = Load<std::uint16_t>(chunk + 10);
      rate = Load<std::uint32_t>(chunk + 12);
      bits = Load<std::uint16_t>(chunk + 22);
      if (format == kFormatExtensible) {
        if (size < 40) Fail(path, "truncated extensible fmt chunk");
        // First two bytes of the sub-format GUID carry the format tag.
        format = Load<std::uint16_t>(chunk + 32);
      }
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = chunk + 8;
      data_size = std::min<std::size_t>(size, available);
    }
    pos = body + size + (size & 1u);
  }
  if (channels == 0 || rate == 0) Fail(path, "missing fmt chunk");
  if (data == nullptr) Fail(path, "missing data chunk");

  const std::size_t width = bits / 8;
  const bool pcm = format == kFormatPcm && (bits == 16 || bits == 24 || bits == 32);
  const bool ieee = format == kFormatFloat && (bits == 32 || bits == 64);
  if (!pcm && !ieee) Fail(path, "unsupported sample format");

  const std::size_t frames = data_size / (width * channels);
  WavData wav;
  wav.sample_rate = static_cast<int>(rate);
  wav.channels.assign(channels, std::vector<float>(frames));
  for (std::size_t i = 0; i < frames; ++i) {
    for (std::size_t c = 0; c < channels; ++c) {
      const unsigned char* p = data + (i * channels + c) * width;
      float v = 0.0f;
      if (ieee) {
        v = bits == 32 ? Load<float>(p) : static_cast<float>(Load<double>(p));
      } else if (bits == 16) {
        v = static_cast<float>(Load<std::int16_t>(p) / 32768.0);
      } else if (bits == 24) {
        const std::int32_t s = static_cast<std::int32_t>(
            (static_cast<std::uint32_t>(p[0]) << 8) | (static_cast<std::uint32_t>(p[1]) << 16) |
            (static_cast<std::uint32_t>(p[2]) << 24)) >> 8;
        v = static_cast<float>(s / 8388608.0);
      } else {
        v = static_cast<float>(Load<std::int32_t>(p) / 2147483648.0);
      }
      wav.channels[c][i] = v;
    }
  }
  return wav;
}

void WriteWav(const std::filesystem::path& path,
              std::span<const std::vector<float>> channels, int sample_rate) {
  if (channels.empty()) ThrowInvalidArgument("WAV needs at least one channel");
  if (sample_rate <= 0) ThrowInvalidArgument("WAV sample rate must be > 0");
  const std::size_t frames = channels.front().size();
  for (const auto& ch : channels) {
    if (ch.size() != frames) ThrowInvalidArgument("WAV channels differ in length");
  }
  const auto num_channels = static_cast<std::uint16_t>(channels.size());
  const std::uint64_t data_bytes = frames * channels.size() * sizeof(float);
  if (data_bytes > 0xFFFFFFFFull - 50) ThrowInvalidArgument("WAV data exceeds 4 GiB");

  std::ofstream out(path, std::ios::binary);
  if (!out) Fail(path, "cannot open for writing");
  out.write("RIFF", 4);
  // fmt chunk (18 bytes, cbSize = 0) plus fact chunk, as float WAV requires.
  Put<std::uint32_t>(out, static_cast<std::uint32_t>(4 + 26 + 12 + 8 + data_bytes));
  out.write("WAVE", 4);
  out.write("fmt ", 4);
  Put<std::uint32_t>(out, 18);
  Put<std::uint16_t>(out, kFormatFloat);
  Put<std::uint16_t>(out, num_channels);
  Put<std::uint32_t>(out, static_cast<std::uint32_t>(sample_rate));
  Put<std::uint32_t>(out, static_cast<std::uint32_t>(sample_rate) * num_channels * 4);
  Put<std::uint16_t>(out, static_cast<std::uint16_t>(num_channels * 4));
  Put<std::uint16_t>(out, 32);
  Put<std::uint16_t>(out, 0);
  out.write("fact", 4);
  Put<std::uint32_t>(out, 4);
  Put<std::uint32_t>(out, static_cast<std::uint32_t>(frames));
  out.write("data", 4);
  Put<std::uint32_t>(out, static_cast<std::uint32_t>(data_bytes));
  std::vector<float> interleaved(frames * num_channels);
  for (std::size_t i = 0; i < frames; ++i) {
    for (std::size_t c = 0; c < num_channels; ++c) interleaved[i * num_channels + c] = channels[c][i];
  }
  out.write(reinterpret_cast<const char*>(interleaved.data()),
            static_cast<std::streamsize>(interleaved.size() * sizeof(float)));
  if (!out) Fail(path, "write failed");
}

}  // namespace framrir
