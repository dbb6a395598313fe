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


#ifndef FRAMRIR_WAV_HPP_
#define FRAMRIR_WAV_HPP_

#include <filesystem>
#include <span>
#include <vector>

namespace framrir {

struct WavData {
  int sample_rate = 0;
  std::vector<std::vector<float>> channels;
};

// Reads RIFF/WAVE with 16, 24 or 32-bit integer PCM or 32/64-bit IEEE float
// samples (plain or WAVE_FORMAT_EXTENSIBLE). Integer data is scaled to
// [-1, 1). Throws Error(kIo) on malformed or unsupported input.
WavData ReadWav(const std::filesystem::path& path);

// Writes 32-bit IEEE float samples. All channels must have equal length.
void WriteWav(const std::filesystem::path& path,
              std::span<const std::vector<float>> channels, int sample_rate);

}  // namespace framrir

#endif  // FRAMRIR_WAV_HPP_
