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


#ifndef FRAMRIR_STFT_HPP_
#define FRAMRIR_STFT_HPP_

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace framrir {

enum class StftWindow {
  kSqrtHann,  // periodic; analysis and synthesis windows are identical
  kHann,
};

struct StftSpec {
  double frame_ms = 32.0;
  double hop_ms = 8.0;
  double sample_rate = 16000;
  StftWindow window = StftWindow::kSqrtHann;

  std::size_t frame_length() const;
  std::size_t hop_length() const;
  std::size_t fft_size() const { return frame_length(); }
  std::size_t num_bins() const { return fft_size() / 2 + 1; }
  // Throws Error(kInvalidArgument) unless frame > hop > 0.
  void Validate() const;
};

std::vector<double> AnalysisWindow(const StftSpec& spec);

// Complex spectrogram, channel-major: index (m * T + t) * F + f.
struct Spectrogram {
  std::size_t num_channels = 0;
  std::size_t num_frames = 0;
  std::size_t num_bins = 0;
  std::vector<std::complex<double>> data;

  std::complex<double>& at(std::size_t m, std::size_t t, std::size_t f) {
    return data[(m * num_frames + t) * num_bins + f];
  }
  const std::complex<double>& at(std::size_t m, std::size_t t,
                                 std::size_t f) const {
    return data[(m * num_frames + t) * num_bins + f];
  }
};

// Frames start at t * hop without padding, so T = 1 + (N - frame) / hop.
// All channels must have the same length, at least one frame.
Spectrogram Stft(std::span<const std::vector<float>> channels,
                 const StftSpec& spec);

// Weighted overlap-add inverse. Output has (T - 1) * hop + frame samples;
// reconstruction is exact wherever the squared windows overlap to a nonzero
// sum.
std::vector<std::vector<float>> Istft(const Spectrogram& spectrogram,
                                      const StftSpec& spec);

// Half-open sample range covered by the full number of overlapping frames.
struct SampleRange {
  std::size_t begin = 0;
  std::size_t end = 0;
};
SampleRange StftValidRegion(const StftSpec& spec, std::size_t num_frames);

}  // namespace framrir

#endif  // FRAMRIR_STFT_HPP_
