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


#include "framrir/stft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fft.hpp"
#include "framrir/types.hpp"

namespace framrir {

std::size_t StftSpec::frame_length() const {
  return static_cast<std::size_t>(std::lround(frame_ms * 1e-3 * sample_rate));
}

std::size_t StftSpec::hop_length() const {
  return static_cast<std::size_t>(std::lround(hop_ms * 1e-3 * sample_rate));
}

void StftSpec::Validate() const {
  if (!(sample_rate > 0.0)) ThrowInvalidArgument("STFT sample rate must be > 0");
  const std::size_t frame = frame_length();
  const std::size_t hop = hop_length();
  if (!(hop > 0 && frame > hop)) {
    ThrowInvalidArgument("STFT requires frame > hop > 0");
  }
}

std::vector<double> AnalysisWindow(const StftSpec& spec) {
  const std::size_t n = spec.frame_length();
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double hann =
        0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                             static_cast<double>(n));
    w[i] = spec.window == StftWindow::kSqrtHann ? std::sqrt(hann) : hann;
  }
  return w;
}

Spectrogram Stft(std::span<const std::vector<float>> channels,
                 const StftSpec& spec) {
  spec.Validate();
  if (channels.empty()) ThrowInvalidArgument("STFT needs at least one channel");
  const std::size_t n = channels.front().size();
  for (const auto& ch : channels) {
    if (ch.size() != n) ThrowInvalidArgument("STFT channels differ in length");
  }
  const std::size_t frame = spec.frame_length();
  const std::size_t hop = spec.hop_length();
  if (n < frame) ThrowInvalidArgument("signal shorter than one STFT frame");

  Spectrogram out;
  out.num_channels = channels.size();
  out.num_frames = 1 + (n - frame) / hop;
  out.num_bins = spec.num_bins();
  out.data.resize(out.num_channels * out.num_frames * out.num_bins);

  const auto fft = detail::GetRealFft(spec.fft_size());
  const std::vector<double> window = AnalysisWindow(spec);
  std::vector<double> buf(frame);
  for (std::size_t m = 0; m < out.num_channels; ++m) {
    for (std::size_t t = 0; t < out.num_frames; ++t) {
      const float* x = channels[m].data() + t * hop;
      for (std::size_t i = 0; i < frame; ++i) buf[i] = window[i] * x[i];
      fft->Forward(buf, std::span(&out.at(m, t, 0), out.num_bins));
    }
  }
  return out;
}

std::vector<std::vector<float>> Istft(const Spectrogram& spectrogram,
                                      const StftSpec& spec) {
  spec.Validate();
  const std::size_t frame = spec.frame_length();
  const std::size_t hop = spec.hop_length();
  if (spectrogram.num_bins != spec.num_bins()) {
    ThrowInvalidArgument("spectrogram bin count does not match STFT spec");
  }
  if (spectrogram.num_frames == 0) return std::vector<std::vector<float>>(spectrogram.num_channels);
  const std::size_t length = (spectrogram.num_frames - 1) * hop + frame;
  const std::vector<double> window = AnalysisWindow(spec);

  std::vector<double> norm(length, 0.0);
  for (std::size_t t = 0; t < spectrogram.num_frames; ++t) {
    for (std::size_t i = 0; i < frame; ++i) {
      norm[t * hop + i] += window[i] * window[i];
    }
  }

  const auto fft = detail::GetRealFft(spec.fft_size());
  const double scale = 1.0 / static_cast<double>(spec.fft_size());
  std::vector<double> buf(frame);
  std::vector<std::vector<float>> out(spectrogram.num_channels);
  std::vector<double> acc(length);
  for (std::size_t m = 0; m < spectrogram.num_channels; ++m) {
    std::fill(acc.begin(), acc.end(), 0.0);
    for (std::size_t t = 0; t < spectrogram.num_frames; ++t) {
      fft->Inverse(std::span(&spectrogram.at(m, t, 0), spectrogram.num_bins), buf);
      for (std::size_t i = 0; i < frame; ++i) {
        acc[t * hop + i] += window[i] * buf[i] * scale;
      }
    }
    out[m].resize(length);
    for (std::size_t i = 0; i < length; ++i) {
      out[m][i] = norm[i] > 1e-8 ? static_cast<float>(acc[i] / norm[i]) : 0.0f;
    }
  }
  return out;
}

SampleRange StftValidRegion(const StftSpec& spec, std::size_t num_frames) {
  const std::size_t frame = spec.frame_length();
  const std::size_t hop = spec.hop_length();
  if (num_frames * hop < frame) return {};
  return {frame - hop, num_frames * hop};
}

}  // namespace framrir
