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


#include "framrir/convolve.hpp"

#include <algorithm>
#include <complex>

#include "fft.hpp"

namespace framrir {

namespace {

std::vector<std::vector<float>> ConvolveMany(
    std::span<const float> x, std::span<const std::vector<float>> filters,
    std::size_t out_len) {
  std::vector<std::vector<float>> out(filters.size(), std::vector<float>(out_len, 0.0f));
  if (x.empty() || out_len == 0) return out;
  std::size_t longest = 0;
  for (const auto& h : filters) longest = std::max(longest, h.size());
  if (longest == 0) return out;

  const std::size_t full = x.size() + longest - 1;
  const std::size_t n = detail::FastFftSize(full);
  const auto fft = detail::GetRealFft(n);
  std::vector<double> buf(n, 0.0);
  std::vector<std::complex<double>> xf(fft->bins());
  std::vector<std::complex<double>> hf(fft->bins());
  std::copy(x.begin(), x.end(), buf.begin());
  fft->Forward(buf, xf);

  const double scale = 1.0 / static_cast<double>(n);
  const std::size_t keep = std::min(out_len, full);
  for (std::size_t c = 0; c < filters.size(); ++c) {
    const auto& h = filters[c];
    if (h.empty()) continue;
    std::fill(buf.begin(), buf.end(), 0.0);
    std::copy(h.begin(), h.end(), buf.begin());
    fft->Forward(buf, hf);
    for (std::size_t k = 0; k < hf.size(); ++k) hf[k] *= xf[k];
    fft->Inverse(hf, buf);
    for (std::size_t i = 0; i < keep; ++i) out[c][i] = static_cast<float>(buf[i] * scale);
  }
  return out;
}

}  // namespace

std::vector<float> Convolve(std::span<const float> x, std::span<const float> h,
                            std::size_t out_len) {
  const std::vector<float> filter(h.begin(), h.end());
  return std::move(ConvolveMany(x, std::span(&filter, 1), out_len).front());
}

std::vector<std::vector<float>> ConvolveChannels(std::span<const float> x,
                                                 const RirFilter& rir,
                                                 std::size_t out_len) {
  return ConvolveMany(x, rir.channels, out_len);
}

}  // namespace framrir
