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

#include "framrir/resample.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <string>

#include "framrir/simd.hpp"

namespace framrir {

RateFactors ComputeRateFactors(double sample_rate) {
  if (!(sample_rate > 0.0) || !std::isfinite(sample_rate)) {
    ThrowInvalidArgument("sample rate must be positive");
  }
  RateFactors f;
  f.sample_rate = sample_rate;
  f.high = static_cast<int>(std::floor(1e6 / sample_rate));
  f.intermediate = static_cast<int>(std::floor(std::sqrt(f.high)));
  if (!(1 < f.intermediate && f.intermediate < f.high)) {
    ThrowInvalidArgument("sample rate " + std::to_string(sample_rate) +
                         " Hz gives rate factors outside 1 < r_l < r_h");
  }
  return f;
}

namespace {

double KaiserBeta(double atten_db) {
  if (atten_db > 50.0) return 0.1102 * (atten_db - 8.7);
  if (atten_db >= 21.0) {
    return 0.5842 * std::pow(atten_db - 21.0, 0.4) + 0.07886 * (atten_db - 21.0);
  }
  return 0.0;
}

double Sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

}  // namespace

RationalResampler::RationalResampler(int up, int down, double pass_edge,
                                     double stop_edge,
                                     double stopband_atten_db) {
  if (up <= 0 || down <= 0 || down < up) {
    ThrowInvalidArgument("resampler expects 0 < up <= down");
  }
  if (!(0.0 < pass_edge && pass_edge < stop_edge && stop_edge <= 1.0)) {
    ThrowInvalidArgument("resampler band edges must satisfy 0 < pass < stop <= 1");
  }
  const int g = std::gcd(up, down);
  up_ = up / g;
  down_ = down / g;

  // Design on the upsampled grid (rate up * f_in).
  const double cutoff = 0.5 * (pass_edge + stop_edge) / down_;
  const double transition =
      2.0 * std::numbers::pi * (stop_edge - pass_edge) / down_;
  const double order =
      std::ceil((stopband_atten_db - 7.95) / (2.285 * transition));
  half_ = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(order / 2.0)));

  const double beta = KaiserBeta(stopband_atten_db);
  const double norm = std::cyl_bessel_i(0.0, beta);
  prototype_.resize(2 * half_ + 1);
  double sum = 0.0;
  for (std::size_t i = 0; i < prototype_.size(); ++i) {
    const double m = static_cast<double>(i) - static_cast<double>(half_);
    const double r = m / static_cast<double>(half_);
    const double w = std::cyl_bessel_i(0.0, beta * std::sqrt(std::max(0.0, 1.0 - r * r))) / norm;
    prototype_[i] = 2.0 * cutoff * Sinc(2.0 * cutoff * m) * w;
    sum += prototype_[i];
  }
  // Unit DC gain per output sample.
  for (double& h : prototype_) h *= up_ / sum;

  reach_ = static_cast<std::ptrdiff_t>((half_ + up_ - 1) / up_);
  taps_ = static_cast<std::size_t>(2 * reach_ + 1);
  phases_.assign(up_, std::vector<double>(taps_, 0.0));
  const auto half = static_cast<std::ptrdiff_t>(half_);
  for (int phase = 0; phase < up_; ++phase) {
    for (std::size_t n = 0; n < taps_; ++n) {
      const std::ptrdiff_t m =
          phase + (reach_ - static_cast<std::ptrdiff_t>(n)) * up_;
      if (m >= -half && m <= half) phases_[phase][n] = prototype_[m + half];
    }
  }
}

std::vector<double> RationalResampler::Process(std::span<const double> in,
                                               std::size_t out_len) const {
  std::vector<double> out(out_len, 0.0);
  if (out_len == 0) return out;
  const auto last_center = static_cast<std::size_t>(
      (static_cast<std::uint64_t>(out_len - 1) * down_) / up_);
  const std::size_t front = static_cast<std::size_t>(reach_);
  const std::size_t padded_len =
      front + std::max(in.size(), last_center + static_cast<std::size_t>(reach_) + 1);
  std::vector<double> padded(padded_len, 0.0);
  std::copy(in.begin(), in.end(), padded.begin() + front);

  for (std::size_t k = 0; k < out_len; ++k) {
    const std::uint64_t t = static_cast<std::uint64_t>(k) * down_;
    const std::size_t center = static_cast<std::size_t>(t / up_);
    const std::size_t phase = static_cast<std::size_t>(t % up_);
    // padded[center] corresponds to input index center - reach.
    out[k] = simd::Dot(std::span<const double>(padded.data() + center, taps_),
                       phases_[phase]);
  }
  return out;
}

HighpassBiquad::HighpassBiquad(double cutoff_hz, double sample_rate) {
  if (!(cutoff_hz > 0.0 && cutoff_hz < 0.5 * sample_rate)) {
    ThrowInvalidArgument("high-pass cutoff must lie in (0, Nyquist)");
  }
  const double w0 = 2.0 * std::numbers::pi * cutoff_hz / sample_rate;
  const double q = std::numbers::sqrt2 / 2.0;
  const double alpha = std::sin(w0) / (2.0 * q);
  const double c = std::cos(w0);
  const double a0 = 1.0 + alpha;
  b0_ = (1.0 + c) / 2.0 / a0;
  b1_ = -(1.0 + c) / a0;
  b2_ = b0_;
  a1_ = -2.0 * c / a0;
  a2_ = (1.0 - alpha) / a0;
}

void HighpassBiquad::ProcessInPlace(std::span<double> x) const {
  // Transposed direct form II.
  double s1 = 0.0, s2 = 0.0;
  for (double& v : x) {
    const double in = v;
    const double out = b0_ * in + s1;
    s1 = b1_ * in - a1_ * out + s2;
    s2 = b2_ * in - a2_ * out;
    v = out;
  }
}

DecimationChain::DecimationChain(const RateFactors& factors,
                                 const ChainConfig& config)
    : factors_(factors),
      first_(factors.intermediate, factors.high,
             0.5 / factors.intermediate, 1.0 - 0.5 / factors.intermediate,
             config.stopband_atten_db),
      highpass_(config.highpass_cutoff_hz, factors.intermediate_rate()),
      second_(1, factors.intermediate, config.final_pass_edge, 0.5,
              config.stopband_atten_db) {}

std::size_t DecimationChain::OutputLength(std::size_t high_rate_length) const {
  const auto r = static_cast<std::size_t>(factors_.high);
  return (high_rate_length + r - 1) / r;
}

std::vector<double> DecimationChain::Process(
    std::span<const double> high_rate) const {
  const std::size_t n_out = OutputLength(high_rate.size());
  if (n_out == 0) return {};
  // Enough intermediate samples that the last output sees its full support.
  const std::size_t n_mid =
      (n_out - 1) * static_cast<std::size_t>(factors_.intermediate) +
      second_.taps_per_phase();
  std::vector<double> mid = first_.Process(high_rate, n_mid);
  highpass_.ProcessInPlace(mid);
  return second_.Process(mid, n_out);
}

RirFilter DownsampleHighpassDownsample(const HighRateTrain& train,
                                       const RateFactors& factors,
                                       const ChainConfig& config) {
  return DownsampleHighpassDownsample(train, DecimationChain(factors, config));
}

RirFilter DownsampleHighpassDownsample(const HighRateTrain& train,
                                       const DecimationChain& chain) {
  if (train.channels.empty() || train.length() == 0) {
    ThrowInvalidArgument("cannot resample an empty impulse train");
  }
  RirFilter out;
  out.sample_rate = static_cast<int>(chain.factors().sample_rate);
  out.channels.reserve(train.channels.size());
  for (const auto& ch : train.channels) {
    const std::vector<double> y = chain.Process(ch);
    out.channels.emplace_back(y.begin(), y.end());
  }
  for (std::size_t idx : train.direct_index) {
    out.direct_path_sample.push_back(static_cast<double>(idx) /
                                     chain.factors().high);
  }
  return out;
}

}  // namespace framrir
