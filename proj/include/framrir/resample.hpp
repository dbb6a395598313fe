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

#ifndef FRAMRIR_RESAMPLE_HPP_
#define FRAMRIR_RESAMPLE_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "framrir/types.hpp"

namespace framrir {

// Multirate factors: impulse trains are built at r_h * f_s, decimated to
// r_l * f_s for high-pass filtering, then decimated to f_s.
struct RateFactors {
  int high = 0;          // r_h = floor(1e6 / f_s)
  int intermediate = 0;  // r_l = floor(sqrt(r_h))
  double sample_rate = 0.0;

  double high_rate() const { return high * sample_rate; }
  double intermediate_rate() const { return intermediate * sample_rate; }
};

// Throws Error(kInvalidArgument) for f_s <= 0 or when 1 < r_l < r_h fails.
RateFactors ComputeRateFactors(double sample_rate);

// Kaiser-windowed sinc low-pass sampling-rate converter by up/down. Filtering
// is zero-phase: output sample k is aligned with input time k * down / up.
// Band edges are in cycles per output sample (Nyquist = 0.5).
class RationalResampler {
 public:
  RationalResampler(int up, int down, double pass_edge, double stop_edge,
                    double stopband_atten_db);

  // Produces `out_len` samples; input outside [0, in.size()) is zero.
  std::vector<double> Process(std::span<const double> in,
                              std::size_t out_len) const;

  int up() const { return up_; }
  int down() const { return down_; }
  std::size_t taps_per_phase() const { return taps_; }
  // Prototype filter at rate up * f_in, centred on index half_length().
  const std::vector<double>& prototype() const { return prototype_; }
  std::size_t half_length() const { return half_; }

 private:
  int up_;
  int down_;
  std::size_t half_ = 0;
  std::size_t taps_ = 0;
  std::ptrdiff_t reach_ = 0;  // input samples either side of the centre
  std::vector<double> prototype_;
  std::vector<std::vector<double>> phases_;
};

// Second-order Butterworth high-pass, forward only.
class HighpassBiquad {
 public:
  HighpassBiquad(double cutoff_hz, double sample_rate);
  void ProcessInPlace(std::span<double> x) const;

 private:
  double b0_, b1_, b2_, a1_, a2_;
};

struct ChainConfig {
  double highpass_cutoff_hz = 80.0;
  double stopband_atten_db = 70.0;
  // Pass-band edge of the final decimator as a fraction of f_s.
  double final_pass_edge = 0.45;
};

// The two-stage decimation with a high-pass in between, for one channel.
class DecimationChain {
 public:
  explicit DecimationChain(const RateFactors& factors,
                           const ChainConfig& config = {});

  // Maps a high-rate sequence to ceil(in.size() / r_h) samples at f_s.
  std::vector<double> Process(std::span<const double> high_rate) const;

  std::size_t OutputLength(std::size_t high_rate_length) const;
  const RateFactors& factors() const { return factors_; }
  const RationalResampler& first_stage() const { return first_; }
  const RationalResampler& second_stage() const { return second_; }

 private:
  RateFactors factors_;
  RationalResampler first_;
  HighpassBiquad highpass_;
  RationalResampler second_;
};

// Applies the chain to every channel of a train. The direct-path sample of
// channel m is recorded as direct_index[m] / r_h (fractional, at f_s).
RirFilter DownsampleHighpassDownsample(const HighRateTrain& train,
                                       const RateFactors& factors,
                                       const ChainConfig& config = {});
RirFilter DownsampleHighpassDownsample(const HighRateTrain& train,
                                       const DecimationChain& chain);

}  // namespace framrir

#endif  // FRAMRIR_RESAMPLE_HPP_
