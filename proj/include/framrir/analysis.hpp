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

#ifndef FRAMRIR_ANALYSIS_HPP_
#define FRAMRIR_ANALYSIS_HPP_

#include <span>
#include <vector>

namespace framrir {

// Schroeder backward-integrated energy decay curve, normalised to 0 dB at the
// first sample. Trailing zero energy maps to -inf.
std::vector<double> EnergyDecayCurveDb(std::span<const float> h);

struct DecayFit {
  bool valid = false;
  double t60 = 0.0;            // seconds, extrapolated to -60 dB
  double slope_db_per_s = 0.0;
  double r_squared = 0.0;
};

// Least-squares line through the decay curve between `upper_db` and
// `lower_db` (T20 evaluation range by default), extrapolated to 60 dB.
DecayFit EstimateT60(std::span<const float> h, double sample_rate,
                     double upper_db = -5.0, double lower_db = -25.0);

// Energy in consecutive windows of `window` samples, in dB.
std::vector<double> SmoothedEnergyDb(std::span<const float> h,
                                     std::size_t window);

}  // namespace framrir

#endif  // FRAMRIR_ANALYSIS_HPP_
