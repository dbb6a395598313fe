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

#include "framrir/analysis.hpp"

#include <cmath>
#include <limits>

namespace framrir {

std::vector<double> EnergyDecayCurveDb(std::span<const float> h) {
  std::vector<double> edc(h.size(), 0.0);
  double acc = 0.0;
  for (std::size_t i = h.size(); i-- > 0;) {
    acc += static_cast<double>(h[i]) * h[i];
    edc[i] = acc;
  }
  const double total = h.empty() ? 0.0 : edc.front();
  for (double& e : edc) {
    e = (total > 0.0 && e > 0.0) ? 10.0 * std::log10(e / total)
                                 : -std::numeric_limits<double>::infinity();
  }
  return edc;
}

DecayFit EstimateT60(std::span<const float> h, double sample_rate,
                     double upper_db, double lower_db) {
  const std::vector<double> edc = EnergyDecayCurveDb(h);
  double n = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < edc.size(); ++i) {
    if (edc[i] > upper_db || edc[i] < lower_db) continue;
    const double t = static_cast<double>(i) / sample_rate;
    n += 1.0;
    sx += t;
    sy += edc[i];
    sxx += t * t;
    sxy += t * edc[i];
    syy += edc[i] * edc[i];
  }
  DecayFit fit;
  if (n < 3.0) return fit;
  const double cov = sxy - sx * sy / n;
  const double var_t = sxx - sx * sx / n;
  const double var_y = syy - sy * sy / n;
  if (var_t <= 0.0) return fit;
  fit.slope_db_per_s = cov / var_t;
  if (!(fit.slope_db_per_s < 0.0)) return fit;
  fit.t60 = -60.0 / fit.slope_db_per_s;
  fit.r_squared = var_y > 0.0 ? cov * cov / (var_t * var_y) : 1.0;
  fit.valid = true;
  return fit;
}

std::vector<double> SmoothedEnergyDb(std::span<const float> h,
                                     std::size_t window) {
  std::vector<double> out;
  if (window == 0) return out;
  for (std::size_t start = 0; start + window <= h.size(); start += window) {
    double e = 0.0;
    for (std::size_t i = start; i < start + window; ++i) {
      e += static_cast<double>(h[i]) * h[i];
    }
    out.push_back(e > 0.0 ? 10.0 * std::log10(e)
                          : -std::numeric_limits<double>::infinity());
  }
  return out;
}

}  // namespace framrir
