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


#ifndef FRAMRIR_BEAMFORM_HPP_
#define FRAMRIR_BEAMFORM_HPP_

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "framrir/features.hpp"
#include "framrir/stft.hpp"

namespace framrir {

// |S| / (|S| + |N|) on one channel's magnitude spectrogram; 0 where both
// are zero.
Grid IdealRatioMask(const Spectrogram& target, const Spectrogram& interference,
                    std::size_t channel = 0);

enum class SteeringMode {
  // Principal eigenvector of the target-masked covariance.
  kPrincipalEigenvector,
  // Free-field plane wave towards MvdrOptions::target_azimuth.
  kPlaneWave,
};

struct MvdrOptions {
  SteeringMode steering = SteeringMode::kPrincipalEigenvector;
  double target_azimuth = 0.0;
  double target_elevation = 0.0;
  // Diagonal loading added to the noise covariance, relative to its mean
  // diagonal power. A bin with zero noise power is loaded with this value
  // directly so the inverse always exists.
  double loading = 1e-6;
};

// Per-bin weights, weights[f * M + m]. Steering vectors are normalised so
// that the first element is 1 before the weights are formed.
struct BeamformerWeights {
  std::size_t num_bins = 0;
  std::size_t num_mics = 0;
  std::vector<std::complex<double>> weights;

  const std::complex<double>* at(std::size_t f) const {
    return weights.data() + f * num_mics;
  }
};

// w(f) = Phi_n^-1 d / (d^H Phi_n^-1 d) with mask-weighted covariances
// Phi(f) = sum_t mask(t, f) Y Y^H / sum_t mask(t, f).
BeamformerWeights MaskBasedMvdr(const Spectrogram& mixture,
                                const Grid& target_mask, const Grid& noise_mask,
                                const SteeringGeometry& geometry,
                                const StftSpec& spec,
                                const MvdrOptions& options = {});

// |w^H(f) a(theta, f)| for each scan azimuth (rows) and bin (columns).
Grid Beampattern(const BeamformerWeights& weights,
                 const SteeringGeometry& geometry, const StftSpec& spec,
                 std::span<const double> scan_azimuths, double elevation = 0.0);

// Inclusive bin range [lo_hz, hi_hz].
double MeanOverBins(const Grid& grid, std::size_t row, const StftSpec& spec,
                    double lo_hz, double hi_hz);

}  // namespace framrir

#endif  // FRAMRIR_BEAMFORM_HPP_
