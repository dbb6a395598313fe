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


#ifndef FRAMRIR_FEATURES_HPP_
#define FRAMRIR_FEATURES_HPP_

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "framrir/stft.hpp"
#include "framrir/types.hpp"

namespace framrir {

// Row-major real-valued grid (frames x bins, or DOAs x bins).
struct Grid {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Grid() = default;
  Grid(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), data(r * c, fill) {}
  double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  double Mean() const;
};

using MicPair = std::pair<std::size_t, std::size_t>;

// Pairs (0, m) for m = 1..M-1.
std::vector<MicPair> ReferencePairs(std::size_t num_mics);

// Natural log of |Y|^2 + floor.
Grid LogPowerSpectrum(const Spectrogram& y, std::size_t channel,
                      double floor = 1e-12);

// Phase of Y_{m1} minus phase of Y_{m2}, wrapped to (-pi, pi].
Grid InterChannelPhaseDifference(const Spectrogram& y, MicPair pair);
Grid CosIpd(const Spectrogram& y, MicPair pair);

// Plane-wave unit vector towards a source at (azimuth, elevation).
Vec3 FarFieldDirection(double azimuth, double elevation = 0.0);

// Pair delay in samples for a far-field source. Sign follows the phase
// difference convention above, so a source at `azimuth` produces
// IPD(f) = TPD(f) for every bin.
double PairDelaySamples(std::span<const Vec3> mics, MicPair pair,
                        double azimuth, double elevation, double sound_speed,
                        double sample_rate);

// TPD(f) = 2 pi f / (2 (F - 1)) * tau for bin indices f = 0..F-1.
std::vector<double> TargetPhaseDifference(double delay_samples,
                                          std::size_t num_bins);

struct SteeringGeometry {
  std::vector<Vec3> mics;
  double sound_speed = 343.0;
};

// sum over pairs of cos(TPD - IPD).
Grid AngleFeature(const Spectrogram& y, double azimuth,
                  const SteeringGeometry& geometry, const StftSpec& spec,
                  std::span<const MicPair> pairs, double elevation = 0.0);

// Free-field steering vector a_m = exp(j 2 pi f p_m . u / c0) for one bin,
// matching the STFT phase convention.
std::vector<std::complex<double>> SteeringVector(
    const SteeringGeometry& geometry, double azimuth, double elevation,
    double frequency_hz);

// Fixed beamformers; weights[(v * F + f) * M + m].
struct BeamGrid {
  std::vector<double> azimuths;
  std::size_t num_bins = 0;
  std::size_t num_mics = 0;
  std::vector<std::complex<double>> weights;

  std::size_t size() const { return azimuths.size(); }
  const std::complex<double>* Weights(std::size_t v, std::size_t f) const {
    return weights.data() + (v * num_bins + f) * num_mics;
  }
};

// Super-directive beams w = G^-1 d / (d^H G^-1 d) with spherically diffuse
// coherence G_ij = sinc(2 pi f d_ij / c0) plus `loading` on the diagonal.
BeamGrid SuperdirectiveBeamGrid(const SteeringGeometry& geometry,
                                const StftSpec& spec,
                                std::size_t num_beams = 36,
                                double loading = 1e-3);

// |w_target^H Y|^2 / sum_v |w_v^H Y|^2. Bins where every beam output is
// zero get 1 / V.
Grid DirectionalPowerRatio(const Spectrogram& y, const BeamGrid& beams,
                           std::size_t target_beam);

}  // namespace framrir

#endif  // FRAMRIR_FEATURES_HPP_
