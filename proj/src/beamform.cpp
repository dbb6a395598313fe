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


#include "framrir/beamform.hpp"

#include <Eigen/Dense>

#include <cmath>

#include "framrir/types.hpp"

namespace framrir {

namespace {

using Eigen::Index;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

MatrixXcd MaskedCovariance(const Spectrogram& y, const Grid& mask,
                           std::size_t f) {
  const Index m = static_cast<Index>(y.num_channels);
  MatrixXcd phi = MatrixXcd::Zero(m, m);
  VectorXcd v(m);
  double weight = 0.0;
  for (std::size_t t = 0; t < y.num_frames; ++t) {
    const double w = mask.at(t, f);
    if (w == 0.0) continue;
    for (Index i = 0; i < m; ++i) v(i) = y.at(static_cast<std::size_t>(i), t, f);
    phi.noalias() += w * v * v.adjoint();
    weight += w;
  }
  if (weight > 0.0) phi /= weight;
  return phi;
}

void CheckMask(const Grid& mask, const Spectrogram& y) {
  if (mask.rows != y.num_frames || mask.cols != y.num_bins) {
    ThrowInvalidArgument("mask shape does not match spectrogram");
  }
  for (double v : mask.data) {
    if (!(v >= 0.0 && v <= 1.0)) ThrowInvalidArgument("mask values must lie in [0, 1]");
  }
}

}  // namespace

Grid IdealRatioMask(const Spectrogram& target, const Spectrogram& interference,
                    std::size_t channel) {
  if (target.num_frames != interference.num_frames ||
      target.num_bins != interference.num_bins) {
    ThrowInvalidArgument("spectrogram shapes differ");
  }
  if (channel >= target.num_channels || channel >= interference.num_channels) {
    ThrowInvalidArgument("channel out of range");
  }
  Grid mask(target.num_frames, target.num_bins);
  for (std::size_t t = 0; t < target.num_frames; ++t) {
    for (std::size_t f = 0; f < target.num_bins; ++f) {
      const double s = std::abs(target.at(channel, t, f));
      const double n = std::abs(interference.at(channel, t, f));
      mask.at(t, f) = s + n > 0.0 ? s / (s + n) : 0.0;
    }
  }
  return mask;
}

BeamformerWeights MaskBasedMvdr(const Spectrogram& mixture,
                                const Grid& target_mask, const Grid& noise_mask,
                                const SteeringGeometry& geometry,
                                const StftSpec& spec,
                                const MvdrOptions& options) {
  CheckMask(target_mask, mixture);
  CheckMask(noise_mask, mixture);
  if (geometry.mics.size() != mixture.num_channels) {
    ThrowInvalidArgument("geometry does not match spectrogram channels");
  }
  const std::size_t num_mics = mixture.num_channels;
  const Index m = static_cast<Index>(num_mics);
  const double bin_hz = spec.sample_rate / static_cast<double>(spec.fft_size());

  BeamformerWeights out;
  out.num_bins = mixture.num_bins;
  out.num_mics = num_mics;
  out.weights.resize(out.num_bins * num_mics);

  for (std::size_t f = 0; f < mixture.num_bins; ++f) {
    VectorXcd d(m);
    if (options.steering == SteeringMode::kPlaneWave) {
      const auto a = SteeringVector(geometry, options.target_azimuth,
                                    options.target_elevation,
                                    bin_hz * static_cast<double>(f));
      for (Index i = 0; i < m; ++i) d(i) = a[static_cast<std::size_t>(i)];
    } else {
      const Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(
          MaskedCovariance(mixture, target_mask, f));
      d = eig.eigenvectors().col(m - 1);
    }
    if (std::abs(d(0)) > 0.0) {
      d /= d(0);
    } else if (d.norm() > 0.0) {
      d /= d.norm();
    } else {
      d = VectorXcd::Ones(m);
    }

    MatrixXcd phi_n = MaskedCovariance(mixture, noise_mask, f);
    const double mean_power = phi_n.trace().real() / static_cast<double>(m);
    const double load = mean_power > 0.0 ? options.loading * mean_power : options.loading;
    phi_n.diagonal().array() += load;

    const VectorXcd g = phi_n.partialPivLu().solve(d);
    const VectorXcd w = g / d.dot(g);
    for (Index i = 0; i < m; ++i) out.weights[f * num_mics + static_cast<std::size_t>(i)] = w(i);
  }
  return out;
}

Grid Beampattern(const BeamformerWeights& weights,
                 const SteeringGeometry& geometry, const StftSpec& spec,
                 std::span<const double> scan_azimuths, double elevation) {
  if (geometry.mics.size() != weights.num_mics) {
    ThrowInvalidArgument("geometry does not match beamformer");
  }
  const double bin_hz = spec.sample_rate / static_cast<double>(spec.fft_size());
  Grid pattern(scan_azimuths.size(), weights.num_bins);
  for (std::size_t r = 0; r < scan_azimuths.size(); ++r) {
    for (std::size_t f = 0; f < weights.num_bins; ++f) {
      const auto a = SteeringVector(geometry, scan_azimuths[r], elevation,
                                    bin_hz * static_cast<double>(f));
      const std::complex<double>* w = weights.at(f);
      std::complex<double> response = 0.0;
      for (std::size_t i = 0; i < weights.num_mics; ++i) response += std::conj(w[i]) * a[i];
      pattern.at(r, f) = std::abs(response);
    }
  }
  return pattern;
}

double MeanOverBins(const Grid& grid, std::size_t row, const StftSpec& spec,
                    double lo_hz, double hi_hz) {
  const double bin_hz = spec.sample_rate / static_cast<double>(spec.fft_size());
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t f = 0; f < grid.cols; ++f) {
    const double hz = bin_hz * static_cast<double>(f);
    if (hz < lo_hz || hz > hi_hz) continue;
    sum += grid.at(row, f);
    ++count;
  }
  return count ? sum / static_cast<double>(count) : 0.0;
}

}  // namespace framrir
