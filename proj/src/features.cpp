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


#include "framrir/features.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <numeric>

#include "framrir/geometry.hpp"

namespace framrir {

namespace {

constexpr double kPi = std::numbers::pi;

double WrapPhase(double phase) {
  // std::arg already lands in [-pi, pi]; fold -pi onto +pi.
  return phase <= -kPi ? phase + 2.0 * kPi : phase;
}

double Sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

void CheckPair(const Spectrogram& y, MicPair pair) {
  if (pair.first >= y.num_channels || pair.second >= y.num_channels) {
    ThrowInvalidArgument("microphone pair out of range");
  }
}

}  // namespace

double Grid::Mean() const {
  if (data.empty()) return 0.0;
  return std::accumulate(data.begin(), data.end(), 0.0) /
         static_cast<double>(data.size());
}

std::vector<MicPair> ReferencePairs(std::size_t num_mics) {
  std::vector<MicPair> pairs;
  for (std::size_t m = 1; m < num_mics; ++m) pairs.emplace_back(0, m);
  return pairs;
}

Grid LogPowerSpectrum(const Spectrogram& y, std::size_t channel, double floor) {
  if (channel >= y.num_channels) ThrowInvalidArgument("channel out of range");
  Grid g(y.num_frames, y.num_bins);
  for (std::size_t t = 0; t < y.num_frames; ++t) {
    for (std::size_t f = 0; f < y.num_bins; ++f) {
      g.at(t, f) = std::log(std::norm(y.at(channel, t, f)) + floor);
    }
  }
  return g;
}

Grid InterChannelPhaseDifference(const Spectrogram& y, MicPair pair) {
  CheckPair(y, pair);
  Grid g(y.num_frames, y.num_bins);
  for (std::size_t t = 0; t < y.num_frames; ++t) {
    for (std::size_t f = 0; f < y.num_bins; ++f) {
      const auto cross = y.at(pair.first, t, f) * std::conj(y.at(pair.second, t, f));
      g.at(t, f) = WrapPhase(std::arg(cross));
    }
  }
  return g;
}

Grid CosIpd(const Spectrogram& y, MicPair pair) {
  Grid g = InterChannelPhaseDifference(y, pair);
  for (double& v : g.data) v = std::cos(v);
  return g;
}

Vec3 FarFieldDirection(double azimuth, double elevation) {
  return Direction(azimuth, elevation);
}

double PairDelaySamples(std::span<const Vec3> mics, MicPair pair,
                        double azimuth, double elevation, double sound_speed,
                        double sample_rate) {
  if (pair.first >= mics.size() || pair.second >= mics.size()) {
    ThrowInvalidArgument("microphone pair out of range");
  }
  const Vec3 u = FarFieldDirection(azimuth, elevation);
  const Vec3 d = mics[pair.second] - mics[pair.first];
  const double projection = d.x * u.x + d.y * u.y + d.z * u.z;
  return -projection / sound_speed * sample_rate;
}

std::vector<double> TargetPhaseDifference(double delay_samples,
                                          std::size_t num_bins) {
  if (num_bins < 2) ThrowInvalidArgument("need at least two frequency bins");
  std::vector<double> tpd(num_bins);
  const double denom = 2.0 * static_cast<double>(num_bins - 1);
  for (std::size_t f = 0; f < num_bins; ++f) {
    tpd[f] = 2.0 * kPi * static_cast<double>(f) / denom * delay_samples;
  }
  return tpd;
}

Grid AngleFeature(const Spectrogram& y, double azimuth,
                  const SteeringGeometry& geometry, const StftSpec& spec,
                  std::span<const MicPair> pairs, double elevation) {
  if (pairs.empty()) ThrowInvalidArgument("angle feature needs a microphone pair");
  if (geometry.mics.size() != y.num_channels) {
    ThrowInvalidArgument("geometry does not match spectrogram channels");
  }
  Grid af(y.num_frames, y.num_bins);
  for (const MicPair& pair : pairs) {
    const double tau = PairDelaySamples(geometry.mics, pair, azimuth, elevation,
                                        geometry.sound_speed, spec.sample_rate);
    const std::vector<double> tpd = TargetPhaseDifference(tau, y.num_bins);
    const Grid ipd = InterChannelPhaseDifference(y, pair);
    for (std::size_t t = 0; t < y.num_frames; ++t) {
      for (std::size_t f = 0; f < y.num_bins; ++f) {
        af.at(t, f) += std::cos(tpd[f] - ipd.at(t, f));
      }
    }
  }
  return af;
}

std::vector<std::complex<double>> SteeringVector(
    const SteeringGeometry& geometry, double azimuth, double elevation,
    double frequency_hz) {
  const Vec3 u = FarFieldDirection(azimuth, elevation);
  std::vector<std::complex<double>> a(geometry.mics.size());
  for (std::size_t m = 0; m < a.size(); ++m) {
    const Vec3& p = geometry.mics[m];
    const double lead = (p.x * u.x + p.y * u.y + p.z * u.z) / geometry.sound_speed;
    a[m] = std::polar(1.0, 2.0 * kPi * frequency_hz * lead);
  }
  return a;
}

BeamGrid SuperdirectiveBeamGrid(const SteeringGeometry& geometry,
                                const StftSpec& spec, std::size_t num_beams,
                                double loading) {
  if (num_beams == 0) ThrowInvalidArgument("beam grid must not be empty");
  spec.Validate();
  const std::size_t num_mics = geometry.mics.size();
  BeamGrid grid;
  grid.num_bins = spec.num_bins();
  grid.num_mics = num_mics;
  grid.weights.resize(num_beams * grid.num_bins * num_mics);
  for (std::size_t v = 0; v < num_beams; ++v) {
    grid.azimuths.push_back(2.0 * kPi * static_cast<double>(v) /
                            static_cast<double>(num_beams));
  }

  const double bin_hz = spec.sample_rate / static_cast<double>(spec.fft_size());
  for (std::size_t f = 0; f < grid.num_bins; ++f) {
    const double freq = bin_hz * static_cast<double>(f);
    Eigen::MatrixXcd coherence(num_mics, num_mics);
    for (std::size_t i = 0; i < num_mics; ++i) {
      for (std::size_t j = 0; j < num_mics; ++j) {
        const double dist = Distance(geometry.mics[i], geometry.mics[j]);
        coherence(i, j) = Sinc(2.0 * kPi * freq * dist / geometry.sound_speed);
      }
      coherence(i, i) += loading;
    }
    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(coherence);
    for (std::size_t v = 0; v < num_beams; ++v) {
      const auto a = SteeringVector(geometry, grid.azimuths[v], 0.0, freq);
      const Eigen::VectorXcd d =
          Eigen::Map<const Eigen::VectorXcd>(a.data(), static_cast<Eigen::Index>(num_mics));
      const Eigen::VectorXcd g = lu.solve(d);
      const Eigen::VectorXcd w = g / d.dot(g);  // dot() conjugates d
      std::copy(w.data(), w.data() + num_mics,
                grid.weights.begin() + static_cast<std::ptrdiff_t>((v * grid.num_bins + f) * num_mics));
    }
  }
  return grid;
}

Grid DirectionalPowerRatio(const Spectrogram& y, const BeamGrid& beams,
                           std::size_t target_beam) {
  if (target_beam >= beams.size()) ThrowInvalidArgument("target beam out of range");
  if (beams.num_mics != y.num_channels || beams.num_bins != y.num_bins) {
    ThrowInvalidArgument("beam grid does not match spectrogram");
  }
  const std::size_t num_mics = y.num_channels;
  const double uniform = 1.0 / static_cast<double>(beams.size());
  Grid dpr(y.num_frames, y.num_bins);
  for (std::size_t t = 0; t < y.num_frames; ++t) {
    for (std::size_t f = 0; f < y.num_bins; ++f) {
      double total = 0.0;
      double target = 0.0;
      for (std::size_t v = 0; v < beams.size(); ++v) {
        const std::complex<double>* w = beams.Weights(v, f);
        std::complex<double> out = 0.0;
        for (std::size_t m = 0; m < num_mics; ++m) {
          out += std::conj(w[m]) * y.at(m, t, f);
        }
        const double power = std::norm(out);
        total += power;
        if (v == target_beam) target = power;
      }
      dpr.at(t, f) = total > 0.0 ? target / total : uniform;
    }
  }
  return dpr;
}

}  // namespace framrir
