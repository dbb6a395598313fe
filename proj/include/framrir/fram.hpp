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

#ifndef FRAMRIR_FRAM_HPP_
#define FRAMRIR_FRAM_HPP_

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "framrir/resample.hpp"
#include "framrir/types.hpp"

namespace framrir {

// Eyring-based reflection coefficient for a shoebox room,
// r = sqrt(1 - (1 - exp(-0.16 R / T60))^2) with R = volume / surface area.
double ReflectionCoefficient(const Vec3& room_dims, double t60);

// Number of reflections at which the farthest image (distance c0 * T60) sits
// 60 dB below the direct path. Requires 0 < r < 1.
double MaxReflections(double t60, double d0, double r, double c0);

// Inverse CDF of P(x) = 3x^2 / (beta^3 - alpha^3) on (alpha, beta].
// `u` in (0, 1].
double UnitDistanceRatio(double u, double alpha, double beta);

// Linear map of a sampled ratio in [alpha, beta] onto [1, c0 * T60 / d0].
double RescaleDistanceRatio(double unit_ratio, double alpha, double beta,
                            double t60, double d0, double c0);

// Virtual sources for one physical source. Per-image vectors share the image
// index; per-mic distances are stored image-major (mic_distance[i * M + m]).
struct ImageSet {
  std::size_t num_mics = 0;
  std::size_t source_index = 0;
  Vec3 sphere_center;                 // absolute
  Vec3 source_position;               // absolute
  double direct_distance = 0.0;       // d0: source to sphere centre
  std::vector<double> direct_mic_distance;  // D_{0,m}

  std::vector<double> distance;        // D_i, image to sphere centre
  std::vector<double> distance_ratio;  // DR_i = D_i / d0
  std::vector<double> azimuth;
  std::vector<double> elevation;
  std::vector<double> mic_distance;    // D_{i,m}
  std::vector<double> perturb_uniform; // u in (0, 1] for p_i
  std::vector<double> reflections;     // g_i, filled by SampleReflectionCounts

  std::size_t size() const { return distance.size(); }
  double MicDistance(std::size_t image, std::size_t mic) const {
    return mic_distance[image * num_mics + mic];
  }
};

// Draws image directions and distances for scene.sources[source_index].
// Every image uses its own counter-based stream (seed, source, image), so the
// result does not depend on evaluation order.
ImageSet SampleImageGeometry(const SimParams& params, const Scene& scene,
                             std::size_t source_index);

// Fills images.reflections: g_i = 1 + (D_i / c0 T60)^2 (RR_max - 1)
// + p_i DR_i^tau, clamped to [1, RR_max], with p_i ~ U(a, b).
void SampleReflectionCounts(ImageSet& images, const SimParams& params,
                            double rr_max);

// Train length L = ceil(T60 * r_h * f_s).
std::size_t TrainLength(const SimParams& params, const RateFactors& factors);

// Arrival index ceil(distance / c0 * rate).
inline double ArrivalIndex(double distance, double c0, double rate);

// Sums the direct path and all images into a high-rate train per microphone.
HighRateTrain BuildImpulseTrain(const ImageSet& images, const SimParams& params,
                                double reflection_coefficient);

// Half-open early window bounds in high-rate samples relative to the direct
// path: [-ceil(6 ms * rate), +ceil(50 ms * rate)].
struct EarlyWindow {
  std::size_t before = 0;
  std::size_t after = 0;
};
EarlyWindow EarlyReverbWindow(double high_rate);

// Keeps only samples within [-6, +50] ms of each channel's direct path.
HighRateTrain EarlyReverbTrain(const HighRateTrain& train);

struct SimulateOptions {
  bool early = true;
  // Sources are simulated concurrently on up to this many threads. Output is
  // identical for any value.
  int threads = 1;
  ChainConfig chain;
};

struct SourceRir {
  RirFilter full;
  RirFilter early;  // empty when SimulateOptions::early is false
  Vec3 position;    // absolute
  double azimuth = 0.0;
  double elevation = 0.0;
  double direct_distance = 0.0;
  double reflection_coefficient = 0.0;
  double rr_max = 0.0;
};

struct SimulationResult {
  std::vector<SourceRir> sources;
  std::vector<std::string> warnings;
};

// Full pipeline: image sampling, reflection counts, impulse trains, early
// trains and the decimation chain, for every source of the scene.
SimulationResult SimulateRir(const SimParams& params, const Scene& scene,
                             const SimulateOptions& options = {});

inline double ArrivalIndex(double distance, double c0, double rate) {
  return std::ceil(distance / c0 * rate);
}

}  // namespace framrir

#endif  // FRAMRIR_FRAM_HPP_
