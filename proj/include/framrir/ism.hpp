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

#ifndef FRAMRIR_ISM_HPP_
#define FRAMRIR_ISM_HPP_

#include <optional>
#include <vector>

#include "framrir/resample.hpp"
#include "framrir/types.hpp"

namespace framrir {

// Shoebox image-source method with one reflection coefficient for all walls.
// Positions are absolute room coordinates.
struct IsmConfig {
  Vec3 room_dims{5.0, 4.0, 3.0};
  Vec3 source_position;
  std::vector<Vec3> mic_positions;
  // Per-axis mirror order; when unset the order is chosen so the farthest
  // image lies beyond c0 * T60.
  std::optional<int> max_order;
  double t60 = 0.5;
  double sample_rate = 16000;
  double sound_speed = 343.0;
};

struct ImageSource {
  Vec3 position;
  int reflections = 0;
};

// Per-axis image coordinate for mirror index k: (k + |k| mod 2) * L +
// (-1)^k * s, with |k| reflections on that axis.
double MirrorCoordinate(int k, double room_length, double source_coordinate);

int AutoMaxOrder(const Vec3& room_dims, double t60, double sound_speed);

// (2N + 1)^3 images for order N, the source itself first.
std::vector<ImageSource> EnumerateImages(const Vec3& room_dims,
                                         const Vec3& source_position,
                                         int max_order);

// Impulse train at r_h * f_s with length ceil(T60 * r_h * f_s). Images whose
// arrival index falls beyond the train are dropped.
HighRateTrain IsmTrain(const IsmConfig& config);

RirFilter IsmRir(const IsmConfig& config, const ChainConfig& chain = {});

// ISM configuration for scene.sources[source_index] in the same absolute
// coordinates the stochastic simulator uses.
IsmConfig IsmConfigFromScene(const Scene& scene, std::size_t source_index,
                             const SimParams& params,
                             std::optional<int> max_order = std::nullopt);

}  // namespace framrir

#endif  // FRAMRIR_ISM_HPP_
