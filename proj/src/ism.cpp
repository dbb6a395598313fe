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

#include "framrir/ism.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "framrir/fram.hpp"
#include "framrir/geometry.hpp"

namespace framrir {

namespace {

bool Inside(const Vec3& p, const Vec3& room) {
  return p.x > 0.0 && p.x < room.x && p.y > 0.0 && p.y < room.y &&
         p.z > 0.0 && p.z < room.z;
}

void ValidateIsm(const IsmConfig& config) {
  const Vec3& d = config.room_dims;
  if (!(d.x > 0.0 && d.y > 0.0 && d.z > 0.0)) {
    ThrowInvalidArgument("room dimensions must be strictly positive");
  }
  if (!Inside(config.source_position, d)) {
    ThrowInvalidArgument("ISM source must lie strictly inside the room");
  }
  if (config.mic_positions.empty()) {
    ThrowInvalidArgument("ISM needs at least one microphone");
  }
  for (const Vec3& m : config.mic_positions) {
    if (!Inside(m, d)) ThrowInvalidArgument("ISM microphones must lie inside the room");
  }
  if (config.max_order && *config.max_order < 0) {
    ThrowInvalidArgument("max_order must be >= 0");
  }
  if (!(config.t60 > 0.0)) ThrowInvalidArgument("t60 must be > 0");
}

}  // namespace

double MirrorCoordinate(int k, double room_length, double source_coordinate) {
  const int odd = std::abs(k) % 2;
  return (k + odd) * room_length + (odd ? -source_coordinate : source_coordinate);
}

int AutoMaxOrder(const Vec3& room_dims, double t60, double sound_speed) {
  const double min_dim = std::min({room_dims.x, room_dims.y, room_dims.z});
  return static_cast<int>(std::ceil(sound_speed * t60 / min_dim)) + 1;
}

std::vector<ImageSource> EnumerateImages(const Vec3& room_dims,
                                         const Vec3& source_position,
                                         int max_order) {
  if (max_order < 0) ThrowInvalidArgument("max_order must be >= 0");
  if (!Inside(source_position, room_dims)) {
    ThrowInvalidArgument("ISM source must lie strictly inside the room");
  }
  const int n = 2 * max_order + 1;
  std::vector<ImageSource> images;
  images.reserve(static_cast<std::size_t>(n) * n * n);
  images.push_back({source_position, 0});
  for (int kx = -max_order; kx <= max_order; ++kx) {
    const double x = MirrorCoordinate(kx, room_dims.x, source_position.x);
    for (int ky = -max_order; ky <= max_order; ++ky) {
      const double y = MirrorCoordinate(ky, room_dims.y, source_position.y);
      for (int kz = -max_order; kz <= max_order; ++kz) {
        if (kx == 0 && ky == 0 && kz == 0) continue;
        const double z = MirrorCoordinate(kz, room_dims.z, source_position.z);
        images.push_back({{x, y, z}, std::abs(kx) + std::abs(ky) + std::abs(kz)});
      }
    }
  }
  return images;
}

HighRateTrain IsmTrain(const IsmConfig& config) {
  ValidateIsm(config);
  const RateFactors factors = ComputeRateFactors(config.sample_rate);
  const double rate = factors.high_rate();
  const double c0 = config.sound_speed;
  SimParams sizing;
  sizing.t60 = config.t60;
  const std::size_t length = TrainLength(sizing, factors);
  const double r = ReflectionCoefficient(config.room_dims, config.t60);
  const int order = config.max_order.value_or(
      AutoMaxOrder(config.room_dims, config.t60, c0));

  const std::vector<ImageSource> images =
      EnumerateImages(config.room_dims, config.source_position, order);
  const Vec3 center = Centroid(config.mic_positions);
  const double reach = c0 * (static_cast<double>(length) / rate) +
                       ArrayAperture(config.mic_positions);

  HighRateTrain train;
  train.sample_rate = rate;
  train.channels.assign(config.mic_positions.size(), std::vector<double>(length, 0.0));
  train.direct_index.resize(config.mic_positions.size());
  for (std::size_t m = 0; m < config.mic_positions.size(); ++m) {
    const Vec3& mic = config.mic_positions[m];
    std::vector<double>& h = train.channels[m];
    for (std::size_t i = 0; i < images.size(); ++i) {
      const ImageSource& img = images[i];
      if (i > 0 && Distance(img.position, center) > reach) continue;
      const double d = Distance(img.position, mic);
      const double q = ArrivalIndex(d, c0, rate);
      if (i == 0) {
        const auto q0 = static_cast<std::size_t>(
            std::min(q, static_cast<double>(length - 1)));
        train.direct_index[m] = q0;
        h[q0] += std::pow(r, img.reflections) / d;
        continue;
      }
      if (q > static_cast<double>(length - 1)) continue;
      h[static_cast<std::size_t>(q)] += std::pow(r, img.reflections) / d;
    }
  }
  return train;
}

RirFilter IsmRir(const IsmConfig& config, const ChainConfig& chain) {
  const HighRateTrain train = IsmTrain(config);
  RirFilter f = DownsampleHighpassDownsample(
      train, ComputeRateFactors(config.sample_rate), chain);
  f.kind = RirKind::kFull;
  return f;
}

IsmConfig IsmConfigFromScene(const Scene& scene, std::size_t source_index,
                             const SimParams& params,
                             std::optional<int> max_order) {
  IsmConfig c;
  c.room_dims = scene.room_dims;
  c.source_position = AbsoluteSourcePosition(scene, source_index);
  c.mic_positions = AbsoluteMicPositions(scene);
  c.max_order = max_order;
  c.t60 = params.t60;
  c.sample_rate = params.sample_rate;
  c.sound_speed = params.sound_speed;
  return c;
}

}  // namespace framrir
