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

#include "framrir/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>
#include <string>

namespace framrir {

Vec3 Direction(double azimuth, double elevation) {
  const double ce = std::cos(elevation);
  return {ce * std::cos(azimuth), ce * std::sin(azimuth), std::sin(elevation)};
}

double Norm(const Vec3& v) { return std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z); }

double Distance(const Vec3& a, const Vec3& b) { return Norm(a - b); }

Vec3 Centroid(std::span<const Vec3> points) {
  Vec3 sum;
  for (const Vec3& p : points) sum = sum + p;
  return (1.0 / static_cast<double>(points.size())) * sum;
}

double ArrayAperture(std::span<const Vec3> mics) {
  double aperture = 0.0;
  for (std::size_t i = 0; i < mics.size(); ++i) {
    for (std::size_t j = i + 1; j < mics.size(); ++j) {
      aperture = std::max(aperture, Distance(mics[i], mics[j]));
    }
  }
  return aperture;
}

double RoomDiagonal(const Vec3& room_dims) { return Norm(room_dims); }

std::vector<Vec3> LinearArray(std::span<const double> spacings) {
  std::vector<double> xs(spacings.size() + 1, 0.0);
  std::partial_sum(spacings.begin(), spacings.end(), xs.begin() + 1);
  const double mid = xs.back() / 2.0;
  std::vector<Vec3> mics;
  mics.reserve(xs.size());
  for (double x : xs) mics.push_back({x - mid, 0.0, 0.0});
  return mics;
}

std::vector<Vec3> EvalArray() {
  const double spacings[] = {0.04, 0.08, 0.04};
  return LinearArray(spacings);
}

Vec3 ArrayReference(const Scene& scene) {
  return scene.array_position.value_or(0.5 * scene.room_dims);
}

std::vector<Vec3> AbsoluteMicPositions(const Scene& scene) {
  const Vec3 ref = ArrayReference(scene);
  std::vector<Vec3> out;
  out.reserve(scene.mic_positions.size());
  for (const Vec3& m : scene.mic_positions) out.push_back(ref + m);
  return out;
}

Vec3 AbsoluteSourcePosition(const Scene& scene, std::size_t source_index) {
  const SourcePlacement& s = scene.sources.at(source_index);
  return ArrayReference(scene) + s.distance * Direction(s.azimuth, s.elevation);
}

Vec3 AbsoluteSphereCenter(const Scene& scene) {
  const Vec3 rel = scene.sphere_center.value_or(Centroid(scene.mic_positions));
  return ArrayReference(scene) + rel;
}

void ValidateScene(const Scene& scene) {
  const Vec3& d = scene.room_dims;
  if (!(d.x > 0.0 && d.y > 0.0 && d.z > 0.0)) {
    ThrowInvalidArgument("room dimensions must be strictly positive");
  }
  if (scene.mic_positions.empty()) {
    ThrowInvalidArgument("scene needs at least one microphone");
  }
  if (scene.sources.empty()) {
    ThrowInvalidArgument("scene needs at least one source");
  }
  for (const SourcePlacement& s : scene.sources) {
    if (!(s.distance > 0.0) || !std::isfinite(s.distance)) {
      ThrowInvalidArgument("source distance must be positive");
    }
  }
  const double min_dim = std::min({d.x, d.y, d.z});
  if (!(ArrayAperture(scene.mic_positions) < min_dim)) {
    ThrowInvalidArgument("array aperture must be smaller than the room");
  }
}

namespace {

void HashBytes(std::uint64_t& h, const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
}

void HashDouble(std::uint64_t& h, double v) { HashBytes(h, &v, sizeof(v)); }

void HashVec(std::uint64_t& h, const Vec3& v) {
  HashDouble(h, v.x);
  HashDouble(h, v.y);
  HashDouble(h, v.z);
}

}  // namespace

std::uint64_t SceneHash(const Scene& scene) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  HashVec(h, scene.room_dims);
  for (const Vec3& m : scene.mic_positions) HashVec(h, m);
  for (const SourcePlacement& s : scene.sources) {
    HashDouble(h, s.distance);
    HashDouble(h, s.azimuth);
    HashDouble(h, s.elevation);
  }
  HashVec(h, ArrayReference(scene));
  HashVec(h, AbsoluteSphereCenter(scene));
  return h;
}

}  // namespace framrir
