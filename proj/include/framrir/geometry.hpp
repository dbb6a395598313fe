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

#ifndef FRAMRIR_GEOMETRY_HPP_
#define FRAMRIR_GEOMETRY_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "framrir/types.hpp"

namespace framrir {

// Unit vector for an (azimuth, elevation) pair in radians.
Vec3 Direction(double azimuth, double elevation);

double Norm(const Vec3& v);
double Distance(const Vec3& a, const Vec3& b);
Vec3 Centroid(std::span<const Vec3> points);

// Largest pairwise microphone distance.
double ArrayAperture(std::span<const Vec3> mics);

double RoomDiagonal(const Vec3& room_dims);

// Linear array along +x, centred on the origin, with the given inter-element
// spacings (N spacings give N+1 microphones).
std::vector<Vec3> LinearArray(std::span<const double> spacings);

// The 4-8-4 cm four-microphone linear array.
std::vector<Vec3> EvalArray();

// Absolute room coordinates derived from a scene. All distance computations
// in the simulators go through these so that both simulators see
// bit-identical positions.
Vec3 ArrayReference(const Scene& scene);
std::vector<Vec3> AbsoluteMicPositions(const Scene& scene);
Vec3 AbsoluteSourcePosition(const Scene& scene, std::size_t source_index);
Vec3 AbsoluteSphereCenter(const Scene& scene);

// Throws Error(kInvalidArgument) on an unusable scene.
void ValidateScene(const Scene& scene);

// FNV-1a over the scene's numeric content.
std::uint64_t SceneHash(const Scene& scene);

}  // namespace framrir

#endif  // FRAMRIR_GEOMETRY_HPP_
