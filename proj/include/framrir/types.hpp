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

#ifndef FRAMRIR_TYPES_HPP_
#define FRAMRIR_TYPES_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace framrir {

enum class ErrorCode {
  kInvalidArgument,
  kInvalidConfiguration,
  kIo,
};

// All library failures are reported through this exception type. The code
// lets callers (CLI, bindings) map failures onto stable exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void ThrowInvalidArgument(const std::string& what) {
  throw Error(ErrorCode::kInvalidArgument, what);
}
[[noreturn]] inline void ThrowInvalidConfiguration(const std::string& what) {
  throw Error(ErrorCode::kInvalidConfiguration, what);
}

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Vec3 operator+(const Vec3& a, const Vec3& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend Vec3 operator*(double s, const Vec3& v) {
    return {s * v.x, s * v.y, s * v.z};
  }
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

// Source placement relative to the array reference point. Angles are in
// radians; azimuth is measured in the x-y plane from +x, elevation from the
// x-y plane towards +z.
struct SourcePlacement {
  double distance = 1.0;
  double azimuth = 0.0;
  double elevation = 0.0;
};

struct Scene {
  // Length, width, height in meters.
  Vec3 room_dims{5.0, 4.0, 3.0};
  // Microphone coordinates relative to the array reference point.
  std::vector<Vec3> mic_positions;
  std::vector<SourcePlacement> sources;
  // Absolute position of the array reference point inside the room. Defaults
  // to the room centre. Only used to express absolute coordinates; the
  // stochastic simulator itself is translation invariant.
  std::optional<Vec3> array_position;
  // Centre of the image sphere relative to the array reference point.
  // Defaults to the microphone centroid.
  std::optional<Vec3> sphere_center;
};

struct SimParams {
  double t60 = 0.5;             // seconds
  double sample_rate = 16000;   // Hz
  int num_images = 2048;
  double alpha = 0.1;
  double beta = 1.0;
  double perturb_a = -2.0;
  double perturb_b = 2.0;
  double tau = 0.25;
  double sound_speed = 343.0;   // m/s
  std::uint64_t seed = 0;

  // Throws Error(kInvalidArgument) when a field is out of range.
  void Validate() const;
};

enum class RirKind : std::uint8_t { kFull = 0, kEarly = 1 };

// Multi-channel impulse response at the target sample rate.
struct RirFilter {
  std::vector<std::vector<float>> channels;
  // Direct-path arrival per channel in output samples (fractional).
  std::vector<double> direct_path_sample;
  RirKind kind = RirKind::kFull;
  int sample_rate = 16000;
  std::uint64_t seed = 0;
  SimParams params;
  std::uint64_t scene_hash = 0;

  std::size_t num_channels() const { return channels.size(); }
  std::size_t num_samples() const {
    return channels.empty() ? 0 : channels.front().size();
  }
};

// Multi-channel impulse train at the high internal rate r_h * f_s.
struct HighRateTrain {
  std::vector<std::vector<double>> channels;
  // Sample index of the direct-path impulse per channel.
  std::vector<std::size_t> direct_index;
  double sample_rate = 0.0;  // r_h * f_s

  std::size_t length() const {
    return channels.empty() ? 0 : channels.front().size();
  }
};

}  // namespace framrir

#endif  // FRAMRIR_TYPES_HPP_
