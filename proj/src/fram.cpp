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

#include "framrir/fram.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include "framrir/geometry.hpp"
#include "framrir/rng.hpp"

namespace framrir {

void SimParams::Validate() const {
  if (!(t60 > 0.0) || !std::isfinite(t60)) ThrowInvalidArgument("t60 must be > 0");
  if (!(sample_rate > 0.0)) ThrowInvalidArgument("sample rate must be > 0");
  if (num_images < 0) ThrowInvalidArgument("num_images must be >= 0");
  if (!(0.0 <= alpha && alpha < beta && beta <= 1.0)) {
    ThrowInvalidArgument("distance-ratio bounds must satisfy 0 <= alpha < beta <= 1");
  }
  if (!(perturb_a <= perturb_b)) {
    ThrowInvalidArgument("perturbation bounds must satisfy a <= b");
  }
  if (!(tau > 0.0)) ThrowInvalidArgument("tau must be > 0");
  if (!(sound_speed > 0.0)) ThrowInvalidArgument("sound speed must be > 0");
}

double ReflectionCoefficient(const Vec3& room_dims, double t60) {
  if (!(room_dims.x > 0.0 && room_dims.y > 0.0 && room_dims.z > 0.0)) {
    ThrowInvalidArgument("room dimensions must be strictly positive");
  }
  if (!(t60 > 0.0)) ThrowInvalidArgument("t60 must be > 0");
  const double volume = room_dims.x * room_dims.y * room_dims.z;
  const double surface = 2.0 * (room_dims.x * room_dims.y +
                                room_dims.x * room_dims.z +
                                room_dims.y * room_dims.z);
  const double ratio = volume / surface;
  const double absorption = 1.0 - std::exp(-0.16 * ratio / t60);
  return std::sqrt(1.0 - absorption * absorption);
}

double MaxReflections(double t60, double d0, double r, double c0) {
  if (!(r > 0.0 && r < 1.0)) {
    ThrowInvalidArgument("reflection coefficient must lie in (0, 1)");
  }
  if (!(d0 > 0.0) || !(c0 * t60 > d0)) {
    ThrowInvalidConfiguration("direct distance must be below c0 * T60");
  }
  return (std::log10(c0 * t60) - std::log10(d0) - 3.0) / std::log10(r);
}

double UnitDistanceRatio(double u, double alpha, double beta) {
  const double a3 = alpha * alpha * alpha;
  const double b3 = beta * beta * beta;
  return std::cbrt(a3 + u * (b3 - a3));
}

double RescaleDistanceRatio(double unit_ratio, double alpha, double beta,
                            double t60, double d0, double c0) {
  return 1.0 + alpha / (beta - alpha) * (unit_ratio / alpha - 1.0) *
                   (c0 * t60 / d0 - 1.0);
}

ImageSet SampleImageGeometry(const SimParams& params, const Scene& scene,
                             std::size_t source_index) {
  params.Validate();
  ValidateScene(scene);
  if (source_index >= scene.sources.size()) {
    ThrowInvalidArgument("source index out of range");
  }
  if (params.alpha == 0.0) {
    ThrowInvalidArgument("alpha must be > 0 for the distance-ratio rescaling");
  }

  const double c0 = params.sound_speed;
  ImageSet set;
  const std::vector<Vec3> mics = AbsoluteMicPositions(scene);
  set.num_mics = mics.size();
  set.source_index = source_index;
  set.sphere_center = AbsoluteSphereCenter(scene);
  set.source_position = AbsoluteSourcePosition(scene, source_index);
  set.direct_distance = Distance(set.source_position, set.sphere_center);
  if (!(c0 * params.t60 > set.direct_distance)) {
    std::ostringstream msg;
    msg << "source " << source_index << " at " << set.direct_distance
        << " m is beyond c0 * T60 = " << c0 * params.t60 << " m";
    ThrowInvalidConfiguration(msg.str());
  }
  for (const Vec3& m : mics) {
    set.direct_mic_distance.push_back(Distance(set.source_position, m));
  }

  const auto n = static_cast<std::size_t>(params.num_images);
  set.distance.resize(n);
  set.distance_ratio.resize(n);
  set.azimuth.resize(n);
  set.elevation.resize(n);
  set.perturb_uniform.resize(n);
  set.mic_distance.resize(n * mics.size());

  for (std::size_t i = 0; i < n; ++i) {
    const auto u = CellUniforms(params.seed, RngDomain::kImageGeometry,
                                static_cast<std::uint32_t>(source_index),
                                static_cast<std::uint32_t>(i));
    const double azimuth = 2.0 * std::numbers::pi * u[0];
    const double elevation = -std::numbers::pi / 2.0 + std::numbers::pi * u[1];
    const double unit_ratio = UnitDistanceRatio(u[2], params.alpha, params.beta);
    const double ratio = RescaleDistanceRatio(unit_ratio, params.alpha, params.beta,
                                              params.t60, set.direct_distance, c0);
    const double dist = set.direct_distance * ratio;
    set.azimuth[i] = azimuth;
    set.elevation[i] = elevation;
    set.distance_ratio[i] = ratio;
    set.distance[i] = dist;
    set.perturb_uniform[i] = u[3];
    const Vec3 pos = set.sphere_center + dist * Direction(azimuth, elevation);
    for (std::size_t m = 0; m < mics.size(); ++m) {
      set.mic_distance[i * mics.size() + m] = Distance(pos, mics[m]);
    }
  }
  return set;
}

void SampleReflectionCounts(ImageSet& images, const SimParams& params,
                            double rr_max) {
  if (!(rr_max >= 1.0)) {
    ThrowInvalidConfiguration("maximum reflection count must be >= 1");
  }
  const double max_dist = params.sound_speed * params.t60;
  images.reflections.resize(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    const double p = params.perturb_a +
                     (params.perturb_b - params.perturb_a) * images.perturb_uniform[i];
    const double rel = images.distance[i] / max_dist;
    double g = 1.0 + rel * rel * (rr_max - 1.0) +
               p * std::pow(images.distance_ratio[i], params.tau);
    images.reflections[i] = std::clamp(g, 1.0, rr_max);
  }
}

std::size_t TrainLength(const SimParams& params, const RateFactors& factors) {
  return static_cast<std::size_t>(std::ceil(params.t60 * factors.high_rate()));
}

HighRateTrain BuildImpulseTrain(const ImageSet& images, const SimParams& params,
                                double reflection_coefficient) {
  const RateFactors factors = ComputeRateFactors(params.sample_rate);
  const double rate = factors.high_rate();
  const double c0 = params.sound_speed;
  const std::size_t length = TrainLength(params, factors);
  const double last = static_cast<double>(length - 1);
  if (images.reflections.size() != images.size()) {
    ThrowInvalidArgument("reflection counts have not been sampled");
  }

  // r^g_i is shared by all channels.
  std::vector<double> gain(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    gain[i] = std::pow(reflection_coefficient, images.reflections[i]);
  }

  HighRateTrain train;
  train.sample_rate = rate;
  train.channels.assign(images.num_mics, std::vector<double>(length, 0.0));
  train.direct_index.resize(images.num_mics);
  for (std::size_t m = 0; m < images.num_mics; ++m) {
    std::vector<double>& h = train.channels[m];
    const double d0 = images.direct_mic_distance[m];
    const auto q0 = static_cast<std::size_t>(std::min(ArrivalIndex(d0, c0, rate), last));
    h[q0] += 1.0 / d0;
    train.direct_index[m] = q0;
    for (std::size_t i = 0; i < images.size(); ++i) {
      const double d = images.MicDistance(i, m);
      const auto q = static_cast<std::size_t>(std::min(ArrivalIndex(d, c0, rate), last));
      h[q] += gain[i] / d;
    }
  }
  return train;
}

EarlyWindow EarlyReverbWindow(double high_rate) {
  return {static_cast<std::size_t>(std::ceil(6.0 * high_rate / 1000.0)),
          static_cast<std::size_t>(std::ceil(50.0 * high_rate / 1000.0))};
}

HighRateTrain EarlyReverbTrain(const HighRateTrain& train) {
  const EarlyWindow window = EarlyReverbWindow(train.sample_rate);
  HighRateTrain early;
  early.sample_rate = train.sample_rate;
  early.direct_index = train.direct_index;
  early.channels.reserve(train.channels.size());
  for (std::size_t m = 0; m < train.channels.size(); ++m) {
    const auto& h = train.channels[m];
    std::vector<double> e(h.size(), 0.0);
    const std::size_t q0 = train.direct_index.at(m);
    const std::size_t lo = q0 >= window.before ? q0 - window.before : 0;
    const std::size_t hi = std::min(h.size() - 1, q0 + window.after);
    std::copy(h.begin() + lo, h.begin() + hi + 1, e.begin() + lo);
    early.channels.push_back(std::move(e));
  }
  return early;
}

namespace {

void SimulateOne(const SimParams& params, const Scene& scene,
                 const DecimationChain& chain, bool with_early,
                 std::size_t source_index, SourceRir& out,
                 std::vector<std::string>& warnings) {
  const double r = ReflectionCoefficient(scene.room_dims, params.t60);
  ImageSet images = SampleImageGeometry(params, scene, source_index);
  double rr_max = MaxReflections(params.t60, images.direct_distance, r,
                                 params.sound_speed);
  if (rr_max < 1.0) {
    std::ostringstream msg;
    msg << "source " << source_index << ": spreading loss alone exceeds 60 dB "
        << "(RR_max = " << rr_max << "), using RR_max = 1";
    warnings.push_back(msg.str());
    rr_max = 1.0;
  }
  SampleReflectionCounts(images, params, rr_max);
  const HighRateTrain train = BuildImpulseTrain(images, params, r);

  const SourcePlacement& placement = scene.sources[source_index];
  out.position = images.source_position;
  out.azimuth = placement.azimuth;
  out.elevation = placement.elevation;
  out.direct_distance = images.direct_distance;
  out.reflection_coefficient = r;
  out.rr_max = rr_max;

  const std::uint64_t hash = SceneHash(scene);
  auto finish = [&](RirFilter f, RirKind kind) {
    f.kind = kind;
    f.seed = params.seed;
    f.params = params;
    f.scene_hash = hash;
    return f;
  };
  out.full = finish(DownsampleHighpassDownsample(train, chain), RirKind::kFull);
  if (with_early) {
    out.early = finish(DownsampleHighpassDownsample(EarlyReverbTrain(train), chain),
                       RirKind::kEarly);
  }
}

}  // namespace

SimulationResult SimulateRir(const SimParams& params, const Scene& scene,
                             const SimulateOptions& options) {
  params.Validate();
  ValidateScene(scene);
  const RateFactors factors = ComputeRateFactors(params.sample_rate);
  const DecimationChain chain(factors, options.chain);

  SimulationResult result;
  const std::size_t n = scene.sources.size();
  result.sources.resize(n);
  std::vector<std::vector<std::string>> warnings(n);
  for (std::size_t s = 0; s < n; ++s) {
    if (scene.sources[s].distance > RoomDiagonal(scene.room_dims)) {
      std::ostringstream msg;
      msg << "source " << s << " distance " << scene.sources[s].distance
          << " m exceeds the room diagonal";
      warnings[s].push_back(msg.str());
    }
  }

  const std::size_t workers =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::max(1, options.threads)), 1, n);
  if (workers == 1) {
    for (std::size_t s = 0; s < n; ++s) {
      SimulateOne(params, scene, chain, options.early, s, result.sources[s], warnings[s]);
    }
  } else {
    std::vector<std::exception_ptr> errors(n);
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t s = w; s < n; s += workers) {
          try {
            SimulateOne(params, scene, chain, options.early, s, result.sources[s],
                        warnings[s]);
          } catch (...) {
            errors[s] = std::current_exception();
          }
        }
      });
    }
    pool.clear();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  for (auto& w : warnings) {
    result.warnings.insert(result.warnings.end(), w.begin(), w.end());
  }
  return result;
}

}  // namespace framrir
