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


#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "framrir/fram.hpp"
#include "framrir/geometry.hpp"
#include "framrir/resample.hpp"
#include "framrir/rng.hpp"

namespace framrir {
namespace {

// Independent long-double evaluations used as oracles.
long double OracleReflection(long double x, long double y, long double z, long double t60) {
  const long double ratio = x * y * z / (2.0L * (x * y + x * z + y * z));
  const long double a = 1.0L - std::exp(-0.16L * ratio / t60);
  return std::sqrt(1.0L - a * a);
}

long double OracleMaxReflections(long double t60, long double d0, long double r, long double c0) {
  return (std::log10(c0 * t60) - std::log10(d0) - 3.0L) / std::log10(r);
}

Scene EvalScene(double distance = 1.5, double azimuth = 0.3, double elevation = 0.0) {
  Scene scene;
  scene.mic_positions = EvalArray();
  scene.sources.push_back({distance, azimuth, elevation});
  return scene;
}

TEST(ReflectionCoefficient, ShoeboxExample) {
  const double r = ReflectionCoefficient({5, 4, 3}, 0.5);
  EXPECT_NEAR(r, static_cast<double>(OracleReflection(5, 4, 3, 0.5L)), 1e-14);
  EXPECT_NEAR(r, 0.98279, 5e-6);
}

TEST(ReflectionCoefficient, Limits) {
  EXPECT_LT(ReflectionCoefficient({5, 4, 3}, 1e-4), 1e-3);
  EXPECT_GT(ReflectionCoefficient({5, 4, 3}, 1e4), 0.999999);
}

TEST(ReflectionCoefficient, RejectsBadInput) {
  EXPECT_THROW(ReflectionCoefficient({0, 4, 3}, 0.5), Error);
  EXPECT_THROW(ReflectionCoefficient({5, -4, 3}, 0.5), Error);
  EXPECT_THROW(ReflectionCoefficient({5, 4, 3}, 0.0), Error);
}

TEST(MaxReflections, Example) {
  const double r = 0.98279;
  EXPECT_NEAR(MaxReflections(0.5, 1.5, r, 343),
              static_cast<double>(OracleMaxReflections(0.5L, 1.5L, 0.98279L, 343.0L)), 1e-9);
  EXPECT_NEAR(MaxReflections(0.5, 1.5, r, 343), 124.9, 0.05);
}

TEST(MaxReflections, DivergesAsReflectionTendsToOne) {
  double prev = 0.0;
  for (double r : {0.9, 0.99, 0.999, 0.9999}) {
    const double rr = MaxReflections(0.5, 1.5, r, 343);
    EXPECT_GT(rr, prev);
    prev = rr;
  }
  EXPECT_GT(prev, 1e4);
}

TEST(MaxReflections, Errors) {
  try {
    MaxReflections(0.5, 1.5, 1.0, 343);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
  EXPECT_THROW(MaxReflections(0.5, 1.5, 0.0, 343), Error);
  try {
    MaxReflections(0.001, 1.5, 0.5, 343);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidConfiguration);
  }
}

TEST(MaxReflections, DecayIdentity) {
  const double r = ReflectionCoefficient({5, 4, 3}, 0.5);
  const double rr = MaxReflections(0.5, 1.5, r, 343);
  const double amplitude = std::pow(r, rr) / (343 * 0.5);
  EXPECT_NEAR(amplitude / (1e-3 / 1.5), 1.0, 1e-9);
}

TEST(DistanceRatio, InverseCdf) {
  EXPECT_DOUBLE_EQ(UnitDistanceRatio(1.0, 0.1, 1.0), 1.0);
  EXPECT_NEAR(UnitDistanceRatio(1e-300, 0.1, 1.0), 0.1, 1e-15);
  // CDF(x) = (x^3 - a^3) / (b^3 - a^3) inverts the draw.
  for (double u : {0.1, 0.25, 0.5, 0.9}) {
    const double x = UnitDistanceRatio(u, 0.2, 0.8);
    EXPECT_NEAR((x * x * x - 0.008) / (0.512 - 0.008), u, 1e-14);
  }
}

TEST(DistanceRatio, RescaleEndpointsAndExample) {
  EXPECT_NEAR(RescaleDistanceRatio(0.1, 0.1, 1.0, 0.5, 1.5, 343), 1.0, 1e-15);
  EXPECT_NEAR(RescaleDistanceRatio(1.0, 0.1, 1.0, 0.5, 1.5, 343), 343 * 0.5 / 1.5, 1e-12);
  const long double oracle =
      1.0L + 0.1L / 0.9L * (0.5L / 0.1L - 1.0L) * (343.0L * 0.5L / 1.5L - 1.0L);
  EXPECT_NEAR(RescaleDistanceRatio(0.5, 0.1, 1.0, 0.5, 1.5, 343), static_cast<double>(oracle), 1e-12);
  EXPECT_NEAR(RescaleDistanceRatio(0.5, 0.1, 1.0, 0.5, 1.5, 343), 51.37, 0.005);
}

TEST(ImageGeometry, InvariantsHold) {
  SimParams params;
  params.seed = 11;
  const Scene scene = EvalScene();
  const ImageSet set = SampleImageGeometry(params, scene, 0);
  ASSERT_EQ(set.size(), 2048u);
  EXPECT_NEAR(set.direct_distance, 1.5, 1e-12);
  const double reach = params.sound_speed * params.t60;
  for (std::size_t i = 0; i < set.size(); ++i) {
    EXPECT_GT(set.distance[i], set.direct_distance);
    EXPECT_LE(set.distance[i], reach * (1 + 1e-12));
    EXPECT_GE(set.azimuth[i], 0.0);
    EXPECT_LE(set.azimuth[i], 2 * std::numbers::pi);
    EXPECT_GE(set.elevation[i], -std::numbers::pi / 2);
    EXPECT_LE(set.elevation[i], std::numbers::pi / 2);
    EXPECT_NEAR(set.distance[i], set.direct_distance * set.distance_ratio[i], 1e-9);
    // Images sit on the sphere of radius D_i about the centre.
    const Vec3 pos = set.sphere_center + set.distance[i] * Direction(set.azimuth[i], set.elevation[i]);
    for (std::size_t m = 0; m < set.num_mics; ++m) {
      EXPECT_NEAR(set.MicDistance(i, m), Distance(pos, AbsoluteMicPositions(scene)[m]), 1e-9);
    }
  }
}

TEST(ImageGeometry, DeterministicAndIndependentOfImageCount) {
  SimParams params;
  params.seed = 5;
  const Scene scene = EvalScene();
  const ImageSet a = SampleImageGeometry(params, scene, 0);
  const ImageSet b = SampleImageGeometry(params, scene, 0);
  EXPECT_EQ(a.distance, b.distance);
  EXPECT_EQ(a.mic_distance, b.mic_distance);
  params.num_images = 100;
  const ImageSet c = SampleImageGeometry(params, scene, 0);
  for (std::size_t i = 0; i < c.size(); ++i) EXPECT_EQ(c.distance[i], a.distance[i]);
}

TEST(ImageGeometry, Errors) {
  SimParams params;
  params.alpha = 0.0;
  try {
    SampleImageGeometry(params, EvalScene(), 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
  params = SimParams{};
  params.t60 = 0.001;  // c0 * T60 = 0.343 m < d0
  try {
    SampleImageGeometry(params, EvalScene(), 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidConfiguration);
  }
  EXPECT_THROW(SampleImageGeometry(SimParams{}, EvalScene(), 1), Error);
}

ImageSet SyntheticImages(std::vector<double> distances, double d0) {
  ImageSet set;
  set.direct_distance = d0;
  for (double d : distances) {
    set.distance.push_back(d);
    set.distance_ratio.push_back(d / d0);
    set.perturb_uniform.push_back(0.5);
  }
  return set;
}

TEST(ReflectionCounts, ExamplesWithoutPerturbation) {
  SimParams params;
  params.perturb_a = params.perturb_b = 0.0;
  const double reach = params.sound_speed * params.t60;
  ImageSet set = SyntheticImages({reach, reach / 2}, 1.5);
  SampleReflectionCounts(set, params, 124.9);
  EXPECT_DOUBLE_EQ(set.reflections[0], 124.9);
  const double oracle = 1.0 + 0.25 * (124.9 - 1.0);
  EXPECT_NEAR(set.reflections[1], oracle, 1e-12);
  EXPECT_NEAR(set.reflections[1], 31.98, 0.01);
}

TEST(ReflectionCounts, ClampedToRange) {
  SimParams params;
  params.perturb_a = params.perturb_b = 1e6;
  ImageSet set = SyntheticImages({2.0, 50.0, 171.5}, 1.5);
  SampleReflectionCounts(set, params, 124.9);
  for (double g : set.reflections) EXPECT_EQ(g, 124.9);
  params.perturb_a = params.perturb_b = -1e6;
  SampleReflectionCounts(set, params, 124.9);
  for (double g : set.reflections) EXPECT_EQ(g, 1.0);
  EXPECT_THROW(SampleReflectionCounts(set, params, 0.5), Error);
}

TEST(ReflectionCounts, MonotoneWithoutPerturbation) {
  SimParams params;
  params.perturb_a = params.perturb_b = 0.0;
  params.seed = 21;
  ImageSet set = SampleImageGeometry(params, EvalScene(), 0);
  SampleReflectionCounts(set, params, 124.9);
  std::vector<std::size_t> order(set.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return set.distance[a] < set.distance[b]; });
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (set.distance[order[k]] > set.distance[order[k - 1]]) {
      EXPECT_GT(set.reflections[order[k]], set.reflections[order[k - 1]]);
    }
  }
}

TEST(ImpulseTrain, IndexArithmeticExample) {
  const RateFactors f = ComputeRateFactors(16000);
  EXPECT_EQ(ArrivalIndex(3.43, 343, f.high_rate()), 9920.0);
}

TEST(ImpulseTrain, DirectPathOnlyWithoutImages) {
  SimParams params;
  params.num_images = 0;
  const Scene scene = EvalScene();
  ImageSet set = SampleImageGeometry(params, scene, 0);
  SampleReflectionCounts(set, params, 10.0);
  const HighRateTrain train = BuildImpulseTrain(set, params, 0.9);
  ASSERT_EQ(train.channels.size(), 4u);
  EXPECT_EQ(train.length(), static_cast<std::size_t>(std::ceil(0.5 * 992000)));
  for (std::size_t m = 0; m < 4; ++m) {
    std::size_t nonzero = 0;
    for (double v : train.channels[m]) nonzero += v != 0.0;
    EXPECT_EQ(nonzero, 1u);
    const double d = set.direct_mic_distance[m];
    EXPECT_EQ(train.channels[m][train.direct_index[m]], 1.0 / d);
    EXPECT_EQ(train.direct_index[m], static_cast<std::size_t>(std::ceil(d / 343 * 992000)));
  }
}

TEST(ImpulseTrain, EndfireTdoa) {
  SimParams params;
  params.num_images = 0;
  Scene scene;
  const double spacing[] = {0.08};
  scene.mic_positions = LinearArray(spacing);
  scene.sources.push_back({2.0, 0.0, 0.0});  // along +x, the array axis
  ImageSet set = SampleImageGeometry(params, scene, 0);
  SampleReflectionCounts(set, params, 10.0);
  const HighRateTrain train = BuildImpulseTrain(set, params, 0.9);
  const auto diff = static_cast<long>(train.direct_index[0]) - static_cast<long>(train.direct_index[1]);
  const long expected = static_cast<long>(std::ceil(set.direct_mic_distance[0] / 343 * 992000)) -
                        static_cast<long>(std::ceil(set.direct_mic_distance[1] / 343 * 992000));
  EXPECT_EQ(diff, expected);
  EXPECT_NEAR(static_cast<double>(diff), 0.08 / 343 * 992000, 1.0);
  EXPECT_NEAR(static_cast<double>(diff), 231, 1.0);
}

TEST(ImpulseTrain, SumsContributionsAndClampsIndices) {
  SimParams params;
  params.seed = 4;
  const Scene scene = EvalScene();
  const double r = ReflectionCoefficient(scene.room_dims, params.t60);
  ImageSet set = SampleImageGeometry(params, scene, 0);
  SampleReflectionCounts(set, params, MaxReflections(params.t60, set.direct_distance, r, 343));
  const HighRateTrain train = BuildImpulseTrain(set, params, r);
  const std::size_t last = train.length() - 1;
  for (std::size_t m = 0; m < 4; ++m) {
    // Reference accumulation in reverse order; must agree to rounding.
    std::vector<long double> ref(train.length(), 0.0L);
    for (std::size_t i = set.size(); i-- > 0;) {
      const double d = set.MicDistance(i, m);
      const auto q = std::min<std::size_t>(static_cast<std::size_t>(std::ceil(d / 343 * 992000)), last);
      ref[q] += std::pow(static_cast<long double>(r), set.reflections[i]) / d;
    }
    ref[train.direct_index[m]] += 1.0L / set.direct_mic_distance[m];
    for (std::size_t n = 0; n < ref.size(); ++n) {
      ASSERT_NEAR(train.channels[m][n], static_cast<double>(ref[n]), 1e-12) << n;
    }
  }
}

TEST(ImpulseTrain, NoImageLongBeforeDirectPath) {
  SimParams params;
  const Scene scene = EvalScene(1.0, 2.0, 0.2);
  const double aperture = ArrayAperture(scene.mic_positions);
  const auto slack = static_cast<std::size_t>(std::ceil(aperture / 343 * 992000));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    params.seed = seed;
    ImageSet set = SampleImageGeometry(params, scene, 0);
    SampleReflectionCounts(set, params, 50.0);
    const HighRateTrain train = BuildImpulseTrain(set, params, 0.9);
    for (std::size_t m = 0; m < 4; ++m) {
      const auto first = static_cast<std::size_t>(
          std::find_if(train.channels[m].begin(), train.channels[m].end(),
                       [](double v) { return v != 0.0; }) - train.channels[m].begin());
      EXPECT_GE(first + slack, train.direct_index[m]);
    }
  }
}

TEST(EarlyTrain, WindowBounds) {
  const EarlyWindow w = EarlyReverbWindow(992000);
  EXPECT_EQ(w.before, 5952u);
  EXPECT_EQ(w.after, 49600u);
}

TEST(EarlyTrain, PartitionAndSupport) {
  SimParams params;
  params.seed = 8;
  const Scene scene = EvalScene();
  const double r = ReflectionCoefficient(scene.room_dims, params.t60);
  ImageSet set = SampleImageGeometry(params, scene, 0);
  SampleReflectionCounts(set, params, MaxReflections(params.t60, 1.5, r, 343));
  const HighRateTrain h = BuildImpulseTrain(set, params, r);
  const HighRateTrain e = EarlyReverbTrain(h);
  for (std::size_t m = 0; m < 4; ++m) {
    const std::size_t q0 = h.direct_index[m];
    EXPECT_EQ(e.channels[m][q0], h.channels[m][q0]);
    for (std::size_t n = 0; n < h.length(); ++n) {
      const double late = h.channels[m][n] - e.channels[m][n];
      EXPECT_EQ(e.channels[m][n] + late, h.channels[m][n]);
      const bool inside = n + 5952 >= q0 && n <= q0 + 49600;
      if (!inside) ASSERT_EQ(e.channels[m][n], 0.0);
      if (inside) ASSERT_EQ(e.channels[m][n], h.channels[m][n]);
    }
  }
  // An impulse 60 ms after the direct path is removed.
  HighRateTrain probe = h;
  for (auto& ch : probe.channels) std::fill(ch.begin(), ch.end(), 0.0);
  probe.channels[0][h.direct_index[0] + 59520] = 1.0;
  EXPECT_EQ(EarlyReverbTrain(probe).channels[0][h.direct_index[0] + 59520], 0.0);
}

TEST(SimulateRir, ReproducibleAndThreadIndependent) {
  SimParams params;
  params.seed = 77;
  Scene scene = EvalScene();
  scene.sources.push_back({2.5, -1.0, 0.1});
  scene.sources.push_back({0.8, 2.0, -0.2});
  SimulateOptions one;
  SimulateOptions many;
  many.threads = 3;
  const auto a = SimulateRir(params, scene, one);
  const auto b = SimulateRir(params, scene, one);
  const auto c = SimulateRir(params, scene, many);
  ASSERT_EQ(a.sources.size(), 3u);
  for (std::size_t s = 0; s < 3; ++s) {
    EXPECT_EQ(a.sources[s].full.channels, b.sources[s].full.channels);
    EXPECT_EQ(a.sources[s].full.channels, c.sources[s].full.channels);
    EXPECT_EQ(a.sources[s].early.channels, c.sources[s].early.channels);
    EXPECT_EQ(a.sources[s].full.kind, RirKind::kFull);
    EXPECT_EQ(a.sources[s].early.kind, RirKind::kEarly);
  }
  params.seed = 78;
  EXPECT_NE(SimulateRir(params, scene).sources[0].full.channels, a.sources[0].full.channels);
}

TEST(SimulateRir, OutputShapeAndMetadata) {
  SimParams params;
  const auto result = SimulateRir(params, EvalScene());
  const RirFilter& f = result.sources[0].full;
  EXPECT_EQ(f.num_channels(), 4u);
  EXPECT_EQ(f.num_samples(), 8000u);
  EXPECT_EQ(f.sample_rate, 16000);
  EXPECT_EQ(f.direct_path_sample.size(), 4u);
  for (const auto& ch : f.channels) {
    for (float v : ch) ASSERT_TRUE(std::isfinite(v));
  }
  EXPECT_TRUE(result.warnings.empty());
}

TEST(SimulateRir, WarnsForDistantSource) {
  SimParams params;
  const auto result = SimulateRir(params, EvalScene(9.0));
  EXPECT_FALSE(result.warnings.empty());
}

TEST(SimParams, Validation) {
  SimParams p;
  EXPECT_NO_THROW(p.Validate());
  p.alpha = 1.0;
  EXPECT_THROW(p.Validate(), Error);
  p = SimParams{};
  p.tau = 0.0;
  EXPECT_THROW(p.Validate(), Error);
  p = SimParams{};
  p.perturb_a = 3.0;
  EXPECT_THROW(p.Validate(), Error);
  p = SimParams{};
  p.num_images = -1;
  EXPECT_THROW(p.Validate(), Error);
}

}  // namespace
}  // namespace framrir
