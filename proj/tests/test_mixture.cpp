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
#include <cstring>
#include <numbers>
#include <vector>

#include "framrir/fram.hpp"
#include "framrir/geometry.hpp"
#include "framrir/mixture.hpp"
#include "signals.hpp"

namespace framrir {
namespace {

using testing::WhiteNoise;

double PowerDb(const std::vector<float>& x, std::size_t begin = 0,
               std::size_t end = SIZE_MAX) {
  end = std::min(end, x.size());
  double acc = 0;
  for (std::size_t i = begin; i < end; ++i) acc += double(x[i]) * x[i];
  return 10 * std::log10(acc);
}

std::vector<float> SumChannel(const Mixture& m, std::size_t c) {
  std::vector<float> out(m.num_samples, 0.0f);
  for (const auto& s : m.reverberant)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += s[c][i];
  return out;
}

RirFilter UnitImpulse(std::size_t channels, std::size_t length = 64) {
  RirFilter rir;
  rir.channels.assign(channels, std::vector<float>(length, 0.0f));
  for (auto& ch : rir.channels) ch[0] = 1.0f;
  rir.direct_path_sample.assign(channels, 0.0);
  return rir;
}

std::vector<RirFilter> SimulatedFilters(std::size_t sources, std::uint64_t seed) {
  SimParams params;
  params.seed = seed;
  params.t60 = 0.3;
  Scene scene;
  scene.mic_positions = EvalArray();
  for (std::size_t k = 0; k < sources; ++k)
    scene.sources.push_back({1.0 + 0.5 * k, 0.8 * k, 0.0});
  SimulateOptions options;
  options.early = false;
  std::vector<RirFilter> out;
  for (const auto& s : SimulateRir(params, scene, options).sources)
    out.push_back(s.full);
  return out;
}

TEST(MixtureSpec, DefaultsAndValidation) {
  MixtureSpec spec;
  EXPECT_EQ(spec.num_speakers, 2);
  EXPECT_EQ(spec.sir_db.min, -6.0);
  EXPECT_EQ(spec.sir_db.max, 6.0);
  EXPECT_EQ(spec.min_overlap_ratio, 0.5);
  EXPECT_EQ(spec.t60.min, 0.1);
  EXPECT_EQ(spec.t60.max, 0.7);
  EXPECT_NO_THROW(spec.Validate());
  MixtureSpec bad = spec;
  bad.t60 = {0.7, 0.1};
  EXPECT_THROW(bad.Validate(), Error);
  bad = spec;
  bad.num_speakers = 0;
  EXPECT_THROW(bad.Validate(), Error);
  bad = spec;
  bad.min_overlap_ratio = 1.5;
  EXPECT_THROW(bad.Validate(), Error);
}

TEST(SampleScene, DegenerateRangesAreExact) {
  MixtureSpec spec;
  spec.sir_db = {2.5, 2.5};
  spec.snr_db = {12, 12};
  spec.speaker_distance = {1.25, 1.25};
  spec.noise_distance = {2.0, 2.0};
  spec.t60 = {0.33, 0.33};
  spec.room_x = {6, 6};
  spec.room_y = {5, 5};
  spec.room_z = {3, 3};
  spec.azimuth_deg = {30, 30};
  spec.elevation_deg = {0, 0};
  CounterRng rng(3);
  const SceneDraw d = SampleScene(spec, rng);
  EXPECT_EQ(d.params.t60, 0.33);
  EXPECT_EQ(d.scene.room_dims, (Vec3{6, 5, 3}));
  ASSERT_EQ(d.scene.sources.size(), 3u);
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_EQ(d.scene.sources[k].distance, 1.25);
    EXPECT_DOUBLE_EQ(d.scene.sources[k].azimuth, std::numbers::pi / 6);
    EXPECT_EQ(d.scene.sources[k].elevation, 0.0);
  }
  EXPECT_EQ(d.scene.sources[2].distance, 2.0);
  ASSERT_EQ(d.sir_db.size(), 1u);
  EXPECT_EQ(d.sir_db[0], 2.5);
  EXPECT_EQ(d.snr_db, 12.0);
  EXPECT_EQ(d.scene.mic_positions.size(), 4u);
}

TEST(SampleScene, DrawsStayInRange) {
  MixtureSpec spec;
  CounterRng rng(11);
  double lo = 1, hi = 0;
  for (int i = 0; i < 10000; ++i) {
    const SceneDraw d = SampleScene(spec, rng);
    const double t = d.params.t60;
    lo = std::min(lo, t);
    hi = std::max(hi, t);
    ASSERT_GE(t, 0.1);
    ASSERT_LE(t, 0.7);
    if (i % 100 == 0) {
      const Vec3 r = d.scene.room_dims;
      EXPECT_TRUE(r.x >= 3 && r.x <= 10 && r.y >= 3 && r.y <= 10 && r.z >= 2.5 && r.z <= 4);
      for (const auto& s : d.scene.sources) {
        EXPECT_GE(s.distance, 0.3);
        EXPECT_LE(s.distance, 6.0);
        EXPECT_LE(std::abs(s.azimuth), std::numbers::pi + 1e-12);
        EXPECT_LE(std::abs(s.elevation), 20 * std::numbers::pi / 180 + 1e-12);
      }
      EXPECT_GE(d.sir_db[0], -6.0);
      EXPECT_LE(d.sir_db[0], 6.0);
      EXPECT_GE(d.snr_db, 10.0);
      EXPECT_LE(d.snr_db, 20.0);
    }
  }
  EXPECT_LT(lo, 0.101);
  EXPECT_GT(hi, 0.699);
}

TEST(SampleScene, DeterministicForSameRngState) {
  MixtureSpec spec;
  CounterRng a(99), b(99);
  for (int i = 0; i < 10; ++i) {
    const SceneDraw x = SampleScene(spec, a);
    const SceneDraw y = SampleScene(spec, b);
    EXPECT_EQ(x.params.t60, y.params.t60);
    EXPECT_EQ(x.params.seed, y.params.seed);
    EXPECT_EQ(SceneHash(x.scene), SceneHash(y.scene));
  }
}

TEST(Curriculum, EpochRanges) {
  const CurriculumState s0 = CurriculumAt(0);
  EXPECT_EQ(s0.lower_ms, 50.0);
  EXPECT_EQ(s0.upper_ms, 100.0);
  const CurriculumState s1 = CurriculumStep(s0);
  EXPECT_EQ(s1.epoch, 1);
  EXPECT_EQ(s1.lower_ms, 50.0);
  EXPECT_EQ(s1.upper_ms, 150.0);
  const int to_cap = static_cast<int>((700 - 100) / 50);
  EXPECT_EQ(CurriculumAt(to_cap).upper_ms, 700.0);
  EXPECT_EQ(CurriculumAt(to_cap - 1).upper_ms, 650.0);
  EXPECT_EQ(CurriculumAt(to_cap + 1).upper_ms, 700.0);
  EXPECT_EQ(CurriculumAt(100).upper_ms, 700.0);
  const Range r = CurriculumT60(s1);
  EXPECT_DOUBLE_EQ(r.min, 0.05);
  EXPECT_DOUBLE_EQ(r.max, 0.15);
}

TEST(Curriculum, SampledT60FollowsSchedule) {
  MixtureSpec spec;
  double previous_max = 0;
  for (int epoch = 0; epoch <= 14; ++epoch) {
    const CurriculumState state = CurriculumAt(epoch);
    CounterRng rng(DeriveSeed(5, epoch));
    double max_t60 = 0;
    for (int i = 0; i < 1000; ++i) {
      const double t = SampleScene(spec, rng, state).params.t60;
      ASSERT_GE(t, 0.05);
      ASSERT_LE(t, std::min(100.0 + 50.0 * epoch, 700.0) / 1000.0 + 1e-12);
      max_t60 = std::max(max_t60, t);
    }
    // Past the cap the range no longer moves.
    if (epoch <= 12) EXPECT_GE(max_t60, previous_max) << epoch;
    previous_max = max_t60;
  }
}

TEST(Overlap, RatioDefinition) {
  EXPECT_DOUBLE_EQ(OverlapRatio(0, 100, 0, 100), 1.0);
  EXPECT_DOUBLE_EQ(OverlapRatio(0, 100, 50, 100), 50.0 / 150.0);
  EXPECT_DOUBLE_EQ(OverlapRatio(0, 100, 100, 100), 0.0);
  EXPECT_DOUBLE_EQ(OverlapRatio(0, 100, 20, 50), 0.5);
  EXPECT_DOUBLE_EQ(OverlapRatio(30, 100, 0, 100), OverlapRatio(0, 100, 30, 100));
}

TEST(Overlap, MaxOffsetIsTight) {
  for (auto [a, b] : {std::pair<std::size_t, std::size_t>{1000, 1000},
                      {1000, 700}, {700, 1000}, {1234, 999}}) {
    const std::int64_t d = MaxOverlapOffset(a, b, 0.5);
    ASSERT_GE(d, 0);
    EXPECT_GE(OverlapRatio(0, a, d, b), 0.5);
    EXPECT_LT(OverlapRatio(0, a, d + 1, b), 0.5);
  }
  EXPECT_EQ(MaxOverlapOffset(1000, 3000, 0.5), -1);
}

TEST(Mix, IdentityFilterGivesOffsetSumOfScaledSignals) {
  const std::vector<std::vector<float>> speakers{WhiteNoise(3000, 1), WhiteNoise(2500, 2)};
  const std::vector<RirFilter> rirs{UnitImpulse(2), UnitImpulse(2), UnitImpulse(2)};
  MixRequest request;
  request.speakers = speakers;
  request.rirs = rirs;
  request.sir_db = {3.0};
  request.snr_db = 10;
  MixtureSpec spec;
  CounterRng rng(8);
  const Mixture m = SpatializeAndMix(request, spec, rng);
  ASSERT_EQ(m.offsets.size(), 2u);
  EXPECT_EQ(m.noise_gain, 1.0);  // no noise signal: nothing to scale
  for (std::size_t c = 0; c < 2; ++c) {
    for (std::size_t i = 0; i < m.num_samples; ++i) {
      double expected = 0;
      for (std::size_t k = 0; k < 2; ++k) {
        const std::int64_t j = static_cast<std::int64_t>(i) - m.offsets[k];
        if (j >= 0 && j < static_cast<std::int64_t>(speakers[k].size()))
          expected += m.gains[k] * speakers[k][static_cast<std::size_t>(j)];
      }
      ASSERT_NEAR(m.mixture[c][i], expected, 1e-6) << c << " " << i;
    }
  }
}

TEST(Mix, SirAndSnrAreExact) {
  const auto rirs = SimulatedFilters(3, 4);
  for (SirRegion region : {SirRegion::kFullUtterance, SirRegion::kOverlap}) {
    for (double sir : {0.0, -6.0, 4.5}) {
      const std::vector<std::vector<float>> speakers{WhiteNoise(16000, 10), WhiteNoise(12000, 11)};
      const auto noise = WhiteNoise(8000, 12);
      MixRequest request;
      request.speakers = speakers;
      request.noise = noise;
      request.rirs = rirs;
      request.sir_db = {sir};
      request.snr_db = 13.0;
      MixtureSpec spec;
      spec.sir_region = region;
      CounterRng rng(20);
      const Mixture m = SpatializeAndMix(request, spec, rng);
      std::size_t begin = 0, end = m.num_samples;
      if (region == SirRegion::kOverlap) {
        begin = static_cast<std::size_t>(std::max(m.offsets[0], m.offsets[1]));
        end = static_cast<std::size_t>(std::min(m.offsets[0] + 16000, m.offsets[1] + 12000));
      }
      const double achieved = PowerDb(m.reverberant[0][0], begin, end) -
                              PowerDb(m.reverberant[1][0], begin, end);
      EXPECT_NEAR(achieved, sir, 0.01);
      const double snr = PowerDb(SumChannel(m, 0)) - PowerDb(m.noise[0]);
      EXPECT_NEAR(snr, 13.0, 0.01);
    }
  }
}

TEST(Mix, OverlapConstraintHoldsOverManyPairs) {
  const std::vector<RirFilter> rirs{UnitImpulse(1, 1), UnitImpulse(1, 1), UnitImpulse(1, 1)};
  MixtureSpec spec;
  CounterRng lengths(77);
  CounterRng rng(78);
  double min_seen = 1.0;
  for (int i = 0; i < 1000; ++i) {
    const auto a = static_cast<std::size_t>(lengths.UniformInt(1000, 2000));
    const auto b = static_cast<std::size_t>(lengths.UniformInt(1000, 2000));
    const std::vector<std::vector<float>> speakers{std::vector<float>(a, 0.1f),
                                                   std::vector<float>(b, 0.1f)};
    MixRequest request;
    request.speakers = speakers;
    request.rirs = rirs;
    request.sir_db = {0.0};
    const Mixture m = SpatializeAndMix(request, spec, rng);
    const double ratio = OverlapRatio(m.offsets[0], a, m.offsets[1], b);
    EXPECT_DOUBLE_EQ(ratio, m.overlap_ratio[0]);
    min_seen = std::min(min_seen, ratio);
  }
  EXPECT_GE(min_seen, 0.5);
}

TEST(Mix, InfeasibleOverlapIsRejected) {
  const std::vector<RirFilter> rirs{UnitImpulse(1), UnitImpulse(1), UnitImpulse(1)};
  const std::vector<std::vector<float>> speakers{WhiteNoise(1000, 1), WhiteNoise(3000, 2)};
  MixRequest request;
  request.speakers = speakers;
  request.rirs = rirs;
  request.sir_db = {0.0};
  CounterRng rng(1);
  EXPECT_THROW(SpatializeAndMix(request, MixtureSpec{}, rng), Error);
  request.sir_db = {};
  EXPECT_THROW(SpatializeAndMix(request, MixtureSpec{}, rng), Error);
}

TEST(Mix, EarlyReferencesShareGainsAndPlacement) {
  SimParams params;
  params.seed = 6;
  params.t60 = 0.4;
  Scene scene;
  scene.mic_positions = EvalArray();
  scene.sources = {{1.2, 0.3, 0}, {2.0, 2.0, 0}, {2.5, -1.0, 0}};
  const auto sim = SimulateRir(params, scene);
  const std::vector<RirFilter> rirs{sim.sources[0].full, sim.sources[1].full, sim.sources[2].full};
  const std::vector<RirFilter> early{sim.sources[0].early, sim.sources[1].early};
  const std::vector<std::vector<float>> speakers{WhiteNoise(8000, 1), WhiteNoise(8000, 2)};
  MixRequest request;
  request.speakers = speakers;
  request.rirs = rirs;
  request.early_rirs = early;
  request.sir_db = {-2.0};
  CounterRng rng(2);
  const Mixture m = SpatializeAndMix(request, MixtureSpec{}, rng);
  ASSERT_EQ(m.early.size(), 2u);
  for (std::size_t k = 0; k < 2; ++k) {
    ASSERT_EQ(m.early[k].size(), 4u);
    EXPECT_EQ(m.early[k][0].size(), m.num_samples);
    // Early energy is part of the full response.
    EXPECT_LT(PowerDb(m.early[k][0]), PowerDb(m.reverberant[k][0]) + 0.5);
    for (std::int64_t i = 0; i < m.offsets[k]; ++i)
      EXPECT_EQ(m.early[k][0][static_cast<std::size_t>(i)], 0.0f);
  }
}

bool SameBytes(const std::vector<float>& a, const std::vector<float>& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(float)) == 0;
}

bool SameItem(const BatchItem& a, const BatchItem& b) {
  if (a.seed != b.seed || a.mixture.num_samples != b.mixture.num_samples) return false;
  if (a.mixture.offsets != b.mixture.offsets || a.mixture.gains != b.mixture.gains) return false;
  for (std::size_t c = 0; c < a.mixture.mixture.size(); ++c)
    if (!SameBytes(a.mixture.mixture[c], b.mixture.mixture[c])) return false;
  for (std::size_t k = 0; k < a.mixture.early.size(); ++k)
    for (std::size_t c = 0; c < a.mixture.early[k].size(); ++c)
      if (!SameBytes(a.mixture.early[k][c], b.mixture.early[k][c])) return false;
  return true;
}

BatchRequest SmallRequest(std::size_t batch, int workers) {
  BatchRequest request;
  request.batch_size = batch;
  request.master_seed = 1234;
  request.workers = workers;
  request.spec.num_images = 256;
  request.spec.room_x = {4, 6};
  request.spec.room_y = {4, 6};
  request.spec.speaker_distance = {0.5, 1.5};
  request.spec.noise_distance = {0.5, 1.5};
  return request;
}

TEST(Batch, ReproducibleAndWorkerIndependent) {
  SyntheticSourceBank::Options options;
  options.duration_s = {1.0, 1.5};
  const SyntheticSourceBank bank(options);
  const auto one = GenerateBatch(SmallRequest(8, 1), bank);
  const auto again = GenerateBatch(SmallRequest(8, 1), bank);
  const auto eight = GenerateBatch(SmallRequest(8, 8), bank);
  ASSERT_EQ(one.size(), 8u);
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_TRUE(SameItem(one[i], again[i])) << i;
    EXPECT_TRUE(SameItem(one[i], eight[i])) << i;
    EXPECT_EQ(one[i].seed, DeriveSeed(1234, 0, i));
    EXPECT_GE(one[i].mixture.overlap_ratio[0], 0.5);
    EXPECT_EQ(one[i].mixture.early.size(), 2u);
  }
  EXPECT_FALSE(SameItem(one[0], one[1]));
}

TEST(Batch, EpochChangesItemSeeds) {
  SyntheticSourceBank::Options options;
  options.duration_s = {1.0, 1.0};
  const SyntheticSourceBank bank(options);
  BatchRequest request = SmallRequest(1, 1);
  request.curriculum = CurriculumAt(0);
  const auto e0 = GenerateItem(request, bank, 0);
  request.curriculum = CurriculumAt(3);
  const auto e3 = GenerateItem(request, bank, 0);
  EXPECT_NE(e0.seed, e3.seed);
  EXPECT_LE(e0.draw.params.t60, 0.1);
  EXPECT_LE(e3.draw.params.t60, 0.25);
}

class ThrowingBank : public SourceBank {
 public:
  std::vector<float> Speech(CounterRng&) const override {
    throw Error(ErrorCode::kIo, "no speech");
  }
  std::vector<float> Noise(CounterRng&, std::size_t n) const override {
    return std::vector<float>(n);
  }
};

TEST(Batch, WorkerFailurePropagates) {
  EXPECT_THROW(GenerateBatch(SmallRequest(4, 2), ThrowingBank{}), Error);
}

}  // namespace
}  // namespace framrir
