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


#ifndef FRAMRIR_MIXTURE_HPP_
#define FRAMRIR_MIXTURE_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "framrir/rng.hpp"
#include "framrir/types.hpp"

namespace framrir {

struct Range {
  double min = 0.0;
  double max = 0.0;
};

enum class SirRegion {
  kFullUtterance,  // power of each reverberant source over its whole extent
  kOverlap,        // power inside the region where both sources are active
};

struct MixtureSpec {
  int num_speakers = 2;
  Range sir_db{-6.0, 6.0};
  Range snr_db{10.0, 20.0};
  double min_overlap_ratio = 0.5;
  Range speaker_distance{0.3, 6.0};
  Range noise_distance{0.3, 6.0};
  Range t60{0.1, 0.7};
  Range room_x{3.0, 10.0};
  Range room_y{3.0, 10.0};
  Range room_z{2.5, 4.0};
  Range azimuth_deg{-180.0, 180.0};
  Range elevation_deg{-20.0, 20.0};
  std::vector<double> mic_spacings{0.04, 0.08, 0.04};
  double sample_rate = 16000;
  int num_images = 2048;
  SirRegion sir_region = SirRegion::kFullUtterance;
  // Reference microphone for SIR and SNR.
  std::size_t reference_mic = 0;
  bool early_targets = true;

  // Throws Error(kInvalidArgument) on empty or inverted ranges.
  void Validate() const;
};

// T60 schedule: the lower bound stays fixed and the upper bound grows by
// `step_ms` per epoch until it reaches `max_ms`.
struct CurriculumState {
  int epoch = 0;
  double lower_ms = 50.0;
  double upper_ms = 100.0;
  double max_ms = 700.0;
  double step_ms = 50.0;
};

CurriculumState CurriculumStep(const CurriculumState& state);
// State after `epoch` steps from `initial`.
CurriculumState CurriculumAt(int epoch, const CurriculumState& initial = {});
// T60 range in seconds for the state.
Range CurriculumT60(const CurriculumState& state);

// Room, array and source placement for one utterance. Sources are the
// speakers followed by one point noise source.
struct SceneDraw {
  Scene scene;
  SimParams params;
  std::vector<double> sir_db;  // one per interfering speaker
  double snr_db = 0.0;
};

// Draws every quantity uniformly from its range. The array sits at the room
// centre. When a curriculum is given its range replaces spec.t60.
SceneDraw SampleScene(const MixtureSpec& spec, CounterRng& rng,
                      const std::optional<CurriculumState>& curriculum = std::nullopt);

// Overlap of two segments divided by the length of their union.
double OverlapRatio(std::int64_t start_a, std::size_t len_a,
                    std::int64_t start_b, std::size_t len_b);

// Largest offset d >= 0 such that a segment of length `len_b` starting d
// samples after one of length `len_a` still meets `min_ratio`, or -1 when
// even d = 0 does not.
std::int64_t MaxOverlapOffset(std::size_t len_a, std::size_t len_b,
                              double min_ratio);

struct Mixture {
  std::size_t num_samples = 0;
  // [channel][sample]
  std::vector<std::vector<float>> mixture;
  // [speaker][channel][sample], scaled as they appear in the mixture.
  std::vector<std::vector<std::vector<float>>> reverberant;
  std::vector<std::vector<std::vector<float>>> early;
  std::vector<std::vector<float>> noise;

  std::vector<std::int64_t> offsets;  // per speaker start sample
  std::vector<double> gains;          // per speaker dry-signal gain
  double noise_gain = 1.0;
  std::vector<double> overlap_ratio;  // speaker 0 against each other speaker
};

struct MixRequest {
  std::span<const std::vector<float>> speakers;
  std::span<const float> noise;  // repeated if shorter than the mixture
  // One filter per speaker followed by the noise filter.
  std::span<const RirFilter> rirs;
  // Early filters per speaker; may be empty.
  std::span<const RirFilter> early_rirs;
  std::vector<double> sir_db;  // per interfering speaker
  double snr_db = 0.0;
};

// Places the speakers with a uniform overlap-constrained offset, scales each
// interferer so the reference-channel SIR matches, then scales the noise to
// the requested SNR against the summed reverberant speech.
Mixture SpatializeAndMix(const MixRequest& request, const MixtureSpec& spec,
                         CounterRng& rng);

// Dry signals for the mixer.
class SourceBank {
 public:
  virtual ~SourceBank() = default;
  virtual std::vector<float> Speech(CounterRng& rng) const = 0;
  virtual std::vector<float> Noise(CounterRng& rng, std::size_t length) const = 0;
};

// Deterministic stand-in for a speech corpus: amplitude-modulated harmonic
// tones with random pitch and syllable rate, harmonics up to 0.45 f_s with a
// 1/h tilt, plus a low white-noise floor.
class SyntheticSourceBank : public SourceBank {
 public:
  struct Options {
    double sample_rate = 16000;
    Range duration_s{3.0, 4.0};
    bool silent = false;  // all-zero signals, for overhead measurements
  };
  SyntheticSourceBank() : SyntheticSourceBank(Options{}) {}
  explicit SyntheticSourceBank(Options options) : options_(options) {}
  std::vector<float> Speech(CounterRng& rng) const override;
  std::vector<float> Noise(CounterRng& rng, std::size_t length) const override;

 private:
  Options options_;
};

// Mono (or first-channel) WAV files from directories, sorted by path so that
// a seed selects the same file on every host. Files must be at the bank's
// sample rate.
class WavDirectoryBank : public SourceBank {
 public:
  WavDirectoryBank(const std::filesystem::path& speech_dir,
                   const std::optional<std::filesystem::path>& noise_dir,
                   double sample_rate);
  std::vector<float> Speech(CounterRng& rng) const override;
  // White noise when no noise directory was given.
  std::vector<float> Noise(CounterRng& rng, std::size_t length) const override;

 private:
  std::vector<float> Load(const std::filesystem::path& path) const;
  std::vector<std::filesystem::path> speech_;
  std::vector<std::filesystem::path> noise_;
  double sample_rate_;
};

struct BatchItem {
  std::uint64_t seed = 0;
  SceneDraw draw;
  Mixture mixture;
  std::vector<std::string> warnings;
};

struct BatchRequest {
  std::size_t batch_size = 1;
  MixtureSpec spec;
  std::optional<CurriculumState> curriculum;
  std::uint64_t master_seed = 0;
  int workers = 1;
};

// One utterance; the item seed is DeriveSeed(master, epoch, index).
BatchItem GenerateItem(const BatchRequest& request, const SourceBank& bank,
                       std::size_t index);

// Items are produced concurrently by `workers` threads; the result does not
// depend on the worker count.
std::vector<BatchItem> GenerateBatch(const BatchRequest& request,
                                     const SourceBank& bank);

}  // namespace framrir

#endif  // FRAMRIR_MIXTURE_HPP_
