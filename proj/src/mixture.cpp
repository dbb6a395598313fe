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


#include "framrir/mixture.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "framrir/convolve.hpp"
#include "framrir/fram.hpp"
#include "framrir/geometry.hpp"
#include "framrir/simd.hpp"
#include "framrir/wav.hpp"

namespace framrir {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

void CheckRange(const Range& r, const char* name, double floor, bool strict) {
  const bool ok = std::isfinite(r.min) && std::isfinite(r.max) && r.min <= r.max &&
                  (strict ? r.min > floor : r.min >= floor);
  if (!ok) ThrowInvalidArgument(std::string("invalid range for ") + name);
}

double Draw(CounterRng& rng, const Range& r) { return rng.Uniform(r.min, r.max); }

// Mean square of x[begin, end) scaled to the full frame.
double Power(std::span<const float> x, std::size_t frame_length) {
  if (frame_length == 0) return 0.0;
  return simd::SumSquares(x) / static_cast<double>(frame_length);
}

double ScaleForRatio(double reference_power, double power, double ratio_db) {
  if (!(reference_power > 0.0) || !(power > 0.0)) return 1.0;
  return std::sqrt(reference_power / (power * std::pow(10.0, ratio_db / 10.0)));
}

// Places `src` (per channel) at `offset` inside an n-sample frame.
std::vector<std::vector<float>> Place(const std::vector<std::vector<float>>& src,
                                      std::size_t offset, std::size_t n) {
  std::vector<std::vector<float>> out(src.size(), std::vector<float>(n, 0.0f));
  for (std::size_t c = 0; c < src.size(); ++c) {
    const std::size_t len = std::min(src[c].size(), n - std::min(n, offset));
    std::copy_n(src[c].begin(), len, out[c].begin() + static_cast<std::ptrdiff_t>(offset));
  }
  return out;
}

void Scale(std::vector<std::vector<float>>& x, double gain) {
  for (auto& ch : x) {
    for (float& v : ch) v = static_cast<float>(v * gain);
  }
}

}  // namespace

void MixtureSpec::Validate() const {
  if (num_speakers < 1) ThrowInvalidArgument("num_speakers must be >= 1");
  CheckRange(sir_db, "sir_db", -1e9, false);
  CheckRange(snr_db, "snr_db", -1e9, false);
  CheckRange(speaker_distance, "speaker_distance", 0.0, true);
  CheckRange(noise_distance, "noise_distance", 0.0, true);
  CheckRange(t60, "t60", 0.0, true);
  CheckRange(room_x, "room_x", 0.0, true);
  CheckRange(room_y, "room_y", 0.0, true);
  CheckRange(room_z, "room_z", 0.0, true);
  CheckRange(azimuth_deg, "azimuth_deg", -1e9, false);
  CheckRange(elevation_deg, "elevation_deg", -90.0, false);
  if (elevation_deg.max > 90.0) ThrowInvalidArgument("elevation must lie in [-90, 90] degrees");
  if (!(min_overlap_ratio >= 0.0 && min_overlap_ratio <= 1.0)) {
    ThrowInvalidArgument("min_overlap_ratio must lie in [0, 1]");
  }
  for (double s : mic_spacings) {
    if (!(s > 0.0)) ThrowInvalidArgument("microphone spacings must be > 0");
  }
  if (!(sample_rate > 0.0)) ThrowInvalidArgument("sample_rate must be > 0");
  if (num_images < 0) ThrowInvalidArgument("num_images must be >= 0");
  if (reference_mic > mic_spacings.size()) ThrowInvalidArgument("reference_mic out of range");
}

CurriculumState CurriculumStep(const CurriculumState& state) {
  CurriculumState next = state;
  next.epoch = state.epoch + 1;
  next.upper_ms = std::min(state.upper_ms + state.step_ms, state.max_ms);
  return next;
}

CurriculumState CurriculumAt(int epoch, const CurriculumState& initial) {
  CurriculumState s = initial;
  for (int e = initial.epoch; e < epoch; ++e) s = CurriculumStep(s);
  return s;
}

Range CurriculumT60(const CurriculumState& state) {
  if (!(state.lower_ms > 0.0 && state.lower_ms <= state.upper_ms &&
        state.upper_ms <= state.max_ms && state.step_ms >= 0.0)) {
    ThrowInvalidArgument("invalid curriculum state");
  }
  return {state.lower_ms * 1e-3, state.upper_ms * 1e-3};
}

SceneDraw SampleScene(const MixtureSpec& spec, CounterRng& rng,
                      const std::optional<CurriculumState>& curriculum) {
  spec.Validate();
  const Range t60_range = curriculum ? CurriculumT60(*curriculum) : spec.t60;

  SceneDraw draw;
  Scene& scene = draw.scene;
  scene.room_dims = {Draw(rng, spec.room_x), Draw(rng, spec.room_y), Draw(rng, spec.room_z)};
  scene.array_position = 0.5 * scene.room_dims;
  scene.mic_positions = LinearArray(spec.mic_spacings);
  draw.params.t60 = Draw(rng, t60_range);
  for (int k = 0; k <= spec.num_speakers; ++k) {
    const Range& distance = k < spec.num_speakers ? spec.speaker_distance : spec.noise_distance;
    SourcePlacement p;
    p.distance = Draw(rng, distance);
    p.azimuth = Draw(rng, spec.azimuth_deg) * kDegToRad;
    p.elevation = Draw(rng, spec.elevation_deg) * kDegToRad;
    scene.sources.push_back(p);
  }
  for (int k = 1; k < spec.num_speakers; ++k) draw.sir_db.push_back(Draw(rng, spec.sir_db));
  draw.snr_db = Draw(rng, spec.snr_db);

  draw.params.sample_rate = spec.sample_rate;
  draw.params.num_images = spec.num_images;
  draw.params.seed = rng();
  return draw;
}

double OverlapRatio(std::int64_t start_a, std::size_t len_a,
                    std::int64_t start_b, std::size_t len_b) {
  const std::int64_t end_a = start_a + static_cast<std::int64_t>(len_a);
  const std::int64_t end_b = start_b + static_cast<std::int64_t>(len_b);
  const std::int64_t overlap = std::max<std::int64_t>(
      0, std::min(end_a, end_b) - std::max(start_a, start_b));
  const std::int64_t span = std::max(end_a, end_b) - std::min(start_a, start_b);
  return span > 0 ? static_cast<double>(overlap) / static_cast<double>(span) : 0.0;
}

std::int64_t MaxOverlapOffset(std::size_t len_a, std::size_t len_b,
                              double min_ratio) {
  if (OverlapRatio(0, len_a, 0, len_b) < min_ratio) return -1;
  // The ratio is non-increasing in the offset.
  std::int64_t lo = 0;
  std::int64_t hi = static_cast<std::int64_t>(len_a);
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo + 1) / 2;
    if (OverlapRatio(0, len_a, mid, len_b) >= min_ratio) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

Mixture SpatializeAndMix(const MixRequest& request, const MixtureSpec& spec,
                         CounterRng& rng) {
  const std::size_t num_speakers = request.speakers.size();
  if (num_speakers == 0) ThrowInvalidArgument("at least one speaker is required");
  if (request.rirs.size() != num_speakers + 1) {
    ThrowInvalidArgument("need one filter per speaker plus one for the noise");
  }
  if (!request.early_rirs.empty() && request.early_rirs.size() != num_speakers) {
    ThrowInvalidArgument("need one early filter per speaker");
  }
  if (request.sir_db.size() != num_speakers - 1) {
    ThrowInvalidArgument("need one SIR per interfering speaker");
  }
  const std::size_t channels = request.rirs.front().num_channels();
  for (const auto& rir : request.rirs) {
    if (rir.num_channels() != channels) ThrowInvalidArgument("filters differ in channel count");
  }
  for (const auto& rir : request.early_rirs) {
    if (rir.num_channels() != channels) ThrowInvalidArgument("filters differ in channel count");
  }
  const std::size_t ref = spec.reference_mic;
  if (ref >= channels) ThrowInvalidArgument("reference_mic out of range");
  for (const auto& s : request.speakers) {
    if (s.empty()) ThrowInvalidArgument("speaker signal is empty");
  }

  // Offsets relative to speaker 0, then shifted to start at zero.
  const std::size_t len0 = request.speakers[0].size();
  std::vector<std::int64_t> rel(num_speakers, 0);
  for (std::size_t k = 1; k < num_speakers; ++k) {
    const std::size_t lenk = request.speakers[k].size();
    const std::int64_t after = MaxOverlapOffset(len0, lenk, spec.min_overlap_ratio);
    const std::int64_t before = MaxOverlapOffset(lenk, len0, spec.min_overlap_ratio);
    if (after < 0 || before < 0) {
      ThrowInvalidArgument("speaker signals too different in length for the minimum overlap");
    }
    rel[k] = rng.UniformInt(-before, after);
  }
  const std::int64_t base = *std::min_element(rel.begin(), rel.end());
  Mixture out;
  std::size_t n = 0;
  for (std::size_t k = 0; k < num_speakers; ++k) {
    out.offsets.push_back(rel[k] - base);
    n = std::max(n, static_cast<std::size_t>(out.offsets[k]) + request.speakers[k].size());
  }
  out.num_samples = n;
  for (std::size_t k = 1; k < num_speakers; ++k) {
    out.overlap_ratio.push_back(OverlapRatio(out.offsets[0], len0, out.offsets[k],
                                             request.speakers[k].size()));
  }

  for (std::size_t k = 0; k < num_speakers; ++k) {
    const auto& dry = request.speakers[k];
    const auto offset = static_cast<std::size_t>(out.offsets[k]);
    out.reverberant.push_back(Place(ConvolveChannels(dry, request.rirs[k], dry.size()), offset, n));
    if (!request.early_rirs.empty()) {
      out.early.push_back(Place(ConvolveChannels(dry, request.early_rirs[k], dry.size()), offset, n));
    }
  }

  // Interferer gains against speaker 0 at the reference channel.
  out.gains.assign(num_speakers, 1.0);
  for (std::size_t k = 1; k < num_speakers; ++k) {
    std::size_t begin = 0;
    std::size_t end = n;
    if (spec.sir_region == SirRegion::kOverlap) {
      begin = static_cast<std::size_t>(std::max(out.offsets[0], out.offsets[k]));
      end = static_cast<std::size_t>(std::min<std::int64_t>(
          out.offsets[0] + static_cast<std::int64_t>(len0),
          out.offsets[k] + static_cast<std::int64_t>(request.speakers[k].size())));
    }
    const std::span<const float> target(out.reverberant[0][ref].data() + begin, end - begin);
    const std::span<const float> other(out.reverberant[k][ref].data() + begin, end - begin);
    out.gains[k] = ScaleForRatio(Power(target, n), Power(other, n), request.sir_db[k - 1]);
  }
  for (std::size_t k = 1; k < num_speakers; ++k) {
    Scale(out.reverberant[k], out.gains[k]);
    if (!out.early.empty()) Scale(out.early[k], out.gains[k]);
  }

  out.mixture.assign(channels, std::vector<float>(n, 0.0f));
  for (std::size_t k = 0; k < num_speakers; ++k) {
    for (std::size_t c = 0; c < channels; ++c) {
      simd::ScaledAdd(out.mixture[c], out.reverberant[k][c], 1.0f);
    }
  }

  std::vector<float> noise(n, 0.0f);
  if (!request.noise.empty()) {
    for (std::size_t i = 0; i < n; ++i) noise[i] = request.noise[i % request.noise.size()];
  }
  out.noise = ConvolveChannels(noise, request.rirs.back(), n);
  out.noise_gain = ScaleForRatio(Power(out.mixture[ref], n), Power(out.noise[ref], n),
                                 request.snr_db);
  Scale(out.noise, out.noise_gain);
  for (std::size_t c = 0; c < channels; ++c) {
    simd::ScaledAdd(out.mixture[c], out.noise[c], 1.0f);
  }
  return out;
}

std::vector<float> SyntheticSourceBank::Speech(CounterRng& rng) const {
  const double fs = options_.sample_rate;
  const auto n = static_cast<std::size_t>(std::lround(rng.Uniform(options_.duration_s.min,
                                                                  options_.duration_s.max) * fs));
  const double f0 = rng.Uniform(90.0, 250.0);
  const double syllable_rate = rng.Uniform(3.0, 6.0);
  const double envelope_phase = rng.Uniform(0.0, 2.0 * std::numbers::pi);
  const double vibrato = rng.Uniform(2.0, 6.0);
  std::vector<float> x(n, 0.0f);
  if (options_.silent) return x;

  double phase = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / fs;
    const double env = std::pow(std::max(0.0, std::sin(2.0 * std::numbers::pi * syllable_rate * t +
                                                        envelope_phase)), 2.0);
    const double f = f0 * (1.0 + 0.03 * std::sin(2.0 * std::numbers::pi * vibrato * t));
    phase += 2.0 * std::numbers::pi * f / fs;
    // Harmonics up to 0.45 fs with a 1/h tilt; sin(h p) by recurrence.
    const double s1 = std::sin(phase);
    const double two_cos = 2.0 * std::cos(phase);
    double prev = 0.0, cur = s1, v = 0.0;
    for (int h = 1; h * f < 0.45 * fs; ++h) {
      v += cur / h;
      const double next = two_cos * cur - prev;
      prev = cur;
      cur = next;
    }
    const double breath = rng.Uniform(-1.0, 1.0);
    x[i] = static_cast<float>(0.2 * env * v + 0.005 * breath);
  }
  return x;
}

std::vector<float> SyntheticSourceBank::Noise(CounterRng& rng, std::size_t length) const {
  std::vector<float> x(length, 0.0f);
  if (options_.silent) return x;
  for (float& v : x) v = static_cast<float>(rng.Uniform(-0.5, 0.5));
  return x;
}

namespace {

std::vector<std::filesystem::path> ListWavs(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw Error(ErrorCode::kIo, "not a directory: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == ".wav") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw Error(ErrorCode::kIo, "no WAV files under " + dir.string());
  return files;
}

}  // namespace

WavDirectoryBank::WavDirectoryBank(const std::filesystem::path& speech_dir,
                                   const std::optional<std::filesystem::path>& noise_dir,
                                   double sample_rate)
    : speech_(ListWavs(speech_dir)), sample_rate_(sample_rate) {
  if (noise_dir) noise_ = ListWavs(*noise_dir);
}

std::vector<float> WavDirectoryBank::Load(const std::filesystem::path& path) const {
  WavData wav = ReadWav(path);
  if (wav.sample_rate != static_cast<int>(std::lround(sample_rate_))) {
    throw Error(ErrorCode::kIo, "sample rate mismatch in " + path.string());
  }
  if (wav.channels.empty() || wav.channels.front().empty()) {
    throw Error(ErrorCode::kIo, "empty WAV file " + path.string());
  }
  return std::move(wav.channels.front());
}

std::vector<float> WavDirectoryBank::Speech(CounterRng& rng) const {
  const auto i = rng.UniformInt(0, static_cast<std::int64_t>(speech_.size()) - 1);
  return Load(speech_[static_cast<std::size_t>(i)]);
}

std::vector<float> WavDirectoryBank::Noise(CounterRng& rng, std::size_t length) const {
  std::vector<float> x(length, 0.0f);
  if (noise_.empty()) {
    for (float& v : x) v = static_cast<float>(rng.Uniform(-0.5, 0.5));
    return x;
  }
  const auto i = rng.UniformInt(0, static_cast<std::int64_t>(noise_.size()) - 1);
  const std::vector<float> src = Load(noise_[static_cast<std::size_t>(i)]);
  const auto start = static_cast<std::size_t>(
      rng.UniformInt(0, static_cast<std::int64_t>(src.size()) - 1));
  for (std::size_t k = 0; k < length; ++k) x[k] = src[(start + k) % src.size()];
  return x;
}

BatchItem GenerateItem(const BatchRequest& request, const SourceBank& bank,
                       std::size_t index) {
  const MixtureSpec& spec = request.spec;
  const std::uint64_t epoch = request.curriculum ? static_cast<std::uint64_t>(request.curriculum->epoch) : 0;
  BatchItem item;
  item.seed = DeriveSeed(request.master_seed, epoch, index);
  CounterRng rng(item.seed);
  item.draw = SampleScene(spec, rng, request.curriculum);

  std::vector<std::vector<float>> speakers;
  for (int k = 0; k < spec.num_speakers; ++k) speakers.push_back(bank.Speech(rng));
  if (spec.min_overlap_ratio > 0.0) {
    // Crop so that the overlap constraint is satisfiable at zero offset.
    std::size_t shortest = speakers.front().size();
    for (const auto& s : speakers) shortest = std::min(shortest, s.size());
    const auto longest = static_cast<std::size_t>(
        std::floor(static_cast<double>(shortest) / spec.min_overlap_ratio));
    for (auto& s : speakers) s.resize(std::min(s.size(), longest));
  }
  std::size_t noise_len = 0;
  for (const auto& s : speakers) noise_len += s.size();
  const std::vector<float> noise = bank.Noise(rng, noise_len);

  SimulateOptions options;
  options.early = spec.early_targets;
  const SimulationResult sim = SimulateRir(item.draw.params, item.draw.scene, options);
  item.warnings = sim.warnings;
  std::vector<RirFilter> rirs;
  std::vector<RirFilter> early;
  for (std::size_t k = 0; k < sim.sources.size(); ++k) {
    rirs.push_back(sim.sources[k].full);
    if (spec.early_targets && k + 1 < sim.sources.size()) early.push_back(sim.sources[k].early);
  }

  MixRequest mix;
  mix.speakers = speakers;
  mix.noise = noise;
  mix.rirs = rirs;
  mix.early_rirs = early;
  mix.sir_db = item.draw.sir_db;
  mix.snr_db = item.draw.snr_db;
  item.mixture = SpatializeAndMix(mix, spec, rng);
  return item;
}

std::vector<BatchItem> GenerateBatch(const BatchRequest& request,
                                     const SourceBank& bank) {
  request.spec.Validate();
  std::vector<BatchItem> items(request.batch_size);
  if (request.batch_size == 0) return items;
  const std::size_t workers = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::max(1, request.workers)), 1, request.batch_size);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < request.batch_size; i = next++) {
      try {
        items[i] = GenerateItem(request, bank, i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return items;
}

}  // namespace framrir
