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


#ifndef FRAMRIR_CONFIG_HPP_
#define FRAMRIR_CONFIG_HPP_

#include <filesystem>
#include <cstdint>
#include <optional>
#include <string>

#include "framrir/mixture.hpp"
#include "framrir/types.hpp"

namespace framrir {

enum class OutputFormat { kWav, kContainer };

// JSON configuration shared by the command-line tools. Every section is
// optional; absent fields keep their defaults. Layout:
//
//   {
//     "sim":        {"t60", "sample_rate", "num_images", "alpha", "beta",
//                    "perturb_a", "perturb_b", "tau", "sound_speed", "seed"},
//     "scene":      {"room": [x, y, z], "mic_spacings": [...] | "mics": [[x, y, z], ...],
//                    "array_position": [x, y, z],
//                    "sources": [{"distance", "azimuth_deg", "elevation_deg"}]},
//     "mixture":    {"num_speakers", "sir_db": [lo, hi], "snr_db", "min_overlap_ratio",
//                    "speaker_distance", "noise_distance", "t60", "room_x", "room_y",
//                    "room_z", "azimuth_deg", "elevation_deg", "mic_spacings",
//                    "sample_rate", "num_images", "sir_region": "full" | "overlap",
//                    "reference_mic", "early_targets"},
//     "curriculum": {"epoch", "lower_ms", "upper_ms", "max_ms", "step_ms"},
//                   (upper_ms is the epoch-0 upper bound)
//     "sources":    {"speech_dir", "noise_dir"},
//     "output":     {"dir", "format": "wav" | "frir"},
//     "early": bool, "threads": int, "workers": int
//   }
//
// Unknown keys are rejected.
struct Config {
  SimParams sim;
  Scene scene;
  MixtureSpec mixture;
  // Schedule at epoch 0; `epoch` selects the point on it.
  std::optional<CurriculumState> curriculum;
  int epoch = 0;
  std::optional<std::filesystem::path> speech_dir;
  std::optional<std::filesystem::path> noise_dir;
  std::filesystem::path output_dir = ".";
  OutputFormat output_format = OutputFormat::kWav;
  bool early = false;
  int threads = 1;
  int workers = 1;
  // Set when the file gives sim.seed; seeds simulate and, as the master
  // seed, mix.
  std::optional<std::uint64_t> seed;

  // Defaults: 4-8-4 cm array, one source 1.5 m away at broadside.
  Config();
  // Throws Error(kInvalidConfiguration) on inconsistent values.
  void Validate() const;
  // Curriculum state at `epoch`, if a schedule is configured.
  std::optional<CurriculumState> CurrentCurriculum() const;
};

// Throws Error(kInvalidConfiguration) on malformed JSON, unknown keys,
// wrong types or out-of-range values.
Config ParseConfig(const std::string& json_text);
Config LoadConfig(const std::filesystem::path& path);

}  // namespace framrir

#endif  // FRAMRIR_CONFIG_HPP_
