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


#include "framrir/config.hpp"

#include <fstream>
#include <initializer_list>
#include <numbers>
#include <sstream>
#include <string_view>

#include "framrir/geometry.hpp"
#include "json.hpp"

namespace framrir {

namespace {

using nlohmann::json;

constexpr double kDegToRad = std::numbers::pi / 180.0;

[[noreturn]] void Bad(const std::string& what) { ThrowInvalidConfiguration(what); }

const json& Object(const json& j, const std::string& where,
                   std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) Bad(where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (std::string_view a : allowed) known = known || key == a;
    if (!known) Bad("unknown key '" + key + "' in " + where);
  }
  return j;
}

template <typename T>
void Read(const json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    Bad(where + "." + key + " has the wrong type");
  }
}

void ReadVec3(const json& j, const char* key, Vec3& out, const std::string& where) {
  if (!j.contains(key)) return;
  std::vector<double> v;
  Read(j, key, v, where);
  if (v.size() != 3) Bad(where + "." + key + " must have three elements");
  out = {v[0], v[1], v[2]};
}

void ReadRange(const json& j, const char* key, Range& out, const std::string& where) {
  if (!j.contains(key)) return;
  std::vector<double> v;
  Read(j, key, v, where);
  if (v.size() != 2) Bad(where + "." + key + " must be [min, max]");
  out = {v[0], v[1]};
}

void ParseSim(const json& j, SimParams& p) {
  Object(j, "sim", {"t60", "sample_rate", "num_images", "alpha", "beta", "perturb_a",
                    "perturb_b", "tau", "sound_speed", "seed"});
  Read(j, "t60", p.t60, "sim");
  Read(j, "sample_rate", p.sample_rate, "sim");
  Read(j, "num_images", p.num_images, "sim");
  Read(j, "alpha", p.alpha, "sim");
  Read(j, "beta", p.beta, "sim");
  Read(j, "perturb_a", p.perturb_a, "sim");
  Read(j, "perturb_b", p.perturb_b, "sim");
  Read(j, "tau", p.tau, "sim");
  Read(j, "sound_speed", p.sound_speed, "sim");
  Read(j, "seed", p.seed, "sim");
}

void ParseScene(const json& j, Scene& s) {
  Object(j, "scene", {"room", "mic_spacings", "mics", "array_position", "sources"});
  ReadVec3(j, "room", s.room_dims, "scene");
  if (j.contains("mic_spacings") && j.contains("mics")) {
    Bad("scene.mic_spacings and scene.mics are mutually exclusive");
  }
  if (j.contains("mic_spacings")) {
    std::vector<double> spacings;
    Read(j, "mic_spacings", spacings, "scene");
    s.mic_positions = LinearArray(spacings);
  }
  if (j.contains("mics")) {
    std::vector<std::vector<double>> mics;
    Read(j, "mics", mics, "scene");
    s.mic_positions.clear();
    for (const auto& m : mics) {
      if (m.size() != 3) Bad("scene.mics entries must have three elements");
      s.mic_positions.push_back({m[0], m[1], m[2]});
    }
  }
  if (j.contains("array_position")) {
    Vec3 p;
    ReadVec3(j, "array_position", p, "scene");
    s.array_position = p;
  }
  if (j.contains("sources")) {
    const json& list = j.at("sources");
    if (!list.is_array()) Bad("scene.sources must be an array");
    s.sources.clear();
    for (const json& item : list) {
      Object(item, "scene.sources[]", {"distance", "azimuth_deg", "elevation_deg"});
      SourcePlacement p;
      double az = 0.0, el = 0.0;
      Read(item, "distance", p.distance, "scene.sources[]");
      Read(item, "azimuth_deg", az, "scene.sources[]");
      Read(item, "elevation_deg", el, "scene.sources[]");
      p.azimuth = az * kDegToRad;
      p.elevation = el * kDegToRad;
      s.sources.push_back(p);
    }
  }
}

void ParseMixture(const json& j, MixtureSpec& m) {
  const std::string w = "mixture";
  Object(j, w, {"num_speakers", "sir_db", "snr_db", "min_overlap_ratio", "speaker_distance",
                "noise_distance", "t60", "room_x", "room_y", "room_z", "azimuth_deg",
                "elevation_deg", "mic_spacings", "sample_rate", "num_images", "sir_region",
                "reference_mic", "early_targets"});
  Read(j, "num_speakers", m.num_speakers, w);
  ReadRange(j, "sir_db", m.sir_db, w);
  ReadRange(j, "snr_db", m.snr_db, w);
  Read(j, "min_overlap_ratio", m.min_overlap_ratio, w);
  ReadRange(j, "speaker_distance", m.speaker_distance, w);
  ReadRange(j, "noise_distance", m.noise_distance, w);
  ReadRange(j, "t60", m.t60, w);
  ReadRange(j, "room_x", m.room_x, w);
  ReadRange(j, "room_y", m.room_y, w);
  ReadRange(j, "room_z", m.room_z, w);
  ReadRange(j, "azimuth_deg", m.azimuth_deg, w);
  ReadRange(j, "elevation_deg", m.elevation_deg, w);
  Read(j, "mic_spacings", m.mic_spacings, w);
  Read(j, "sample_rate", m.sample_rate, w);
  Read(j, "num_images", m.num_images, w);
  if (j.contains("sir_region")) {
    std::string region;
    Read(j, "sir_region", region, w);
    if (region == "full") {
      m.sir_region = SirRegion::kFullUtterance;
    } else if (region == "overlap") {
      m.sir_region = SirRegion::kOverlap;
    } else {
      Bad("mixture.sir_region must be \"full\" or \"overlap\"");
    }
  }
  Read(j, "reference_mic", m.reference_mic, w);
  Read(j, "early_targets", m.early_targets, w);
}

void ParseCurriculum(const json& j, CurriculumState& c) {
  Object(j, "curriculum", {"epoch", "lower_ms", "upper_ms", "max_ms", "step_ms"});
  Read(j, "epoch", c.epoch, "curriculum");
  Read(j, "lower_ms", c.lower_ms, "curriculum");
  Read(j, "upper_ms", c.upper_ms, "curriculum");
  Read(j, "max_ms", c.max_ms, "curriculum");
  Read(j, "step_ms", c.step_ms, "curriculum");
}

}  // namespace

Config::Config() {
  scene.mic_positions = EvalArray();
  scene.sources.push_back({1.5, std::numbers::pi / 2.0, 0.0});
}

void Config::Validate() const {
  try {
    sim.Validate();
    ValidateScene(scene);
    mixture.Validate();
    if (epoch < 0) Bad("curriculum.epoch must be >= 0");
    if (curriculum) CurriculumT60(*CurrentCurriculum());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInvalidConfiguration) throw;
    Bad(e.what());
  }
  if (threads < 1) Bad("threads must be >= 1");
  if (workers < 1) Bad("workers must be >= 1");
}

std::optional<CurriculumState> Config::CurrentCurriculum() const {
  if (!curriculum) return std::nullopt;
  return CurriculumAt(epoch, *curriculum);
}

Config ParseConfig(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    Bad(std::string("malformed JSON: ") + e.what());
  }
  Object(root, "config", {"sim", "scene", "mixture", "curriculum", "sources", "output",
                          "early", "threads", "workers"});
  Config c;
  if (root.contains("sim")) {
    ParseSim(root.at("sim"), c.sim);
    if (root.at("sim").contains("seed")) c.seed = c.sim.seed;
  }
  if (root.contains("scene")) ParseScene(root.at("scene"), c.scene);
  if (root.contains("mixture")) ParseMixture(root.at("mixture"), c.mixture);
  if (root.contains("curriculum")) {
    CurriculumState state;
    ParseCurriculum(root.at("curriculum"), state);
    c.epoch = state.epoch;
    state.epoch = 0;
    c.curriculum = state;
  }
  if (root.contains("sources")) {
    const json& s = Object(root.at("sources"), "sources", {"speech_dir", "noise_dir"});
    std::string dir;
    if (s.contains("speech_dir")) {
      Read(s, "speech_dir", dir, "sources");
      c.speech_dir = dir;
    }
    if (s.contains("noise_dir")) {
      Read(s, "noise_dir", dir, "sources");
      c.noise_dir = dir;
    }
  }
  if (root.contains("output")) {
    const json& o = Object(root.at("output"), "output", {"dir", "format"});
    std::string dir = c.output_dir.string();
    Read(o, "dir", dir, "output");
    c.output_dir = dir;
    std::string format = "wav";
    Read(o, "format", format, "output");
    if (format == "wav") {
      c.output_format = OutputFormat::kWav;
    } else if (format == "frir") {
      c.output_format = OutputFormat::kContainer;
    } else {
      Bad("output.format must be \"wav\" or \"frir\"");
    }
  }
  Read(root, "early", c.early, "config");
  Read(root, "threads", c.threads, "config");
  Read(root, "workers", c.workers, "config");
  c.Validate();
  return c;
}

Config LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return ParseConfig(text.str());
}

}  // namespace framrir
