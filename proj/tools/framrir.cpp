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


// framrir: simulate room impulse responses, generate reverberant mixtures,
// compute spatial features and run speed benchmarks.
//
// Exit codes: 0 success, 2 usage error, 1 runtime error.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "framrir/beamform.hpp"
#include "framrir/bench.hpp"
#include "framrir/config.hpp"
#include "framrir/container.hpp"
#include "framrir/features.hpp"
#include "framrir/fram.hpp"
#include "framrir/geometry.hpp"
#include "framrir/mixture.hpp"
#include "framrir/stft.hpp"
#include "framrir/wav.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using framrir::Config;
using nlohmann::json;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

std::uint64_t EntropySeed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::vector<double> ParseList(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw CLI::ValidationError("list", "not a number: '" + item + "'");
    }
    if (used != item.size()) throw CLI::ValidationError("list", "not a number: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

void EnsureDirectory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw framrir::Error(framrir::ErrorCode::kIo, "cannot create directory " + dir.string());
  }
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string config;
  std::optional<double> t60;
  std::optional<int> mics;
  std::string spacing;
  std::optional<std::uint64_t> seed;
  bool early = false;
  std::string out;
  std::string format = "wav";
  std::string room;
  std::vector<std::string> sources;
  std::optional<double> fs;
  std::optional<int> images;
  std::optional<int> threads;
};

int RunSimulate(const SimulateArgs& a) {
  Config cfg = a.config.empty() ? Config{} : framrir::LoadConfig(a.config);
  if (a.t60) cfg.sim.t60 = *a.t60;
  if (a.fs) cfg.sim.sample_rate = *a.fs;
  if (a.images) cfg.sim.num_images = *a.images;
  if (a.threads) cfg.threads = *a.threads;
  cfg.early = cfg.early || a.early;
  if (!a.spacing.empty()) {
    const auto spacing = ParseList(a.spacing);
    if (a.mics && static_cast<std::size_t>(*a.mics) != spacing.size() + 1) {
      throw CLI::ValidationError("--mics", "must equal the number of spacings plus one");
    }
    cfg.scene.mic_positions = framrir::LinearArray(spacing);
  } else if (a.mics && static_cast<std::size_t>(*a.mics) != cfg.scene.mic_positions.size()) {
    if (*a.mics < 1) throw CLI::ValidationError("--mics", "must be >= 1");
    cfg.scene.mic_positions = framrir::LinearArray(std::vector<double>(*a.mics - 1, 0.04));
  }
  if (!a.room.empty()) {
    const auto r = ParseList(a.room);
    if (r.size() != 3) throw CLI::ValidationError("--room", "expects x,y,z");
    cfg.scene.room_dims = {r[0], r[1], r[2]};
  }
  if (!a.sources.empty()) {
    cfg.scene.sources.clear();
    for (const auto& s : a.sources) {
      const auto v = ParseList(s);
      if (v.size() < 2 || v.size() > 3) {
        throw CLI::ValidationError("--source", "expects distance,azimuth_deg[,elevation_deg]");
      }
      cfg.scene.sources.push_back({v[0], v[1] * kDeg, v.size() == 3 ? v[2] * kDeg : 0.0});
    }
  }
  if (a.format == "frir") cfg.output_format = framrir::OutputFormat::kContainer;
  if (a.format == "wav") cfg.output_format = framrir::OutputFormat::kWav;
  cfg.sim.seed = a.seed ? *a.seed : cfg.seed ? *cfg.seed : EntropySeed();
  cfg.Validate();

  framrir::SimulateOptions options;
  options.early = cfg.early;
  options.threads = cfg.threads;
  const framrir::SimulationResult result = framrir::SimulateRir(cfg.sim, cfg.scene, options);
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';

  const fs::path out = a.out;
  std::vector<framrir::RirFilter> records;
  if (cfg.output_format == framrir::OutputFormat::kWav) EnsureDirectory(out);
  for (std::size_t k = 0; k < result.sources.size(); ++k) {
    const framrir::SourceRir& src = result.sources[k];
    for (const framrir::RirFilter* f : {&src.full, &src.early}) {
      if (f->channels.empty()) continue;
      const bool early = f->kind == framrir::RirKind::kEarly;
      std::string file;
      if (cfg.output_format == framrir::OutputFormat::kWav) {
        const fs::path path = out / ("rir_src" + std::to_string(k) + (early ? "_early" : "_full") + ".wav");
        framrir::WriteWav(path, f->channels, f->sample_rate);
        file = path.string();
      } else {
        records.push_back(*f);
        file = out.string();
      }
      json line = {{"source", k},
                   {"kind", early ? "early" : "full"},
                   {"azimuth_deg", src.azimuth / kDeg},
                   {"elevation_deg", src.elevation / kDeg},
                   {"distance", src.direct_distance},
                   {"t60", cfg.sim.t60},
                   {"seed", cfg.sim.seed},
                   {"sample_rate", f->sample_rate},
                   {"channels", f->num_channels()},
                   {"samples", f->num_samples()},
                   {"direct_path_sample", f->direct_path_sample},
                   {"file", file}};
      std::cout << line.dump() << '\n';
    }
  }
  if (cfg.output_format == framrir::OutputFormat::kContainer) {
    if (out.has_parent_path()) EnsureDirectory(out.parent_path());
    framrir::WriteRirContainer(out, records);
  }
  return 0;
}

// ---------------------------------------------------------------- mix

struct MixArgs {
  std::string config;
  std::size_t n = 1;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::optional<int> epoch;
  bool synthetic = false;
};

json SpeakerJson(const framrir::SceneDraw& d, std::size_t k) {
  const auto& p = d.scene.sources[k];
  return {{"distance", p.distance}, {"azimuth_deg", p.azimuth / kDeg},
          {"elevation_deg", p.elevation / kDeg}};
}

int RunMix(const MixArgs& a) {
  Config cfg = a.config.empty() ? Config{} : framrir::LoadConfig(a.config);
  if (a.workers) cfg.workers = *a.workers;
  if (a.epoch) {
    if (!cfg.curriculum) cfg.curriculum = framrir::CurriculumState{};
    cfg.epoch = *a.epoch;
  }
  cfg.Validate();

  std::unique_ptr<framrir::SourceBank> bank;
  if (cfg.speech_dir && !a.synthetic) {
    bank = std::make_unique<framrir::WavDirectoryBank>(*cfg.speech_dir, cfg.noise_dir,
                                                       cfg.mixture.sample_rate);
  } else {
    framrir::SyntheticSourceBank::Options o;
    o.sample_rate = cfg.mixture.sample_rate;
    bank = std::make_unique<framrir::SyntheticSourceBank>(o);
  }

  framrir::BatchRequest request;
  request.batch_size = a.n;
  request.spec = cfg.mixture;
  request.curriculum = cfg.CurrentCurriculum();
  request.master_seed = a.seed ? *a.seed : cfg.seed ? *cfg.seed : EntropySeed();
  request.workers = cfg.workers;
  const auto items = framrir::GenerateBatch(request, *bank);

  const fs::path out = a.out;
  EnsureDirectory(out);
  const int fs_out = static_cast<int>(std::lround(cfg.mixture.sample_rate));
  for (std::size_t i = 0; i < items.size(); ++i) {
    const framrir::BatchItem& item = items[i];
    std::ostringstream stem;
    stem << "mix_" << std::setw(5) << std::setfill('0') << i;
    framrir::WriteWav(out / (stem.str() + ".wav"), item.mixture.mixture, fs_out);
    json speakers = json::array();
    for (std::size_t k = 0; k < item.mixture.reverberant.size(); ++k) {
      const std::string s = stem.str() + "_s" + std::to_string(k);
      framrir::WriteWav(out / (s + "_reverb.wav"), item.mixture.reverberant[k], fs_out);
      if (k < item.mixture.early.size()) {
        framrir::WriteWav(out / (s + "_early.wav"), item.mixture.early[k], fs_out);
      }
      json sp = SpeakerJson(item.draw, k);
      sp["offset"] = item.mixture.offsets[k];
      sp["gain"] = item.mixture.gains[k];
      speakers.push_back(sp);
    }
    const auto& room = item.draw.scene.room_dims;
    json meta = {{"master_seed", request.master_seed},
                 {"item_seed", item.seed},
                 {"rir_seed", item.draw.params.seed},
                 {"room", {room.x, room.y, room.z}},
                 {"t60", item.draw.params.t60},
                 {"snr_db", item.draw.snr_db},
                 {"sir_db", item.draw.sir_db},
                 {"overlap_ratio", item.mixture.overlap_ratio},
                 {"speakers", speakers},
                 {"noise", SpeakerJson(item.draw, item.draw.scene.sources.size() - 1)},
                 {"noise_gain", item.mixture.noise_gain},
                 {"samples", item.mixture.num_samples},
                 {"sample_rate", fs_out},
                 {"warnings", item.warnings}};
    if (request.curriculum) meta["epoch"] = request.curriculum->epoch;
    std::ofstream sidecar(out / (stem.str() + ".json"));
    sidecar << meta.dump(2) << '\n';
    if (!sidecar) throw framrir::Error(framrir::ErrorCode::kIo, "cannot write metadata");
  }
  std::cout << json{{"items", items.size()}, {"master_seed", request.master_seed},
                    {"out", out.string()}}.dump()
            << '\n';
  return 0;
}

// ---------------------------------------------------------------- features

struct FeaturesArgs {
  std::string input;
  bool lps = false;
  bool ipd = false;
  bool af = false;
  bool dpr = false;
  bool mvdr = false;
  double doa = 90.0;
  std::string pair = "0,1";
  int beam = 0;
  int beams = 36;
  std::string spacing = "0.04,0.08,0.04";
  std::string target;
  std::string interference;
  double scan_step = 1.0;
  std::string out;
  std::string raw;
};

void WriteGrid(const framrir::Grid& g, std::ostream& os) {
  os << std::setprecision(9);
  for (std::size_t r = 0; r < g.rows; ++r) {
    for (std::size_t c = 0; c < g.cols; ++c) os << (c ? "," : "") << g.at(r, c);
    os << '\n';
  }
}

void WriteRaw(const framrir::Grid& g, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  std::vector<float> data(g.data.begin(), g.data.end());
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size() * sizeof(float)));
  if (!out) throw framrir::Error(framrir::ErrorCode::kIo, "cannot write " + path.string());
}

framrir::Spectrogram LoadSpectrogram(const std::string& path, const framrir::StftSpec& base,
                                     framrir::StftSpec& spec) {
  const framrir::WavData wav = framrir::ReadWav(path);
  spec = base;
  spec.sample_rate = wav.sample_rate;
  return framrir::Stft(wav.channels, spec);
}

int RunFeatures(const FeaturesArgs& a) {
  const int selected = a.lps + a.ipd + a.af + a.dpr + a.mvdr;
  if (selected != 1) {
    throw CLI::ValidationError("features", "select exactly one of --lps --ipd --af --dpr --mvdr");
  }
  framrir::StftSpec spec;
  const framrir::Spectrogram y = LoadSpectrogram(a.input, framrir::StftSpec{}, spec);
  framrir::SteeringGeometry geometry;
  geometry.mics = framrir::LinearArray(ParseList(a.spacing));

  auto check_geometry = [&] {
    if (geometry.mics.size() != y.num_channels) {
      throw framrir::Error(framrir::ErrorCode::kInvalidArgument,
                           "--spacing describes " + std::to_string(geometry.mics.size()) +
                               " microphones but the input has " +
                               std::to_string(y.num_channels) + " channels");
    }
  };

  framrir::Grid grid;
  if (a.lps) {
    grid = framrir::LogPowerSpectrum(y, 0);
  } else if (a.ipd) {
    const auto p = ParseList(a.pair);
    if (p.size() != 2 || p[0] < 0 || p[1] < 0) throw CLI::ValidationError("--pair", "expects m1,m2");
    grid = framrir::CosIpd(y, {static_cast<std::size_t>(p[0]), static_cast<std::size_t>(p[1])});
  } else if (a.af) {
    check_geometry();
    const auto pairs = framrir::ReferencePairs(y.num_channels);
    grid = framrir::AngleFeature(y, a.doa * kDeg, geometry, spec, pairs);
  } else if (a.dpr) {
    check_geometry();
    const auto beams = framrir::SuperdirectiveBeamGrid(geometry, spec, static_cast<std::size_t>(a.beams));
    grid = framrir::DirectionalPowerRatio(y, beams, static_cast<std::size_t>(a.beam));
  } else {
    check_geometry();
    if (a.target.empty() || a.interference.empty()) {
      throw CLI::ValidationError("--mvdr", "needs --target and --interference images");
    }
    framrir::StftSpec unused;
    const auto s = LoadSpectrogram(a.target, spec, unused);
    const auto n = LoadSpectrogram(a.interference, spec, unused);
    const framrir::Grid target_mask = framrir::IdealRatioMask(s, n);
    const framrir::Grid noise_mask = framrir::IdealRatioMask(n, s);
    framrir::MvdrOptions options;
    options.target_azimuth = a.doa * kDeg;
    const auto w = framrir::MaskBasedMvdr(y, target_mask, noise_mask, geometry, spec, options);
    std::vector<double> scan;
    for (double deg = 0.0; deg < 360.0 - 1e-9; deg += a.scan_step) scan.push_back(deg * kDeg);
    grid = framrir::Beampattern(w, geometry, spec, scan);
  }

  if (a.out.empty()) {
    WriteGrid(grid, std::cout);
  } else {
    std::ofstream os(a.out);
    if (!os) throw framrir::Error(framrir::ErrorCode::kIo, "cannot write " + a.out);
    WriteGrid(grid, os);
  }
  if (!a.raw.empty()) WriteRaw(grid, a.raw);
  std::cerr << "rows=" << grid.rows << " cols=" << grid.cols << '\n';
  return 0;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
  std::string threads = "1";
  std::string method = "fram";
  std::size_t rooms = 10;
  std::size_t sources = 3;
  int repetitions = 5;
  int warmup = 1;
  std::uint64_t seed = 0;
  std::string batch_workers;
  std::size_t batches = 16;
  bool zero_work = false;
  std::string out;
};

int RunBench(const BenchArgs& a) {
  if (a.method != "fram" && a.method != "ism" && a.method != "both") {
    throw CLI::ValidationError("--method", "expects fram, ism or both");
  }
  std::vector<framrir::BenchReport> reports;
  for (double t : ParseList(a.threads)) {
    if (t < 1 || t != std::floor(t)) throw CLI::ValidationError("--threads", "expects positive integers");
    for (const auto method : {framrir::BenchMethod::kFram, framrir::BenchMethod::kIsm}) {
      const bool want = a.method == "both" ||
                        (a.method == "fram") == (method == framrir::BenchMethod::kFram);
      if (!want) continue;
      framrir::RirBenchOptions o;
      o.method = method;
      o.rooms = a.rooms;
      o.sources_per_room = a.sources;
      o.threads = static_cast<int>(t);
      o.repetitions = a.repetitions;
      o.warmup = a.warmup;
      o.seed = a.seed;
      reports.push_back(framrir::BenchRir(o));
    }
  }
  if (!a.batch_workers.empty()) {
    for (double w : ParseList(a.batch_workers)) {
      if (w < 1 || w != std::floor(w)) throw CLI::ValidationError("--batch-workers", "expects positive integers");
      framrir::BatchBenchOptions o;
      o.workers = static_cast<int>(w);
      o.num_batches = a.batches;
      o.repetitions = a.repetitions;
      o.warmup = a.warmup;
      o.seed = a.seed;
      o.zero_work = a.zero_work;
      reports.push_back(framrir::BenchBatch(o));
    }
  }
  const std::string text = framrir::BenchReportsToJson(reports);
  if (a.out.empty()) {
    std::cout << text << '\n';
  } else {
    std::ofstream os(a.out);
    os << text << '\n';
    if (!os) throw framrir::Error(framrir::ErrorCode::kIo, "cannot write " + a.out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fast stochastic room impulse response simulation"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Simulate multi-channel room impulse responses");
  simulate->add_option("--config", sim.config, "JSON configuration file")->check(CLI::ExistingFile);
  simulate->add_option("--t60", sim.t60, "Reverberation time in seconds");
  simulate->add_option("--mics", sim.mics, "Number of microphones");
  simulate->add_option("--spacing", sim.spacing, "Comma-separated linear-array spacings in meters");
  simulate->add_option("--seed", sim.seed, "Random seed (default: OS entropy)");
  simulate->add_flag("--early", sim.early, "Also write the early-reflection filters");
  simulate->add_option("--out", sim.out, "Output directory (wav) or file (frir)")->required();
  simulate->add_option("--format", sim.format, "Output format")->check(CLI::IsMember({"wav", "frir"}));
  simulate->add_option("--room", sim.room, "Room size x,y,z in meters");
  simulate->add_option("--source", sim.sources, "distance,azimuth_deg[,elevation_deg]; repeatable");
  simulate->add_option("--fs", sim.fs, "Sample rate in Hz");
  simulate->add_option("--images", sim.images, "Number of virtual sources");
  simulate->add_option("--threads", sim.threads, "Worker threads");

  MixArgs mix;
  auto* mixc = app.add_subcommand("mix", "Generate reverberant multi-speaker mixtures");
  mixc->add_option("--config", mix.config, "JSON configuration file")->check(CLI::ExistingFile);
  mixc->add_option("--n", mix.n, "Number of mixtures")->required();
  mixc->add_option("--out", mix.out, "Output directory")->required();
  mixc->add_option("--seed", mix.seed, "Master seed (default: OS entropy)");
  mixc->add_option("--workers", mix.workers, "Concurrent producers");
  mixc->add_option("--epoch", mix.epoch, "Curriculum epoch for the T60 schedule");
  mixc->add_flag("--synthetic", mix.synthetic, "Use synthetic sources even if a speech directory is configured");

  FeaturesArgs feat;
  auto* features = app.add_subcommand("features", "Spatial features of a multi-channel WAV file as CSV");
  features->add_option("input", feat.input, "Multi-channel WAV file")->required()->check(CLI::ExistingFile);
  features->add_flag("--lps", feat.lps, "Log power spectrum of channel 0");
  features->add_flag("--ipd", feat.ipd, "Cosine inter-channel phase difference");
  features->add_flag("--af", feat.af, "Angle feature for --doa");
  features->add_flag("--dpr", feat.dpr, "Directional power ratio for --beam");
  features->add_flag("--mvdr", feat.mvdr, "Oracle-mask MVDR beampattern (rows: DOA, cols: bin)");
  features->add_option("--doa", feat.doa, "Target azimuth in degrees");
  features->add_option("--pair", feat.pair, "Microphone pair m1,m2 for --ipd");
  features->add_option("--beam", feat.beam, "Target beam index for --dpr");
  features->add_option("--beams", feat.beams, "Beam count for --dpr");
  features->add_option("--spacing", feat.spacing, "Linear-array spacings in meters");
  features->add_option("--target", feat.target, "Target source image (WAV) for --mvdr");
  features->add_option("--interference", feat.interference, "Interference image (WAV) for --mvdr");
  features->add_option("--scan-step", feat.scan_step, "Beampattern DOA step in degrees")
      ->check(CLI::PositiveNumber);
  features->add_option("--out", feat.out, "CSV output path (default: stdout)");
  features->add_option("--raw", feat.raw, "Also write the grid as raw float32");

  BenchArgs bench;
  auto* benchc = app.add_subcommand("bench", "Simulation speed benchmarks as JSON");
  benchc->add_option("--threads", bench.threads, "Comma-separated thread counts");
  benchc->add_option("--method", bench.method, "fram, ism or both");
  benchc->add_option("--rooms", bench.rooms, "Rooms per workload");
  benchc->add_option("--sources", bench.sources, "Sources per room");
  benchc->add_option("--reps", bench.repetitions, "Timed repetitions")->check(CLI::PositiveNumber);
  benchc->add_option("--warmup", bench.warmup, "Untimed warm-up runs");
  benchc->add_option("--seed", bench.seed, "Workload seed");
  benchc->add_option("--batch-workers", bench.batch_workers, "Also time batch generation for these worker counts");
  benchc->add_option("--batches", bench.batches, "Batches per timed batch run");
  benchc->add_flag("--zero-work", bench.zero_work, "Silent sources without images (harness floor)");
  benchc->add_option("--out", bench.out, "Report path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*simulate) return RunSimulate(sim);
    if (*mixc) return RunMix(mix);
    if (*features) return RunFeatures(feat);
    if (*benchc) return RunBench(bench);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
