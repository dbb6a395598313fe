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


#include "framrir/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <sstream>
#include <thread>

#include "framrir/fram.hpp"
#include "framrir/geometry.hpp"
#include "framrir/ism.hpp"
#include "framrir/rng.hpp"
#include "framrir/simd.hpp"
#include "json.hpp"

namespace framrir {

namespace {

using Clock = std::chrono::steady_clock;

double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Runs task(i) for i in [0, count) on `threads` workers.
void ParallelFor(std::size_t count, int threads, const std::function<void(std::size_t)>& task) {
  const std::size_t workers = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::max(1, threads)), 1, std::max<std::size_t>(count, 1));
  std::atomic<std::size_t> next{0};
  auto loop = [&] {
    for (std::size_t i = next++; i < count; i = next++) task(i);
  };
  if (workers == 1) {
    loop();
    return;
  }
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(loop);
}

double TimeSeconds(const std::function<void()>& fn) {
  const auto start = Clock::now();
  fn();
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<double> TimeRuns(int warmup, int repetitions, const std::function<void()>& fn) {
  for (int i = 0; i < warmup; ++i) fn();
  std::vector<double> runs;
  for (int i = 0; i < std::max(1, repetitions); ++i) runs.push_back(TimeSeconds(fn));
  return runs;
}

std::vector<Scene> BenchScenes(const RirBenchOptions& o) {
  CounterRng rng(o.seed);
  std::vector<Scene> scenes;
  for (std::size_t r = 0; r < o.rooms; ++r) {
    Scene s;
    s.room_dims = {rng.Uniform(3.0, 10.0), rng.Uniform(3.0, 10.0), rng.Uniform(2.5, 4.0)};
    s.mic_positions = EvalArray();
    const double reach = 0.5 * std::min({s.room_dims.x, s.room_dims.y, s.room_dims.z});
    for (std::size_t k = 0; k < o.sources_per_room; ++k) {
      SourcePlacement p;
      p.distance = rng.Uniform(0.3, std::max(0.3, reach - 0.1));
      p.azimuth = rng.Uniform(-std::numbers::pi, std::numbers::pi);
      s.sources.push_back(p);
    }
    scenes.push_back(std::move(s));
  }
  return scenes;
}

BenchReport Finish(std::string method, int threads, std::size_t n_rirs, std::size_t n_calls,
                   std::vector<double> runs) {
  BenchReport r;
  r.method = std::move(method);
  r.threads = threads;
  r.n_rirs = n_rirs;
  r.n_calls = n_calls;
  r.total_seconds = Median(runs);
  r.seconds_per_rir = n_rirs ? r.total_seconds / static_cast<double>(n_rirs) : 0.0;
  r.seconds_per_call = n_calls ? r.total_seconds / static_cast<double>(n_calls) : 0.0;
  r.run_seconds = std::move(runs);
  r.host = HostDescription();
  return r;
}

}  // namespace

double BenchReport::Cv() const {
  if (run_seconds.size() < 2) return 0.0;
  const double n = static_cast<double>(run_seconds.size());
  const double mean = std::accumulate(run_seconds.begin(), run_seconds.end(), 0.0) / n;
  double var = 0.0;
  for (double t : run_seconds) var += (t - mean) * (t - mean);
  return mean > 0.0 ? std::sqrt(var / (n - 1.0)) / mean : 0.0;
}

BenchReport BenchRir(const RirBenchOptions& options) {
  const std::vector<Scene> scenes = BenchScenes(options);
  SimParams params;
  params.t60 = options.t60;
  params.sample_rate = options.sample_rate;
  params.num_images = options.num_images;
  params.seed = options.seed;
  const DecimationChain chain(ComputeRateFactors(options.sample_rate));

  std::function<void(std::size_t)> task;
  if (options.method == BenchMethod::kFram) {
    task = [&](std::size_t room) {
      SimulateOptions sim;
      sim.early = false;
      SimulateRir(params, scenes[room], sim);
    };
  } else {
    task = [&](std::size_t room) {
      for (std::size_t k = 0; k < scenes[room].sources.size(); ++k) {
        const IsmConfig cfg = IsmConfigFromScene(scenes[room], k, params, options.ism_order);
        DownsampleHighpassDownsample(IsmTrain(cfg), chain);
      }
    };
  }
  auto runs = TimeRuns(options.warmup, options.repetitions,
                       [&] { ParallelFor(scenes.size(), options.threads, task); });
  return Finish(options.method == BenchMethod::kFram ? "fram" : "ism", options.threads,
                options.rooms * options.sources_per_room, options.rooms, std::move(runs));
}

BenchReport BenchBatch(const BatchBenchOptions& options) {
  BatchRequest request;
  request.spec = options.spec;
  request.batch_size = options.batch_size;
  request.master_seed = options.seed;
  if (options.zero_work) request.spec.num_images = 0;
  SyntheticSourceBank::Options bank_options;
  bank_options.sample_rate = request.spec.sample_rate;
  bank_options.silent = options.zero_work;
  const SyntheticSourceBank bank(bank_options);

  auto produce = [&](std::size_t batch) {
    BatchRequest r = request;
    r.master_seed = DeriveSeed(options.seed, batch);
    for (std::size_t i = 0; i < r.batch_size; ++i) GenerateItem(r, bank, i);
  };
  auto runs = TimeRuns(options.warmup, options.repetitions,
                       [&] { ParallelFor(options.num_batches, options.workers, produce); });
  return Finish("batch", options.workers, options.num_batches * options.batch_size,
                options.num_batches, std::move(runs));
}

std::string HostDescription() {
  std::ostringstream s;
  s << "cores=" << std::thread::hardware_concurrency()
    << " simd=" << simd::BackendName(simd::ActiveBackend());
#if defined(__clang__)
  s << " compiler=clang-" << __clang_major__ << '.' << __clang_minor__;
#elif defined(__GNUC__)
  s << " compiler=gcc-" << __GNUC__ << '.' << __GNUC_MINOR__;
#endif
  return s.str();
}

std::string BenchReportsToJson(std::span<const BenchReport> reports) {
  nlohmann::json root;
  root["schema_version"] = kBenchSchemaVersion;
  root["reports"] = nlohmann::json::array();
  for (const BenchReport& r : reports) {
    root["reports"].push_back({{"method", r.method},
                               {"threads", r.threads},
                               {"n_rirs", r.n_rirs},
                               {"n_calls", r.n_calls},
                               {"total_seconds", r.total_seconds},
                               {"seconds_per_rir", r.seconds_per_rir},
                               {"seconds_per_call", r.seconds_per_call},
                               {"run_seconds", r.run_seconds},
                               {"cv", r.Cv()},
                               {"host", r.host}});
  }
  return root.dump(2);
}

}  // namespace framrir
