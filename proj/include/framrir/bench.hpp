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


#ifndef FRAMRIR_BENCH_HPP_
#define FRAMRIR_BENCH_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "framrir/mixture.hpp"

namespace framrir {

inline constexpr int kBenchSchemaVersion = 1;

struct BenchReport {
  std::string method;            // "fram", "ism" or "batch"
  int threads = 1;               // worker threads
  std::size_t n_rirs = 0;        // rooms x sources, or items for batches
  std::size_t n_calls = 0;       // simulation calls, or batches
  double total_seconds = 0.0;    // median over repetitions
  double seconds_per_rir = 0.0;
  double seconds_per_call = 0.0; // per room call, or per batch
  std::vector<double> run_seconds;
  std::string host;

  // Coefficient of variation of run_seconds.
  double Cv() const;
};

enum class BenchMethod { kFram, kIsm };

struct RirBenchOptions {
  BenchMethod method = BenchMethod::kFram;
  std::size_t rooms = 10;
  std::size_t sources_per_room = 3;
  int threads = 1;
  int warmup = 1;
  int repetitions = 5;
  std::uint64_t seed = 0;
  double t60 = 0.5;
  double sample_rate = 16000;
  int num_images = 2048;
  // ISM per-axis order; automatic when unset.
  std::optional<int> ism_order;
};

// Times the simulation of rooms x sources 4-channel filters on the 4-8-4 cm
// array. Rooms are processed by a pool of `threads` workers, one room per
// task. Warm-up runs are excluded; the reported time is the median.
BenchReport BenchRir(const RirBenchOptions& options);

struct BatchBenchOptions {
  MixtureSpec spec;
  std::size_t batch_size = 1;
  // Batches produced per repetition; workers each build whole batches.
  std::size_t num_batches = 16;
  int workers = 1;
  int warmup = 1;
  int repetitions = 3;
  std::uint64_t seed = 0;
  // Silent sources and no images, to measure the harness floor.
  bool zero_work = false;
};

// Seconds per batch for on-the-fly mixture generation with `workers`
// concurrent producers.
BenchReport BenchBatch(const BatchBenchOptions& options);

std::string HostDescription();

// {"schema_version": 1, "reports": [...]}
std::string BenchReportsToJson(std::span<const BenchReport> reports);

}  // namespace framrir

#endif  // FRAMRIR_BENCH_HPP_
