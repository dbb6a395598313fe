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

#include <atomic>
#include <cstdlib>
#include <string>

#include "framrir/types.hpp"
#include "simd/kernels.hpp"

namespace framrir::simd {

namespace {

bool HostHasAvx2() {
#if defined(__x86_64__) || defined(_M_X64)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend DetectBackend() {
  if (const char* forced = std::getenv("FRAMRIR_SIMD")) {
    const std::string name(forced);
    if (name == "scalar") return Backend::kScalar;
    if (name == "avx2" && BackendSupported(Backend::kAvx2)) return Backend::kAvx2;
    if (name == "neon" && BackendSupported(Backend::kNeon)) return Backend::kNeon;
  }
  if (BackendSupported(Backend::kAvx2)) return Backend::kAvx2;
  if (BackendSupported(Backend::kNeon)) return Backend::kNeon;
  return Backend::kScalar;
}

std::atomic<const KernelTable*>& ActiveTable() {
  static std::atomic<const KernelTable*> table{&Kernels(DetectBackend())};
  return table;
}

}  // namespace

bool BackendSupported(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return true;
    case Backend::kAvx2:
      return HostHasAvx2();
    case Backend::kNeon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& Kernels(Backend backend) {
  switch (backend) {
#if defined(__x86_64__) || defined(_M_X64)
    case Backend::kAvx2:
      if (HostHasAvx2()) return kAvx2Kernels;
      break;
#endif
#if defined(__aarch64__)
    case Backend::kNeon:
      return kNeonKernels;
#endif
    default:
      break;
  }
  return kScalarKernels;
}

Backend ActiveBackend() {
  const KernelTable* t = ActiveTable().load(std::memory_order_relaxed);
#if defined(__x86_64__) || defined(_M_X64)
  if (t == &kAvx2Kernels) return Backend::kAvx2;
#endif
#if defined(__aarch64__)
  if (t == &kNeonKernels) return Backend::kNeon;
#endif
  return Backend::kScalar;
}

void SetBackend(Backend backend) {
  if (!BackendSupported(backend)) {
    ThrowInvalidArgument("SIMD backend not supported on this host: " +
                         std::string(BackendName(backend)));
  }
  ActiveTable().store(&Kernels(backend), std::memory_order_relaxed);
}

std::string_view BackendName(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return "scalar";
    case Backend::kAvx2:
      return "avx2";
    case Backend::kNeon:
      return "neon";
  }
  return "unknown";
}

double Dot(std::span<const double> a, std::span<const double> b) {
  return ActiveTable().load(std::memory_order_relaxed)->dot(a.data(), b.data(),
                                                            a.size());
}

double SumSquares(std::span<const float> x) {
  return ActiveTable().load(std::memory_order_relaxed)->sum_squares(x.data(),
                                                                    x.size());
}

void ScaledAdd(std::span<float> y, std::span<const float> x, float gain) {
  ActiveTable().load(std::memory_order_relaxed)->scaled_add(y.data(), x.data(),
                                                            gain, y.size());
}

}  // namespace framrir::simd
