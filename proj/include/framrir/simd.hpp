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

#ifndef FRAMRIR_SIMD_HPP_
#define FRAMRIR_SIMD_HPP_

#include <cstddef>
#include <span>
#include <string_view>

// Data-parallel inner loops. Every kernel has a scalar reference
// implementation; vector variants (AVX2+FMA on x86-64, NEON on AArch64) are
// selected once at runtime from the host's capabilities and may be forced
// through SetBackend() or the FRAMRIR_SIMD environment variable
// ("scalar", "avx2", "neon").
//
// Vector variants reassociate sums, so they agree with the scalar reference
// to rounding error, not bit-for-bit. Within one process the backend is fixed,
// which keeps results reproducible run to run.

namespace framrir::simd {

enum class Backend { kScalar, kAvx2, kNeon };

bool BackendSupported(Backend backend);
Backend ActiveBackend();
// Throws Error(kInvalidArgument) if the host cannot run `backend`.
void SetBackend(Backend backend);
std::string_view BackendName(Backend backend);

// sum_i a[i] * b[i]; spans must have equal length.
double Dot(std::span<const double> a, std::span<const double> b);
// sum_i x[i]^2 accumulated in double.
double SumSquares(std::span<const float> x);
// y[i] += gain * x[i]; spans must have equal length.
void ScaledAdd(std::span<float> y, std::span<const float> x, float gain);

// Per-backend entry points, exposed for equivalence testing.
struct KernelTable {
  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*sum_squares)(const float* x, std::size_t n);
  void (*scaled_add)(float* y, const float* x, float gain, std::size_t n);
};
const KernelTable& Kernels(Backend backend);

}  // namespace framrir::simd

#endif  // FRAMRIR_SIMD_HPP_
