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

#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <mutex>

namespace framrir::detail {

namespace {

std::mutex& PlannerMutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

template <typename T>
std::unique_ptr<T, FftwFree> FftwAlloc(std::size_t n) {
  return std::unique_ptr<T, FftwFree>(static_cast<T*>(fftw_malloc(sizeof(T) * n)));
}

}  // namespace

RealFft::RealFft(std::size_t n) : n_(n) {
  auto in = FftwAlloc<double>(n);
  auto out = FftwAlloc<fftw_complex>(n / 2 + 1);
  std::lock_guard<std::mutex> lock(PlannerMutex());
  const int size = static_cast<int>(n);
  forward_ = fftw_plan_dft_r2c_1d(size, in.get(), out.get(), FFTW_ESTIMATE);
  inverse_ = fftw_plan_dft_c2r_1d(size, out.get(), in.get(), FFTW_ESTIMATE);
}

RealFft::~RealFft() {
  std::lock_guard<std::mutex> lock(PlannerMutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_));
  fftw_destroy_plan(static_cast<fftw_plan>(inverse_));
}

void RealFft::Forward(std::span<const double> in,
                      std::span<std::complex<double>> out) const {
  auto buf_in = FftwAlloc<double>(n_);
  auto buf_out = FftwAlloc<fftw_complex>(bins());
  std::copy(in.begin(), in.end(), buf_in.get());
  fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_), buf_in.get(), buf_out.get());
  for (std::size_t k = 0; k < bins(); ++k) {
    out[k] = {buf_out.get()[k][0], buf_out.get()[k][1]};
  }
}

void RealFft::Inverse(std::span<const std::complex<double>> in,
                      std::span<double> out) const {
  auto buf_in = FftwAlloc<fftw_complex>(bins());
  auto buf_out = FftwAlloc<double>(n_);
  for (std::size_t k = 0; k < bins(); ++k) {
    buf_in.get()[k][0] = in[k].real();
    buf_in.get()[k][1] = in[k].imag();
  }
  // c2r overwrites its input, which is our private copy.
  fftw_execute_dft_c2r(static_cast<fftw_plan>(inverse_), buf_in.get(), buf_out.get());
  std::copy(buf_out.get(), buf_out.get() + n_, out.begin());
}

std::shared_ptr<const RealFft> GetRealFft(std::size_t n) {
  static std::mutex cache_mutex;
  static std::map<std::size_t, std::shared_ptr<const RealFft>> cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_shared<const RealFft>(n);
  return slot;
}

std::size_t FastFftSize(std::size_t n) {
  std::size_t best = 1;
  while (best < n) best *= 2;
  for (std::size_t p5 = 1; p5 < best; p5 *= 5) {
    for (std::size_t p35 = p5; p35 < best; p35 *= 3) {
      std::size_t v = p35;
      while (v < n) v *= 2;
      best = std::min(best, v);
    }
  }
  return best;
}

}  // namespace framrir::detail
