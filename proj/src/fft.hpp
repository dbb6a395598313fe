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

#ifndef FRAMRIR_SRC_FFT_HPP_
#define FRAMRIR_SRC_FFT_HPP_

#include <complex>
#include <cstddef>
#include <memory>
#include <span>

namespace framrir::detail {

// Real-input FFT of one size backed by FFTW. Plans are created once per size
// under a global lock; execution is thread safe.
class RealFft {
 public:
  explicit RealFft(std::size_t n);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::size_t size() const { return n_; }
  std::size_t bins() const { return n_ / 2 + 1; }

  // in.size() == size(), out.size() == bins().
  void Forward(std::span<const double> in,
               std::span<std::complex<double>> out) const;
  // Unnormalised inverse: Inverse(Forward(x)) == size() * x.
  void Inverse(std::span<const std::complex<double>> in,
               std::span<double> out) const;

 private:
  std::size_t n_;
  void* forward_ = nullptr;
  void* inverse_ = nullptr;
};

std::shared_ptr<const RealFft> GetRealFft(std::size_t n);

// Smallest size >= n of the form 2^a 3^b 5^c.
std::size_t FastFftSize(std::size_t n);

}  // namespace framrir::detail

#endif  // FRAMRIR_SRC_FFT_HPP_
