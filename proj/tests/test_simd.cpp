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


#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "framrir/fram.hpp"
#include "framrir/geometry.hpp"
#include "framrir/rng.hpp"
#include "framrir/simd.hpp"
#include "framrir/types.hpp"

namespace framrir {
namespace {

using simd::Backend;

std::vector<Backend> VectorBackends() {
  std::vector<Backend> out;
  for (Backend b : {Backend::kAvx2, Backend::kNeon}) {
    if (simd::BackendSupported(b)) out.push_back(b);
  }
  return out;
}

class BackendGuard {
 public:
  BackendGuard() : saved_(simd::ActiveBackend()) {}
  ~BackendGuard() { simd::SetBackend(saved_); }

 private:
  Backend saved_;
};

TEST(Simd, ScalarAlwaysSupported) {
  EXPECT_TRUE(simd::BackendSupported(Backend::kScalar));
  EXPECT_EQ(simd::BackendName(Backend::kScalar), "scalar");
}

TEST(Simd, UnsupportedBackendThrows) {
  for (Backend b : {Backend::kAvx2, Backend::kNeon}) {
    if (!simd::BackendSupported(b)) EXPECT_THROW(simd::SetBackend(b), Error);
  }
}

TEST(Simd, KernelsMatchScalarReference) {
  const auto& ref = simd::Kernels(Backend::kScalar);
  CounterRng rng(17);
  for (Backend b : VectorBackends()) {
    const auto& k = simd::Kernels(b);
    for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 8u, 15u, 16u, 17u, 31u, 64u, 67u, 1000u, 4097u}) {
      std::vector<double> a(n), c(n);
      std::vector<float> x(n), y(n);
      for (std::size_t i = 0; i < n; ++i) {
        a[i] = rng.Uniform(-1, 1);
        c[i] = rng.Uniform(-1, 1);
        x[i] = static_cast<float>(rng.Uniform(-1, 1));
        y[i] = static_cast<float>(rng.Uniform(-1, 1));
      }
      const double dot_ref = ref.dot(a.data(), c.data(), n);
      EXPECT_NEAR(k.dot(a.data(), c.data(), n), dot_ref, 1e-12 * (1.0 + n)) << "n=" << n;
      const double ss_ref = ref.sum_squares(x.data(), n);
      EXPECT_NEAR(k.sum_squares(x.data(), n), ss_ref, 1e-12 * (1.0 + ss_ref)) << "n=" << n;
      std::vector<float> y_ref = y, y_vec = y;
      ref.scaled_add(y_ref.data(), x.data(), 0.37f, n);
      k.scaled_add(y_vec.data(), x.data(), 0.37f, n);
      for (std::size_t i = 0; i < n; ++i) {
        EXPECT_NEAR(y_vec[i], y_ref[i], 2e-7f) << "n=" << n << " i=" << i;
      }
    }
  }
}

TEST(Simd, SimulationAgreesAcrossBackends) {
  BackendGuard guard;
  SimParams params;
  params.seed = 3;
  Scene scene;
  scene.mic_positions = EvalArray();
  scene.sources.push_back({1.5, 0.7, 0.1});

  simd::SetBackend(Backend::kScalar);
  const RirFilter ref = SimulateRir(params, scene).sources[0].full;
  for (Backend b : VectorBackends()) {
    simd::SetBackend(b);
    const RirFilter vec = SimulateRir(params, scene).sources[0].full;
    ASSERT_EQ(vec.num_samples(), ref.num_samples());
    for (std::size_t m = 0; m < ref.num_channels(); ++m) {
      for (std::size_t i = 0; i < ref.num_samples(); ++i) {
        ASSERT_NEAR(vec.channels[m][i], ref.channels[m][i], 1e-6) << "m=" << m << " i=" << i;
      }
    }
  }
}

}  // namespace
}  // namespace framrir
