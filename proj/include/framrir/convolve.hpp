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


#ifndef FRAMRIR_CONVOLVE_HPP_
#define FRAMRIR_CONVOLVE_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "framrir/types.hpp"

namespace framrir {

// Linear convolution x * h truncated to the first `out_len` samples,
// computed with one FFT of fast size.
std::vector<float> Convolve(std::span<const float> x, std::span<const float> h,
                            std::size_t out_len);

// Convolves one dry signal with every channel of a filter, reusing the
// transform of x across channels.
std::vector<std::vector<float>> ConvolveChannels(std::span<const float> x,
                                                 const RirFilter& rir,
                                                 std::size_t out_len);

}  // namespace framrir

#endif  // FRAMRIR_CONVOLVE_HPP_
