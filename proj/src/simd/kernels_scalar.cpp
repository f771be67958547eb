// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The risloc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>

#include "risloc/simd/kernels.hpp"

namespace risloc::simd::scalar {

WeightedSums weighted_dot(const cplx* x, const cplx* y, const double* weights,
                          std::size_t n_weights, std::size_t m) {
  WeightedSums out;
  for (std::size_t i = 0; i < m; ++i) {
    const cplx z = x[i] * y[i];
    out.plain += z;
    for (std::size_t j = 0; j < n_weights; ++j) out.weighted[j] += z * weights[j * m + i];
  }
  return out;
}

SubcarrierMoments subcarrier_moments(double theta, std::size_t n) {
  SubcarrierMoments out;
  for (std::size_t i = 0; i < n; ++i) {
    const double fi = static_cast<double>(i);
    const double ph = theta * fi;
    const cplx e(std::cos(ph), -std::sin(ph));
    out.s0 += e;
    out.s1 += fi * e;
    out.s2 += fi * fi * e;
  }
  return out;
}

}  // namespace risloc::simd::scalar
