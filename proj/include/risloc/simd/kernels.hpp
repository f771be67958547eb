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

#pragma once

// Inner loops of the FIM assembly. Every kernel has a scalar reference
// implementation and, where the CPU supports it, an AVX2+FMA variant chosen
// at runtime. Both variants must agree to rounding; see tests/test_simd.cpp.

#include <array>
#include <complex>
#include <cstddef>
#include <span>

namespace risloc::simd {

using cplx = std::complex<double>;

enum class Backend { Scalar, Avx2 };

const char* to_string(Backend b);

bool backend_supported(Backend b);

/// Best backend for this CPU.
Backend detect_backend();

/// Backend used by the dispatching entry points below. Defaults to
/// detect_backend(); can be overridden with RISLOC_SIMD=scalar|avx2.
Backend active_backend();

/// Throws std::invalid_argument if the backend is not supported here.
void set_backend(Backend b);

inline constexpr std::size_t kMaxWeights = 3;

/// plain = sum_m x_m y_m; weighted[j] = sum_m x_m y_m w_j[m] (unconjugated).
struct WeightedSums {
  cplx plain{};
  std::array<cplx, kMaxWeights> weighted{};
};

/// sum_n n^q exp(-j theta n) over n = 0..N-1, q = 0, 1, 2.
struct SubcarrierMoments {
  cplx s0{};
  cplx s1{};
  cplx s2{};
};

// `weights` holds n_weights contiguous arrays of length m (column-major).
WeightedSums weighted_dot(const cplx* x, const cplx* y, const double* weights,
                          std::size_t n_weights, std::size_t m);

SubcarrierMoments subcarrier_moments(double theta, std::size_t n);

namespace scalar {
WeightedSums weighted_dot(const cplx* x, const cplx* y, const double* weights,
                          std::size_t n_weights, std::size_t m);
SubcarrierMoments subcarrier_moments(double theta, std::size_t n);
}  // namespace scalar

namespace avx2 {
WeightedSums weighted_dot(const cplx* x, const cplx* y, const double* weights,
                          std::size_t n_weights, std::size_t m);
SubcarrierMoments subcarrier_moments(double theta, std::size_t n);
}  // namespace avx2

}  // namespace risloc::simd
