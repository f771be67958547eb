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

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "risloc/simd/kernels.hpp"

namespace risloc::simd {

namespace {

Backend initial_backend() {
  const Backend best = detect_backend();
  if (const char* env = std::getenv("RISLOC_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return Backend::Scalar;
    if (std::strcmp(env, "avx2") == 0 && backend_supported(Backend::Avx2)) return Backend::Avx2;
  }
  return best;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> b{initial_backend()};
  return b;
}

}  // namespace

const char* to_string(Backend b) { return b == Backend::Avx2 ? "avx2" : "scalar"; }

bool backend_supported(Backend b) {
  switch (b) {
    case Backend::Scalar: return true;
    case Backend::Avx2:
#if defined(RISLOC_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

Backend detect_backend() {
  return backend_supported(Backend::Avx2) ? Backend::Avx2 : Backend::Scalar;
}

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (!backend_supported(b))
    throw std::invalid_argument(std::string("SIMD backend not supported: ") + to_string(b));
  current().store(b, std::memory_order_relaxed);
}

WeightedSums weighted_dot(const cplx* x, const cplx* y, const double* weights,
                          std::size_t n_weights, std::size_t m) {
  if (n_weights > kMaxWeights) throw std::invalid_argument("too many weight arrays");
#ifdef RISLOC_HAVE_AVX2_KERNELS
  if (active_backend() == Backend::Avx2) return avx2::weighted_dot(x, y, weights, n_weights, m);
#endif
  return scalar::weighted_dot(x, y, weights, n_weights, m);
}

SubcarrierMoments subcarrier_moments(double theta, std::size_t n) {
#ifdef RISLOC_HAVE_AVX2_KERNELS
  if (active_backend() == Backend::Avx2) return avx2::subcarrier_moments(theta, n);
#endif
  return scalar::subcarrier_moments(theta, n);
}

}  // namespace risloc::simd
