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

// Compiled with -mavx2 -mfma; only reached through the dispatcher after a
// CPUID check. Must not include Eigen (ISA-dependent inline code).

#include <immintrin.h>

#include <cmath>

#include "risloc/simd/kernels.hpp"

namespace risloc::simd::avx2 {

namespace {

// Two interleaved complex products per register: (a0 b0, a1 b1).
inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d b_re = _mm256_movedup_pd(b);
  const __m256d b_im = _mm256_permute_pd(b, 0xF);
  const __m256d a_sw = _mm256_permute_pd(a, 0x5);
  return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

// [w0, w0, w1, w1] from two consecutive real weights.
inline __m256d load_weight_pair(const double* w) {
  const __m256d v = _mm256_castpd128_pd256(_mm_loadu_pd(w));
  return _mm256_permute4x64_pd(v, 0x50);
}

inline cplx reduce_pairs(__m256d v) {
  alignas(32) double t[4];
  _mm256_store_pd(t, v);
  return {t[0] + t[2], t[1] + t[3]};
}

inline double hsum(__m256d v) {
  alignas(32) double t[4];
  _mm256_store_pd(t, v);
  return (t[0] + t[1]) + (t[2] + t[3]);
}

// Exact phasors are re-evaluated every kReseed blocks to bound the
// rotation recurrence drift.
constexpr std::size_t kReseed = 32;

}  // namespace

WeightedSums weighted_dot(const cplx* x, const cplx* y, const double* weights,
                          std::size_t n_weights, std::size_t m) {
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  __m256d acc = _mm256_setzero_pd();
  __m256d accw[kMaxWeights] = {_mm256_setzero_pd(), _mm256_setzero_pd(), _mm256_setzero_pd()};
  std::size_t i = 0;
  for (; i + 2 <= m; i += 2) {
    const __m256d z = cmul(_mm256_loadu_pd(xd + 2 * i), _mm256_loadu_pd(yd + 2 * i));
    acc = _mm256_add_pd(acc, z);
    for (std::size_t j = 0; j < n_weights; ++j)
      accw[j] = _mm256_fmadd_pd(z, load_weight_pair(weights + j * m + i), accw[j]);
  }
  WeightedSums out;
  out.plain = reduce_pairs(acc);
  for (std::size_t j = 0; j < n_weights; ++j) out.weighted[j] = reduce_pairs(accw[j]);
  for (; i < m; ++i) {
    const cplx z = x[i] * y[i];
    out.plain += z;
    for (std::size_t j = 0; j < n_weights; ++j) out.weighted[j] += z * weights[j * m + i];
  }
  return out;
}

SubcarrierMoments subcarrier_moments(double theta, std::size_t n) {
  const double c4 = std::cos(4.0 * theta);
  const double s4 = -std::sin(4.0 * theta);
  const __m256d rot_re = _mm256_set1_pd(c4);
  const __m256d rot_im = _mm256_set1_pd(s4);
  const __m256d four = _mm256_set1_pd(4.0);

  __m256d a0r = _mm256_setzero_pd(), a0i = _mm256_setzero_pd();
  __m256d a1r = _mm256_setzero_pd(), a1i = _mm256_setzero_pd();
  __m256d a2r = _mm256_setzero_pd(), a2i = _mm256_setzero_pd();
  __m256d idx = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
  __m256d er = _mm256_setzero_pd(), ei = _mm256_setzero_pd();

  const std::size_t blocks = n / 4;
  for (std::size_t b = 0; b < blocks; ++b) {
    if (b % kReseed == 0) {
      alignas(32) double re[4], im[4];
      for (int l = 0; l < 4; ++l) {
        const double ph = theta * static_cast<double>(4 * b + static_cast<std::size_t>(l));
        re[l] = std::cos(ph);
        im[l] = -std::sin(ph);
      }
      er = _mm256_load_pd(re);
      ei = _mm256_load_pd(im);
    }
    const __m256d idx2 = _mm256_mul_pd(idx, idx);
    a0r = _mm256_add_pd(a0r, er);
    a0i = _mm256_add_pd(a0i, ei);
    a1r = _mm256_fmadd_pd(idx, er, a1r);
    a1i = _mm256_fmadd_pd(idx, ei, a1i);
    a2r = _mm256_fmadd_pd(idx2, er, a2r);
    a2i = _mm256_fmadd_pd(idx2, ei, a2i);
    const __m256d nr = _mm256_fmsub_pd(er, rot_re, _mm256_mul_pd(ei, rot_im));
    const __m256d ni = _mm256_fmadd_pd(er, rot_im, _mm256_mul_pd(ei, rot_re));
    er = nr;
    ei = ni;
    idx = _mm256_add_pd(idx, four);
  }
  SubcarrierMoments out;
  out.s0 = {hsum(a0r), hsum(a0i)};
  out.s1 = {hsum(a1r), hsum(a1i)};
  out.s2 = {hsum(a2r), hsum(a2i)};
  for (std::size_t i = blocks * 4; i < n; ++i) {
    const double fi = static_cast<double>(i);
    const cplx e(std::cos(theta * fi), -std::sin(theta * fi));
    out.s0 += e;
    out.s1 += fi * e;
    out.s2 += fi * fi * e;
  }
  return out;
}

}  // namespace risloc::simd::avx2
