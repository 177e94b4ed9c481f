#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "dgpd/kernels.hpp"

// Two complex doubles per 256-bit register: [re0, im0, re1, im1].

namespace dgpd::kernels {
namespace {

inline __m256d mul2(__m256d a, __m256d b) {
  __m256d b_re = _mm256_movedup_pd(b);          // [br0, br0, br1, br1]
  __m256d b_im = _mm256_permute_pd(b, 0xF);     // [bi0, bi0, bi1, bi1]
  __m256d a_sw = _mm256_permute_pd(a, 0x5);     // [ai0, ar0, ai1, ar1]
  return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

void cmul(const cd* a, const cd* b, cd* out, std::size_t n) {
  auto pa = reinterpret_cast<const double*>(a);
  auto pb = reinterpret_cast<const double*>(b);
  auto po = reinterpret_cast<double*>(out);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    _mm256_storeu_pd(po + 2 * i, mul2(_mm256_loadu_pd(pa + 2 * i), _mm256_loadu_pd(pb + 2 * i)));
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

void caxpy(cd alpha, const cd* x, cd* y, std::size_t n) {
  auto px = reinterpret_cast<const double*>(x);
  auto py = reinterpret_cast<double*>(y);
  const __m256d va = _mm256_setr_pd(alpha.real(), alpha.imag(), alpha.real(), alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d prod = mul2(_mm256_loadu_pd(px + 2 * i), va);
    _mm256_storeu_pd(py + 2 * i, _mm256_add_pd(_mm256_loadu_pd(py + 2 * i), prod));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

cd cdot(const cd* a, const cd* b, std::size_t n) {
  auto pa = reinterpret_cast<const double*>(a);
  auto pb = reinterpret_cast<const double*>(b);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = _mm256_add_pd(acc, mul2(_mm256_loadu_pd(pa + 2 * i), _mm256_loadu_pd(pb + 2 * i)));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  cd s{lanes[0] + lanes[2], lanes[1] + lanes[3]};
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double max_abs_diff(const cd* a, const cd* b, std::size_t n) {
  auto pa = reinterpret_cast<const double*>(a);
  auto pb = reinterpret_cast<const double*>(b);
  __m256d best = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(pa + 2 * i), _mm256_loadu_pd(pb + 2 * i));
    __m256d sq = _mm256_mul_pd(d, d);
    // hadd pairs re²+im² into lanes 0 and 2
    best = _mm256_max_pd(best, _mm256_hadd_pd(sq, sq));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, best);
  double m = std::sqrt(std::max(lanes[0], lanes[2]));
  for (; i < n; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

const KernelTable* avx2_kernels() {
  static const KernelTable table{"avx2", cmul, caxpy, cdot, max_abs_diff};
  return &table;
}

}  // namespace dgpd::kernels
