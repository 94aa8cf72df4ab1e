// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include <cmath>

#include "mollab/kernels.hpp"

namespace mollab::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline double hmax(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(m, _mm_unpackhi_pd(m, m)));
}

inline __m256d vabs(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

}  // namespace

double functional_sum(const double* ep, const double* em, const double* s, const double* d,
                      const double* wt, std::size_t n, double c0, double c1, double beta) {
  const __m256d vc0 = _mm256_set1_pd(c0);
  const __m256d vc1 = _mm256_set1_pd(c1);
  const __m256d vb = _mm256_set1_pd(beta);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vs = _mm256_loadu_pd(s + i);
    const __m256d vd = _mm256_loadu_pd(d + i);
    const __m256d dd = _mm256_mul_pd(vc1, _mm256_mul_pd(vd, vd));
    const __m256d r = _mm256_sub_pd(vb, vs);
    const __m256d plus = _mm256_fmadd_pd(vc0, _mm256_mul_pd(vs, vs), dd);
    const __m256d minus = _mm256_fmadd_pd(vc0, _mm256_mul_pd(r, r), dd);
    const __m256d term = _mm256_fmadd_pd(_mm256_loadu_pd(ep + i), plus,
                                         _mm256_mul_pd(_mm256_loadu_pd(em + i), minus));
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(wt + i), term, acc);
  }
  double total = hsum(acc);
  if (i < n) total += scalar::functional_sum(ep + i, em + i, s + i, d + i, wt + i, n - i, c0, c1, beta);
  return total;
}

Norms diff_norms(const double* a, const double* b, std::size_t n) {
  __m256d vmax = _mm256_setzero_pd();
  __m256d vsum = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d e = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    vmax = _mm256_max_pd(vmax, vabs(e));
    vsum = _mm256_fmadd_pd(e, e, vsum);
  }
  Norms out{hmax(vmax), hsum(vsum)};
  if (i < n) {
    const Norms rest = scalar::diff_norms(a + i, b + i, n - i);
    out.sup = std::fmax(out.sup, rest.sup);
    out.sumsq += rest.sumsq;
  }
  return out;
}

double stencil_residual_max(const double* s, const double* tanh_t, const double* src,
                            std::size_t n, double h, double c) {
  if (n < 3) return 0;
  const __m256d ih2 = _mm256_set1_pd(1 / (h * h));
  const __m256d i2h = _mm256_set1_pd(1 / (2 * h));
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d vc = _mm256_set1_pd(c);
  __m256d worst = _mm256_setzero_pd();
  std::size_t i = 1;
  for (; i + 4 < n; i += 4) {
    const __m256d sm = _mm256_loadu_pd(s + i - 1);
    const __m256d s0 = _mm256_loadu_pd(s + i);
    const __m256d sp = _mm256_loadu_pd(s + i + 1);
    const __m256d second = _mm256_mul_pd(_mm256_sub_pd(_mm256_add_pd(sp, sm), _mm256_mul_pd(two, s0)), ih2);
    const __m256d first = _mm256_mul_pd(_mm256_mul_pd(_mm256_loadu_pd(tanh_t + i), _mm256_sub_pd(sp, sm)), i2h);
    const __m256d r = _mm256_sub_pd(_mm256_fmadd_pd(vc, s0, _mm256_add_pd(second, first)),
                                    _mm256_loadu_pd(src + i));
    worst = _mm256_max_pd(worst, vabs(r));
  }
  double out = hmax(worst);
  // Remaining interior nodes i .. n-2: the scalar kernel skips its first node.
  if (i + 1 < n) {
    out = std::fmax(out, scalar::stencil_residual_max(s + i - 1, tanh_t + i - 1, src + i - 1,
                                                      n - i + 1, h, c));
  }
  return out;
}

}  // namespace mollab::kernels::avx2
