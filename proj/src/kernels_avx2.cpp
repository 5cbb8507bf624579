#if defined(__x86_64__)

#include <immintrin.h>

#include "forge/kernels.hpp"

// Arithmetic mirrors the scalar kernels operation for operation (no FMA), so
// the comparison outcomes are bit-identical to the reference path.
namespace forge::kernels {

std::size_t count_sigma_avx2(const double* u1, const double* u2,
                             const double* u3, std::size_t n, double w1,
                             double w2, double w3, double r, double thresh) {
  const __m256d vw1 = _mm256_set1_pd(w1);
  const __m256d vw2 = _mm256_set1_pd(w2);
  const __m256d vw3 = _mm256_set1_pd(w3);
  const __m256d vr = _mm256_set1_pd(r);
  const __m256d vt = _mm256_set1_pd(thresh);
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d1 = _mm256_sub_pd(vw1, _mm256_mul_pd(vr, _mm256_loadu_pd(u1 + i)));
    const __m256d d2 = _mm256_sub_pd(vw2, _mm256_mul_pd(vr, _mm256_loadu_pd(u2 + i)));
    const __m256d d3 = _mm256_sub_pd(vw3, _mm256_mul_pd(vr, _mm256_loadu_pd(u3 + i)));
    const __m256d s = _mm256_add_pd(
        _mm256_add_pd(_mm256_mul_pd(d1, d1), _mm256_mul_pd(d2, d2)),
        _mm256_mul_pd(d3, d3));
    const int mask = _mm256_movemask_pd(_mm256_cmp_pd(s, vt, _CMP_LE_OQ));
    count += std::size_t(__builtin_popcount(mask));
  }
  if (i < n)
    count += count_sigma_scalar(u1 + i, u2 + i, u3 + i, n - i, w1, w2, w3, r,
                                thresh);
  return count;
}

std::size_t count_cone_avx2(const double* rho, const double* u1,
                            const double* u2, const double* u3, std::size_t n,
                            double a, double b1, double b2, double b3, double r,
                            double c0, double thresh) {
  const __m256d va = _mm256_set1_pd(a);
  const __m256d vb1 = _mm256_set1_pd(b1);
  const __m256d vb2 = _mm256_set1_pd(b2);
  const __m256d vb3 = _mm256_set1_pd(b3);
  const __m256d vr = _mm256_set1_pd(r);
  const __m256d vc0 = _mm256_set1_pd(c0);
  const __m256d vtwo = _mm256_set1_pd(2.0);
  const __m256d vt = _mm256_set1_pd(thresh);
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vrho = _mm256_loadu_pd(rho + i);
    const __m256d dot = _mm256_add_pd(
        _mm256_add_pd(_mm256_mul_pd(_mm256_loadu_pd(u1 + i), vb1),
                      _mm256_mul_pd(_mm256_loadu_pd(u2 + i), vb2)),
        _mm256_mul_pd(_mm256_loadu_pd(u3 + i), vb3));
    const __m256d lin = _mm256_mul_pd(_mm256_mul_pd(vtwo, vrho),
                                      _mm256_add_pd(va, _mm256_mul_pd(vr, dot)));
    const __m256d q = _mm256_add_pd(
        _mm256_sub_pd(_mm256_mul_pd(vrho, vrho), lin), vc0);
    const int mask = _mm256_movemask_pd(_mm256_cmp_pd(q, vt, _CMP_LE_OQ));
    count += std::size_t(__builtin_popcount(mask));
  }
  if (i < n)
    count += count_cone_scalar(rho + i, u1 + i, u2 + i, u3 + i, n - i, a, b1,
                               b2, b3, r, c0, thresh);
  return count;
}

}  // namespace forge::kernels

#endif  // __x86_64__
