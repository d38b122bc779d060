// AVX2 kernel variants. Each lane performs the same mul/add/sub sequence as
// the scalar reference (no FMA), so outputs are bit-identical to scalar.cpp.
// Pointer aliasing contract: full overlap (r == a or r == b) is allowed,
// partial overlap is not.

#ifdef BALLCOMP_HAVE_AVX2_TU

#include "ballcomp/kernels.hpp"

#include <immintrin.h>

namespace ballcomp::kernels::detail {

void vc_mul_avx2(std::size_t n, const double* are, const double* aim,
                 const double* bre, const double* bim, double* rre, double* rim) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d ar = _mm256_loadu_pd(are + i);
    const __m256d ai = _mm256_loadu_pd(aim + i);
    const __m256d br = _mm256_loadu_pd(bre + i);
    const __m256d bi = _mm256_loadu_pd(bim + i);
    const __m256d tr = _mm256_sub_pd(_mm256_mul_pd(ar, br), _mm256_mul_pd(ai, bi));
    const __m256d ti = _mm256_add_pd(_mm256_mul_pd(ar, bi), _mm256_mul_pd(ai, br));
    _mm256_storeu_pd(rre + i, tr);
    _mm256_storeu_pd(rim + i, ti);
  }
  for (; i < n; ++i) {
    const double tr = are[i] * bre[i] - aim[i] * bim[i];
    const double ti = are[i] * bim[i] + aim[i] * bre[i];
    rre[i] = tr;
    rim[i] = ti;
  }
}

void vc_mul_sub_avx2(std::size_t n, const double* are, const double* aim,
                     const double* bre, const double* bim, double* rre, double* rim) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d ar = _mm256_loadu_pd(are + i);
    const __m256d ai = _mm256_loadu_pd(aim + i);
    const __m256d br = _mm256_loadu_pd(bre + i);
    const __m256d bi = _mm256_loadu_pd(bim + i);
    const __m256d tr = _mm256_sub_pd(_mm256_mul_pd(ar, br), _mm256_mul_pd(ai, bi));
    const __m256d ti = _mm256_add_pd(_mm256_mul_pd(ar, bi), _mm256_mul_pd(ai, br));
    _mm256_storeu_pd(rre + i, _mm256_sub_pd(_mm256_loadu_pd(rre + i), tr));
    _mm256_storeu_pd(rim + i, _mm256_sub_pd(_mm256_loadu_pd(rim + i), ti));
  }
  for (; i < n; ++i) {
    rre[i] = rre[i] - (are[i] * bre[i] - aim[i] * bim[i]);
    rim[i] = rim[i] - (are[i] * bim[i] + aim[i] * bre[i]);
  }
}

void vc_axpy_avx2(std::size_t n, double cre, double cim,
                  const double* xre, const double* xim, double* yre, double* yim) {
  const __m256d cr = _mm256_set1_pd(cre);
  const __m256d ci = _mm256_set1_pd(cim);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xr = _mm256_loadu_pd(xre + i);
    const __m256d xi = _mm256_loadu_pd(xim + i);
    const __m256d tr = _mm256_sub_pd(_mm256_mul_pd(cr, xr), _mm256_mul_pd(ci, xi));
    const __m256d ti = _mm256_add_pd(_mm256_mul_pd(cr, xi), _mm256_mul_pd(ci, xr));
    _mm256_storeu_pd(yre + i, _mm256_add_pd(_mm256_loadu_pd(yre + i), tr));
    _mm256_storeu_pd(yim + i, _mm256_add_pd(_mm256_loadu_pd(yim + i), ti));
  }
  for (; i < n; ++i) {
    yre[i] = yre[i] + (cre * xre[i] - cim * xim[i]);
    yim[i] = yim[i] + (cre * xim[i] + cim * xre[i]);
  }
}

void vc_abs2_avx2(std::size_t n, const double* re, const double* im, double* out) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d r = _mm256_loadu_pd(re + i);
    const __m256d m = _mm256_loadu_pd(im + i);
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_mul_pd(r, r), _mm256_mul_pd(m, m)));
  }
  for (; i < n; ++i) out[i] = re[i] * re[i] + im[i] * im[i];
}

double vr_max_avx2(std::size_t n, const double* v, std::size_t* argmax) {
  double best;
  std::size_t bi;
  if (n >= 4) {
    __m256d bv = _mm256_loadu_pd(v);
    __m256d bx = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
    __m256d ix = _mm256_set_pd(7.0, 6.0, 5.0, 4.0);
    const __m256d four = _mm256_set1_pd(4.0);
    std::size_t i = 4;
    for (; i + 4 <= n; i += 4) {
      const __m256d x = _mm256_loadu_pd(v + i);
      const __m256d m = _mm256_cmp_pd(x, bv, _CMP_GT_OQ);
      bv = _mm256_blendv_pd(bv, x, m);
      bx = _mm256_blendv_pd(bx, ix, m);
      ix = _mm256_add_pd(ix, four);
    }
    // Lane fold prefers the lowest index on ties; within a lane the running
    // max already kept its first occurrence, so the fold reproduces the
    // scalar first-occurrence argmax.
    alignas(32) double lv[4], lx[4];
    _mm256_store_pd(lv, bv);
    _mm256_store_pd(lx, bx);
    best = lv[0];
    bi = static_cast<std::size_t>(lx[0]);
    for (int k = 1; k < 4; ++k) {
      const auto ki = static_cast<std::size_t>(lx[k]);
      if (lv[k] > best || (lv[k] == best && ki < bi)) {
        best = lv[k];
        bi = ki;
      }
    }
    for (; i < n; ++i) {
      if (v[i] > best) {
        best = v[i];
        bi = i;
      }
    }
  } else {
    best = v[0];
    bi = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (v[i] > best) {
        best = v[i];
        bi = i;
      }
    }
  }
  if (argmax) *argmax = bi;
  return best;
}

}

#endif
