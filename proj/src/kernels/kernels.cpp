#include "ballcomp/kernels.hpp"

namespace ballcomp::kernels {

namespace detail {

void vc_mul_scalar(std::size_t, const double*, const double*, const double*,
                   const double*, double*, double*);
void vc_mul_sub_scalar(std::size_t, const double*, const double*, const double*,
                       const double*, double*, double*);
void vc_axpy_scalar(std::size_t, double, double, const double*, const double*,
                    double*, double*);
void vc_abs2_scalar(std::size_t, const double*, const double*, double*);
double vr_max_scalar(std::size_t, const double*, std::size_t*);

#ifdef BALLCOMP_HAVE_AVX2_TU
void vc_mul_avx2(std::size_t, const double*, const double*, const double*,
                 const double*, double*, double*);
void vc_mul_sub_avx2(std::size_t, const double*, const double*, const double*,
                     const double*, double*, double*);
void vc_axpy_avx2(std::size_t, double, double, const double*, const double*,
                  double*, double*);
void vc_abs2_avx2(std::size_t, const double*, const double*, double*);
double vr_max_avx2(std::size_t, const double*, std::size_t*);
#endif

}

namespace {

struct Table {
  decltype(&detail::vc_mul_scalar) mul;
  decltype(&detail::vc_mul_sub_scalar) mul_sub;
  decltype(&detail::vc_axpy_scalar) axpy;
  decltype(&detail::vc_abs2_scalar) abs2;
  decltype(&detail::vr_max_scalar) max;
};

constexpr Table kScalar{detail::vc_mul_scalar, detail::vc_mul_sub_scalar,
                        detail::vc_axpy_scalar, detail::vc_abs2_scalar,
                        detail::vr_max_scalar};

#ifdef BALLCOMP_HAVE_AVX2_TU
constexpr Table kAvx2{detail::vc_mul_avx2, detail::vc_mul_sub_avx2,
                      detail::vc_axpy_avx2, detail::vc_abs2_avx2,
                      detail::vr_max_avx2};

bool avx2_supported() { return __builtin_cpu_supports("avx2"); }
#else
bool avx2_supported() { return false; }
#endif

Table g_table = kScalar;
Backend g_active = Backend::Scalar;
bool g_initialized = false;

void init_auto() {
#ifdef BALLCOMP_HAVE_AVX2_TU
  if (avx2_supported()) {
    g_table = kAvx2;
    g_active = Backend::Avx2;
    g_initialized = true;
    return;
  }
#endif
  g_table = kScalar;
  g_active = Backend::Scalar;
  g_initialized = true;
}

const Table& table() {
  if (!g_initialized) init_auto();
  return g_table;
}

}

Backend select(Backend b) {
  switch (b) {
    case Backend::Auto:
      init_auto();
      break;
    case Backend::Avx2:
#ifdef BALLCOMP_HAVE_AVX2_TU
      if (avx2_supported()) {
        g_table = kAvx2;
        g_active = Backend::Avx2;
        g_initialized = true;
        break;
      }
#endif
      g_table = kScalar;
      g_active = Backend::Scalar;
      g_initialized = true;
      break;
    case Backend::Scalar:
      g_table = kScalar;
      g_active = Backend::Scalar;
      g_initialized = true;
      break;
  }
  return g_active;
}

Backend active() {
  if (!g_initialized) init_auto();
  return g_active;
}

void vc_mul(std::size_t n, const double* are, const double* aim,
            const double* bre, const double* bim, double* rre, double* rim) {
  table().mul(n, are, aim, bre, bim, rre, rim);
}

void vc_mul_sub(std::size_t n, const double* are, const double* aim,
                const double* bre, const double* bim, double* rre, double* rim) {
  table().mul_sub(n, are, aim, bre, bim, rre, rim);
}

void vc_axpy(std::size_t n, double cre, double cim,
             const double* xre, const double* xim, double* yre, double* yim) {
  table().axpy(n, cre, cim, xre, xim, yre, yim);
}

void vc_abs2(std::size_t n, const double* re, const double* im, double* out) {
  table().abs2(n, re, im, out);
}

double vr_max(std::size_t n, const double* v, std::size_t* argmax) {
  return table().max(n, v, argmax);
}

}
