#include "ballcomp/kernels.hpp"

namespace ballcomp::kernels::detail {

void vc_mul_scalar(std::size_t n, const double* are, const double* aim,
                   const double* bre, const double* bim, double* rre, double* rim) {
  for (std::size_t i = 0; i < n; ++i) {
    const double tr = are[i] * bre[i] - aim[i] * bim[i];
    const double ti = are[i] * bim[i] + aim[i] * bre[i];
    rre[i] = tr;
    rim[i] = ti;
  }
}

void vc_mul_sub_scalar(std::size_t n, const double* are, const double* aim,
                       const double* bre, const double* bim, double* rre, double* rim) {
  for (std::size_t i = 0; i < n; ++i) {
    rre[i] = rre[i] - (are[i] * bre[i] - aim[i] * bim[i]);
    rim[i] = rim[i] - (are[i] * bim[i] + aim[i] * bre[i]);
  }
}

void vc_axpy_scalar(std::size_t n, double cre, double cim,
                    const double* xre, const double* xim, double* yre, double* yim) {
  for (std::size_t i = 0; i < n; ++i) {
    yre[i] = yre[i] + (cre * xre[i] - cim * xim[i]);
    yim[i] = yim[i] + (cre * xim[i] + cim * xre[i]);
  }
}

void vc_abs2_scalar(std::size_t n, const double* re, const double* im, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = re[i] * re[i] + im[i] * im[i];
}

double vr_max_scalar(std::size_t n, const double* v, std::size_t* argmax) {
  double best = v[0];
  std::size_t bi = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (v[i] > best) {
      best = v[i];
      bi = i;
    }
  }
  if (argmax) *argmax = bi;
  return best;
}

}
