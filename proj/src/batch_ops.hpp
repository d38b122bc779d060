#pragma once

// Internal helpers shared by the probe evaluators. Not part of the public
// headers.

#include <vector>

#include "ballcomp/batch.hpp"
#include "ballcomp/geometry.hpp"
#include "ballcomp/kernels.hpp"

namespace ballcomp::detail {

// acc = sum_v img_v * conj(xi_v), pointwise over the batch.
inline void dot_against(const PointBatch& img, const CVec& xi, std::vector<double>& acc_re,
                        std::vector<double>& acc_im) {
  const std::size_t n = img.count;
  acc_re.assign(n, 0.0);
  acc_im.assign(n, 0.0);
  for (int v = 0; v < img.dim; ++v) {
    const auto sv = static_cast<std::size_t>(v);
    kernels::vc_axpy(n, xi[v].real(), -xi[v].imag(), img.re[sv].data(), img.im[sv].data(),
                     acc_re.data(), acc_im.data());
  }
}

// s^j in place by binary exponentiation.
inline void pow_inplace(std::vector<double>& re, std::vector<double>& im, int j) {
  const std::size_t n = re.size();
  if (j == 1) return;
  if (j == 0) {
    std::fill(re.begin(), re.end(), 1.0);
    std::fill(im.begin(), im.end(), 0.0);
    return;
  }
  std::vector<double> base_re = re, base_im = im;
  bool have = false;
  int e = j;
  while (e > 0) {
    if (e & 1) {
      if (!have) {
        re = base_re;
        im = base_im;
        have = true;
      } else {
        kernels::vc_mul(n, re.data(), im.data(), base_re.data(), base_im.data(), re.data(),
                        im.data());
      }
    }
    e >>= 1;
    if (e > 0)
      kernels::vc_mul(n, base_re.data(), base_im.data(), base_re.data(), base_im.data(),
                      base_re.data(), base_im.data());
  }
}

}
