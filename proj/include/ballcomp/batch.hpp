#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "ballcomp/geometry.hpp"

namespace ballcomp {

// Batch of points of C^n in split-complex layout: re[v][i], im[v][i] hold
// coordinate v of point i.
struct PointBatch {
  int dim = 0;
  std::size_t count = 0;
  std::vector<std::vector<double>> re, im;

  void resize(int d, std::size_t n) {
    dim = d;
    count = n;
    re.assign(static_cast<std::size_t>(d), std::vector<double>(n));
    im.assign(static_cast<std::size_t>(d), std::vector<double>(n));
  }

  void set(std::size_t i, const CVec& z) {
    for (int v = 0; v < dim; ++v) {
      re[static_cast<std::size_t>(v)][i] = z[v].real();
      im[static_cast<std::size_t>(v)][i] = z[v].imag();
    }
  }

  CVec get(std::size_t i) const {
    CVec z(dim);
    for (int v = 0; v < dim; ++v)
      z[v] = Complex(re[static_cast<std::size_t>(v)][i], im[static_cast<std::size_t>(v)][i]);
    return z;
  }
};

// Scalar-valued function evaluated on point batches. Implementations must be
// pure (no retained state) so evaluations can run concurrently.
using BatchFn = std::function<void(const PointBatch&, std::span<double>, std::span<double>)>;

Complex eval_at(const BatchFn& f, const CVec& z);

}
