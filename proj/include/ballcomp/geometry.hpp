#pragma once

#include <complex>
#include <initializer_list>
#include <utility>
#include <vector>

namespace ballcomp {

using Complex = std::complex<double>;

// Point of C^n. Dimension is fixed at construction.
class CVec {
 public:
  explicit CVec(int dim) : e_(static_cast<std::size_t>(dim)) {}
  CVec(std::initializer_list<Complex> init) : e_(init) {}

  int dim() const { return static_cast<int>(e_.size()); }
  Complex& operator[](int i) { return e_[static_cast<std::size_t>(i)]; }
  const Complex& operator[](int i) const { return e_[static_cast<std::size_t>(i)]; }

  double norm2() const;
  double norm() const;

  friend bool operator==(const CVec&, const CVec&) = default;

 private:
  std::vector<Complex> e_;
};

namespace geometry {

// Hermitian inner product sum_k z_k * conj(w_k). Dimensions must match.
Complex inner(const CVec& z, const CVec& w);

// Orthogonal split of z along a: returns (P_a z, Q_a z) with
// P_a z = (<z,a>/<a,a>) a and Q_a z = z - P_a z. Requires a != 0.
std::pair<CVec, CVec> proj_pair(const CVec& a, const CVec& z);

// Ball automorphism swapping a and 0:
//   Phi_a(z) = (a - P_a z - s_a Q_a z) / (1 - <z,a>),  s_a = sqrt(1 - |a|^2).
// Requires |a| < 1 and |z| <= 1. The branch |a| < 1e-14 degenerates to -z.
CVec mobius(const CVec& a, const CVec& z);

// Pseudo-hyperbolic distance |Phi_w(z)|. Symmetric, automorphism-invariant.
double pseudo_dist(const CVec& z, const CVec& w);

// Residual of the automorphism product identity
//   1 - <Phi_a(z), Phi_a(w)> = (1-|a|^2)(1-<z,w>) / ((1-<z,a>)(1-<a,w>)).
double zhu_identity_residual(const CVec& a, const CVec& z, const CVec& w);

}

}
