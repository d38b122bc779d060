#include "ballcomp/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace ballcomp {

double CVec::norm2() const {
  double s = 0.0;
  for (const auto& c : e_) s += c.real() * c.real() + c.imag() * c.imag();
  return s;
}

double CVec::norm() const { return std::sqrt(norm2()); }

namespace geometry {

namespace {

void require_same_dim(const CVec& z, const CVec& w) {
  if (z.dim() != w.dim()) throw std::invalid_argument("dimension mismatch");
}

constexpr double kDegenerateBase = 1e-14;

}

Complex inner(const CVec& z, const CVec& w) {
  require_same_dim(z, w);
  Complex s{0.0, 0.0};
  for (int k = 0; k < z.dim(); ++k) s += z[k] * std::conj(w[k]);
  return s;
}

std::pair<CVec, CVec> proj_pair(const CVec& a, const CVec& z) {
  require_same_dim(a, z);
  const double a2 = a.norm2();
  if (a2 == 0.0) throw std::invalid_argument("proj_pair: base point is zero");
  const Complex c = inner(z, a) / a2;
  CVec p(a.dim());
  CVec q(a.dim());
  for (int k = 0; k < a.dim(); ++k) {
    p[k] = c * a[k];
    q[k] = z[k] - p[k];
  }
  return {p, q};
}

CVec mobius(const CVec& a, const CVec& z) {
  require_same_dim(a, z);
  const double an = a.norm();
  if (an >= 1.0) throw std::invalid_argument("mobius: base point outside open ball");
  if (z.norm() > 1.0 + 1e-12) throw std::invalid_argument("mobius: argument outside closed ball");
  if (an < kDegenerateBase) {
    CVec r(a.dim());
    for (int k = 0; k < a.dim(); ++k) r[k] = -z[k];
    return r;
  }
  const double sa = std::sqrt(1.0 - an * an);
  auto [p, q] = proj_pair(a, z);
  const Complex denom = 1.0 - inner(z, a);
  CVec r(a.dim());
  for (int k = 0; k < a.dim(); ++k) r[k] = (a[k] - p[k] - sa * q[k]) / denom;
  return r;
}

double pseudo_dist(const CVec& z, const CVec& w) { return mobius(w, z).norm(); }

double zhu_identity_residual(const CVec& a, const CVec& z, const CVec& w) {
  const Complex lhs = 1.0 - inner(mobius(a, z), mobius(a, w));
  const Complex rhs = (1.0 - a.norm2()) * (1.0 - inner(z, w)) /
                      ((1.0 - inner(z, a)) * (1.0 - inner(a, w)));
  return std::abs(lhs - rhs);
}

}

}
