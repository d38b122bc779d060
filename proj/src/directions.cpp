#include "ballcomp/directions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ballcomp {

namespace detail {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double halton(std::uint64_t index, int base) {
  double f = 1.0;
  double r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * static_cast<double>(index % static_cast<std::uint64_t>(base));
    index /= static_cast<std::uint64_t>(base);
  }
  return r;
}

// Acklam's rational approximation, absolute error below 1.2e-9. That is far
// tighter than direction placement needs.
double inverse_normal_cdf(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  if (p <= 0.0 || p >= 1.0) throw std::invalid_argument("inverse_normal_cdf: p outside (0,1)");
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - plow) {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}

PointBatch unit_directions(int dim, std::size_t count, std::uint64_t seed,
                           std::uint64_t stream) {
  if (dim < 1) throw std::invalid_argument("unit_directions: dimension must be >= 1");
  if (count < 1) throw std::invalid_argument("unit_directions: count must be >= 1");
  PointBatch b;
  b.resize(dim, count);
  if (dim == 1) {
    for (std::size_t k = 0; k < count; ++k) {
      const double th = 2.0 * std::numbers::pi * static_cast<double>(k) /
                        static_cast<double>(count);
      b.re[0][k] = std::cos(th);
      b.im[0][k] = std::sin(th);
    }
    return b;
  }
  static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  const int dims2 = 2 * dim;
  if (dims2 > static_cast<int>(sizeof(primes) / sizeof(primes[0])))
    throw std::invalid_argument("unit_directions: dimension too large");
  const std::uint64_t offset =
      1 + (detail::splitmix64(seed ^ (stream * 0x100000001b3ULL)) & 0xfffffULL);
  for (std::size_t k = 0; k < count; ++k) {
    double g[24];
    double n2 = 0.0;
    for (int d = 0; d < dims2; ++d) {
      double u = detail::halton(offset + k, primes[d]);
      // Halton values sit strictly inside (0,1) except u = 0 at index 0,
      // which the offset >= 1 rules out for base 2 only; clamp the rest.
      if (u <= 0.0) u = 0.5 / 1048576.0;
      g[d] = detail::inverse_normal_cdf(u);
      n2 += g[d] * g[d];
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (int v = 0; v < dim; ++v) {
      b.re[static_cast<std::size_t>(v)][k] = g[2 * v] * inv;
      b.im[static_cast<std::size_t>(v)][k] = g[2 * v + 1] * inv;
    }
  }
  return b;
}

}
