#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <random>
#include <vector>

#include "ballcomp/kernels.hpp"

using namespace ballcomp;

namespace {

struct BackendGuard {
  ~BackendGuard() { kernels::select(kernels::Backend::Auto); }
};

std::vector<double> random_vec(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::vector<double> v(n);
  for (double& x : v)
    x = 2.0 * (static_cast<double>(eng() >> 11) * 0x1.0p-53) - 1.0;
  return v;
}

}  // namespace

TEST_CASE("backend selection reports what it activates") {
  BackendGuard guard;
  CHECK(kernels::select(kernels::Backend::Scalar) == kernels::Backend::Scalar);
  CHECK(kernels::active() == kernels::Backend::Scalar);
  const kernels::Backend widest = kernels::select(kernels::Backend::Auto);
  CHECK(kernels::active() == widest);
  // Requesting a specific backend either activates it or falls back.
  const kernels::Backend got = kernels::select(kernels::Backend::Avx2);
  CHECK((got == kernels::Backend::Avx2 || got == kernels::Backend::Scalar));
}

TEST_CASE("scalar and simd backends agree bit for bit") {
  BackendGuard guard;
  if (kernels::select(kernels::Backend::Avx2) != kernels::Backend::Avx2) {
    kernels::select(kernels::Backend::Scalar);
    return;  // host has no simd backend; dispatch fallback already checked
  }

  // Sizes straddle the vector width so remainder tails are exercised.
  for (const std::size_t n : {std::size_t{1}, std::size_t{2}, std::size_t{3},
                              std::size_t{4}, std::size_t{5}, std::size_t{7},
                              std::size_t{8}, std::size_t{31}, std::size_t{64},
                              std::size_t{100}, std::size_t{1001}}) {
    const std::vector<double> are = random_vec(n, 11 * n + 1);
    const std::vector<double> aim = random_vec(n, 11 * n + 2);
    const std::vector<double> bre = random_vec(n, 11 * n + 3);
    const std::vector<double> bim = random_vec(n, 11 * n + 4);
    const std::vector<double> y0re = random_vec(n, 11 * n + 5);
    const std::vector<double> y0im = random_vec(n, 11 * n + 6);

    struct Out {
      std::vector<double> mul_re, mul_im, msub_re, msub_im, axpy_re, axpy_im,
          abs2;
      double maxv = 0.0;
      std::size_t arg = 0;
    };
    const auto run = [&](kernels::Backend b) {
      kernels::select(b);
      Out o;
      o.mul_re.assign(n, 0.0);
      o.mul_im.assign(n, 0.0);
      kernels::vc_mul(n, are.data(), aim.data(), bre.data(), bim.data(),
                      o.mul_re.data(), o.mul_im.data());
      o.msub_re = y0re;
      o.msub_im = y0im;
      kernels::vc_mul_sub(n, are.data(), aim.data(), bre.data(), bim.data(),
                          o.msub_re.data(), o.msub_im.data());
      o.axpy_re = y0re;
      o.axpy_im = y0im;
      kernels::vc_axpy(n, 0.3, -0.7, are.data(), aim.data(), o.axpy_re.data(),
                       o.axpy_im.data());
      o.abs2.assign(n, 0.0);
      kernels::vc_abs2(n, are.data(), aim.data(), o.abs2.data());
      o.maxv = kernels::vr_max(n, o.abs2.data(), &o.arg);
      return o;
    };

    const Out s = run(kernels::Backend::Scalar);
    const Out v = run(kernels::Backend::Avx2);
    CHECK(s.mul_re == v.mul_re);
    CHECK(s.mul_im == v.mul_im);
    CHECK(s.msub_re == v.msub_re);
    CHECK(s.msub_im == v.msub_im);
    CHECK(s.axpy_re == v.axpy_re);
    CHECK(s.axpy_im == v.axpy_im);
    CHECK(s.abs2 == v.abs2);
    CHECK(s.maxv == v.maxv);
    CHECK(s.arg == v.arg);
  }
}

TEST_CASE("vc_mul allows aliased output") {
  BackendGuard guard;
  for (const kernels::Backend b :
       {kernels::Backend::Scalar, kernels::Backend::Avx2}) {
    if (kernels::select(b) != b) continue;
    const std::size_t n = 37;
    std::vector<double> are = random_vec(n, 71);
    std::vector<double> aim = random_vec(n, 72);
    const std::vector<double> bre = random_vec(n, 73);
    const std::vector<double> bim = random_vec(n, 74);
    std::vector<double> rre(n), rim(n);
    kernels::vc_mul(n, are.data(), aim.data(), bre.data(), bim.data(),
                    rre.data(), rim.data());
    kernels::vc_mul(n, are.data(), aim.data(), bre.data(), bim.data(),
                    are.data(), aim.data());
    CHECK(are == rre);
    CHECK(aim == rim);
  }
}

TEST_CASE("vr_max ties resolve to the first occurrence") {
  BackendGuard guard;
  std::vector<double> v = {1.0, 5.0, 3.0, 5.0, 5.0, -2.0};
  for (const kernels::Backend b :
       {kernels::Backend::Scalar, kernels::Backend::Avx2}) {
    if (kernels::select(b) != b) continue;
    std::size_t arg = 99;
    const double m = kernels::vr_max(v.size(), v.data(), &arg);
    CHECK(m == 5.0);
    CHECK(arg == 1);
  }
}
