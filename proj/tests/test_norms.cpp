#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "ballcomp/directions.hpp"
#include "ballcomp/funcmodel.hpp"
#include "ballcomp/norms.hpp"

using namespace ballcomp;

namespace {

BatchFn constant_one(int dim) {
  const PolyFn one = PolyFn::constant(dim, Complex{1.0, 0.0});
  return [one](const PointBatch& pts, std::span<double> re, std::span<double> im) {
    one.eval_batch(pts, re, im);
  };
}

}  // namespace

TEST_CASE("search configuration bounds are enforced") {
  SearchConfig cfg;
  CHECK_NOTHROW(validate_search_config(cfg, 2));
  cfg.radial_points = 0;
  CHECK_THROWS_AS(validate_search_config(cfg, 2), std::invalid_argument);
  cfg = SearchConfig{};
  cfg.sphere_samples = 0;
  CHECK_THROWS_AS(validate_search_config(cfg, 2), std::invalid_argument);
  cfg = SearchConfig{};
  cfg.refine_iters = -1;
  CHECK_THROWS_AS(validate_search_config(cfg, 2), std::invalid_argument);
  cfg = SearchConfig{};
  cfg.r_cap = 1.0;
  CHECK_THROWS_AS(validate_search_config(cfg, 2), std::invalid_argument);
  cfg = SearchConfig{};
  CHECK_THROWS_AS(validate_search_config(cfg, 0), std::invalid_argument);
}

TEST_CASE("ball weight clamps outside the ball") {
  CHECK(ball_weight(0.0, 1.5) == 1.0);
  CHECK(ball_weight(0.36, 1.0) == doctest::Approx(0.64).epsilon(1e-15));
  CHECK(ball_weight(1.0, 2.0) == 0.0);
  CHECK(ball_weight(1.5, 0.5) == 0.0);
}

TEST_CASE("constant function has unit weighted norm with witness at zero") {
  const SearchConfig cfg;
  for (const int dim : {1, 2, 3}) {
    const NormEstimate e = weighted_sup_norm(constant_one(dim), dim, 1.0, cfg);
    CHECK(e.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(e.witness.norm() < 1e-6);
  }
}

TEST_CASE("closed form monomial norms match frozen references") {
  CHECK(monomial_norm_closed(0, 1.0) == 1.0);
  CHECK(monomial_norm_closed(0, 0.37) == 1.0);
  CHECK(monomial_norm_closed(2, 1.0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(monomial_norm_closed(1, 1.0) ==
        doctest::Approx(0.3849001794597505).epsilon(1e-15));
  CHECK(monomial_norm_closed(200, 1.0) ==
        doctest::Approx(0.003660507052763557).epsilon(1e-14));
  // j * ||z^j||_1 approaches 2/e from below.
  const double scaled = 200.0 * monomial_norm_closed(200, 1.0);
  CHECK(scaled == doctest::Approx(0.7321014105527114).epsilon(1e-14));
  CHECK(std::abs(scaled - 2.0 / std::exp(1.0)) / (2.0 / std::exp(1.0)) < 0.05);
  CHECK_THROWS_AS((void)monomial_norm_closed(-1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS((void)monomial_norm_closed(2, 0.0), std::invalid_argument);
}

TEST_CASE("grid search reproduces the closed form across dimensions") {
  const SearchConfig cfg;
  for (const int dim : {1, 2}) {
    const PointBatch dirs = unit_directions(dim, 3, 7, 9);
    for (const int j : {1, 2, 8, 32}) {
      for (const double alpha : {0.5, 1.0, 2.0}) {
        const double closed = monomial_norm_closed(j, alpha);
        for (std::size_t d = 0; d < 3; ++d) {
          const CVec xi = dirs.get(d);
          const BatchFn f = slice_power(PolyMap::identity(dim), xi, j);
          const NormEstimate e = weighted_sup_norm(f, dim, alpha, cfg);
          CHECK(std::abs(e.value - closed) / closed < 1e-6);
          if (dim == 1) break;  // all directions coincide up to phase
        }
      }
    }
  }
}

TEST_CASE("norm estimate is attained at its witness") {
  const SearchConfig cfg;
  PolyFn p(2);
  p.set_coeff(MultiIndex{{1, 0}}, Complex{1.0, 0.0});
  p.set_coeff(MultiIndex{{1, 2}}, Complex{0.0, -0.7});
  const BatchFn f = [p](const PointBatch& pts, std::span<double> re,
                        std::span<double> im) { p.eval_batch(pts, re, im); };
  const NormEstimate e = weighted_sup_norm(f, 2, 1.25, cfg);
  const double at_witness =
      ball_weight(e.witness.norm2(), 1.25) * std::abs(p.eval(e.witness));
  CHECK(e.value == doctest::Approx(at_witness).epsilon(1e-12));
}

TEST_CASE("estimate never decreases under grid refinement") {
  // Doubling nests both grids: radii sit at sin(pi/2 * i/M) and the
  // direction stream is indexed, so the coarse samples are a subset.
  SearchConfig coarse;
  coarse.radial_points = 16;
  coarse.sphere_samples = 64;
  coarse.refine_iters = 0;
  SearchConfig fine = coarse;
  fine.radial_points = 32;
  fine.sphere_samples = 128;
  SearchConfig polished = fine;
  polished.refine_iters = 20;
  PolyFn p(2);
  p.set_coeff(MultiIndex{{2, 1}}, Complex{0.8, 0.1});
  p.set_coeff(MultiIndex{{0, 1}}, Complex{-0.3, 0.4});
  const BatchFn f = [p](const PointBatch& pts, std::span<double> re,
                        std::span<double> im) { p.eval_batch(pts, re, im); };
  const double v0 = weighted_sup_norm(f, 2, 1.0, coarse).value;
  const double v1 = weighted_sup_norm(f, 2, 1.0, fine).value;
  const double v2 = weighted_sup_norm(f, 2, 1.0, polished).value;
  CHECK(v1 >= v0);
  CHECK(v2 >= v1);
}

TEST_CASE("search value is direction independent for slice monomials") {
  const SearchConfig cfg;
  const PointBatch dirs = unit_directions(2, 8, 3, 11);
  double lo = 1e300, hi = 0.0;
  for (std::size_t d = 0; d < 8; ++d) {
    const BatchFn f = slice_power(PolyMap::identity(2), dirs.get(d), 8);
    const double v = weighted_sup_norm(f, 2, 1.0, cfg).value;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK((hi - lo) / hi < 1e-8);
}

TEST_CASE("pair monomial norm interpolates between closed forms") {
  const SearchConfig cfg;
  // Orthogonal pair: sup (1-r^2) |z1| |z2| = 1/8 at r^2 = 1/2.
  const NormEstimate ortho = pair_monomial_norm(1, 1.0, 0.0, cfg);
  CHECK(ortho.value == doctest::Approx(0.125).epsilon(1e-6));

  // Aligned pair collapses to the closed form one power up.
  for (const int j : {0, 1, 4, 16}) {
    for (const double alpha : {0.5, 1.0, 2.0}) {
      const NormEstimate aligned = pair_monomial_norm(j, alpha, 1.0, cfg);
      CHECK(aligned.value ==
            doctest::Approx(monomial_norm_closed(j + 1, alpha)).epsilon(1e-9));
    }
  }

  // The extra factor has modulus below 1, so the pair norm cannot exceed
  // the plain monomial norm.
  for (const double overlap : {0.0, 0.3, 0.7, 1.0}) {
    const NormEstimate e = pair_monomial_norm(3, 1.0, overlap, cfg);
    CHECK(e.value <= monomial_norm_closed(3, 1.0) + 1e-12);
    CHECK(e.value > 0.0);
  }

  CHECK_THROWS_AS((void)pair_monomial_norm(1, 1.0, -0.1, cfg),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)pair_monomial_norm(1, 1.0, 1.5, cfg),
                  std::invalid_argument);
}

TEST_CASE("coefficient recurrence matches small closed forms") {
  const GammaCoeffs flat = gamma_coeffs(1.0, 6);
  REQUIRE(flat.values.size() == 7);
  for (const double c : flat.values) CHECK(c == 1.0);

  const GammaCoeffs linear = gamma_coeffs(2.0, 5);
  for (int k = 0; k <= 5; ++k)
    CHECK(linear.values[static_cast<std::size_t>(k)] == doctest::Approx(k + 1.0).epsilon(1e-15));

  // two_alpha = 3: c_k = (k+1)(k+2)/2.
  const GammaCoeffs quad = gamma_coeffs(3.0, 4);
  CHECK(quad.values[2] == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(quad.values[4] == doctest::Approx(15.0).epsilon(1e-14));

  CHECK_THROWS_AS((void)gamma_coeffs(0.0, 4), std::invalid_argument);
  CHECK_THROWS_AS((void)gamma_coeffs(1.0, -1), std::invalid_argument);
}

TEST_CASE("partial sums grow at the predicted polynomial rate") {
  const std::vector<double> grid = {0.0, 0.5, 0.9};
  const AsymptoticsReport flat = coeff_asymptotics(0.5, 1024, grid);
  // two_alpha = 1 gives S_k = k + 1 exactly, so S_k / k -> 1.
  for (const auto& row : flat.sums) {
    if (row.k >= 64) CHECK(row.ratio == doctest::Approx((row.k + 1.0) / row.k).epsilon(1e-12));
  }
  const AsymptoticsReport lin = coeff_asymptotics(1.0, 1024, grid);
  for (const auto& row : lin.sums) {
    if (row.k >= 64) {
      CHECK(row.ratio > 0.4);
      CHECK(row.ratio < 0.6);
    }
  }
  REQUIRE(lin.series.size() == grid.size());
  for (const auto& row : lin.series) CHECK(row.weighted_series > 0.0);
}
