#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ballcomp/batch.hpp"
#include "ballcomp/geometry.hpp"

namespace ballcomp {

// Resolution of the sup search. The radial grid has radial_points + 1 nested
// nodes r_i = r_cap * sin(pi i / (2 radial_points)); sphere_samples is the
// direction count per shell (angle count when n = 1). Doubling either
// parameter refines the grid without dropping existing nodes.
struct SearchConfig {
  int radial_points = 32;
  int sphere_samples = 256;
  int refine_iters = 40;
  double r_cap = 1.0 - 1e-6;
  std::uint64_t seed = 12345;
};

void validate_search_config(const SearchConfig& cfg, int dim);

struct GridMeta {
  int radial_points = 0;
  int sphere_samples = 0;
  int refine_iters = 0;
  std::uint64_t seed = 0;
};

// Lower estimate of a weighted sup: value is the weighted modulus attained
// at witness, so it never exceeds the true sup.
struct NormEstimate {
  double value = 0.0;
  CVec witness = CVec(0);
  GridMeta grid;
};

// (1 - |z|^2)^alpha from the squared norm; clamps to 0 outside the ball.
double ball_weight(double norm2, double alpha);

// Estimates sup over the ball of (1 - |z|^2)^alpha |f(z)| by a shell scan
// (constant weight per shell, so the inner loop is a plain modulus max)
// followed by multistart compass refinement of the weighted objective.
NormEstimate weighted_sup_norm(const BatchFn& f, int dim, double alpha,
                               const SearchConfig& cfg);

// Exact sup of r^j (1 - r^2)^alpha over [0, 1): equals the norm of
// z -> <z, xi>^j for any unit xi. j = 0 gives 1.
double monomial_norm_closed(int j, double alpha);

// Norm of z -> <z,xi>^j <z,xi'> where |<xi,xi'>| = overlap in [0, 1].
// Unitary invariance reduces this to a planar problem in the span of xi and
// xi'; the witness lives in that two-dimensional model space. overlap = 1
// collapses to the closed form at exponent j + 1.
NormEstimate pair_monomial_norm(int j, double alpha, double overlap,
                                const SearchConfig& cfg);

// Taylor coefficients of (1 - x)^(-two_alpha): c_0 = 1,
// c_k = c_{k-1} (k - 1 + two_alpha) / k. The recurrence avoids the Gamma
// ratio overflow.
struct GammaCoeffs {
  double two_alpha = 0.0;
  std::vector<double> values;
};

GammaCoeffs gamma_coeffs(double two_alpha, int kmax);

// Growth diagnostics for the coefficient family: partial sums S_k against
// k^(2 alpha) at dyadic k, and the weighted series
// (1-t^2)^alpha sum_k c_k k^(-alpha) t^k on a |a| grid. Both families stay
// inside fixed intervals; the report carries the values, it asserts nothing.
struct AsymptoticsReport {
  struct SumRow {
    int k;
    double partial_sum;
    double ratio;  // S_k / k^(2 alpha)
  };
  struct SeriesRow {
    double t;
    double weighted_series;
  };
  double alpha = 0.0;
  std::vector<SumRow> sums;
  std::vector<SeriesRow> series;
};

AsymptoticsReport coeff_asymptotics(double alpha, int kmax,
                                    std::span<const double> a_abs_grid);

}
