#include "ballcomp/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ballcomp/directions.hpp"
#include "ballcomp/kernels.hpp"
#include "ballcomp/parallel.hpp"

namespace ballcomp {

void validate_search_config(const SearchConfig& cfg, int dim) {
  if (dim < 1) throw std::invalid_argument("search: dimension must be >= 1");
  if (cfg.radial_points < 16) throw std::invalid_argument("search: radial_points must be >= 16");
  const int min_sphere = dim >= 2 ? 64 : 16;
  if (cfg.sphere_samples < min_sphere)
    throw std::invalid_argument("search: sphere_samples below minimum");
  if (cfg.refine_iters < 0) throw std::invalid_argument("search: refine_iters must be >= 0");
  if (!(cfg.r_cap >= 0.99) || !(cfg.r_cap < 1.0))
    throw std::invalid_argument("search: r_cap outside [0.99, 1)");
}

double ball_weight(double norm2, double alpha) {
  const double w = 1.0 - norm2;
  if (w <= 0.0) return 0.0;
  return std::pow(w, alpha);
}

namespace {

double ball_weight_r(double r, double alpha) {
  const double w = (1.0 - r) * (1.0 + r);
  if (w <= 0.0) return 0.0;
  return std::pow(w, alpha);
}

struct ShellResult {
  double value = 0.0;
  std::size_t argmax = 0;
};

double point_value(const BatchFn& f, const CVec& z, double alpha) {
  return ball_weight(z.norm2(), alpha) * std::abs(eval_at(f, z));
}

// Compass walk on the weighted objective. Steps act on the 2*dim real
// coordinates plus two radial scalings; points drifting past r_cap are
// pulled back radially. The step h halves only when no candidate improves,
// so the sweep budget is spent where the objective still moves; the budget
// (rounds * 64 sweeps) bounds total work regardless of how h evolves.
void compass_refine(const BatchFn& f, int dim, double alpha, double r_cap, int rounds,
                    CVec& z, double& val) {
  const int n_cand = 4 * dim + 2;
  PointBatch cand;
  std::vector<double> vre(static_cast<std::size_t>(n_cand));
  std::vector<double> vim(static_cast<std::size_t>(n_cand));
  double h = 0.1;
  long budget = 64L * rounds;
  while (budget-- > 0 && h > 1e-16) {
    cand.resize(dim, static_cast<std::size_t>(n_cand));
    std::vector<CVec> pts;
    pts.reserve(static_cast<std::size_t>(n_cand));
    const auto push = [&](CVec p) {
      const double r = p.norm();
      if (r > r_cap) {
        const double s = r_cap / r;
        for (int v = 0; v < dim; ++v) p[v] *= s;
      }
      cand.set(pts.size(), p);
      pts.push_back(p);
    };
    for (int d = 0; d < 2 * dim; ++d) {
      for (double sgn : {1.0, -1.0}) {
        CVec p = z;
        if (d % 2 == 0)
          p[d / 2] += Complex{sgn * h, 0.0};
        else
          p[d / 2] += Complex{0.0, sgn * h};
        push(p);
      }
    }
    for (double s : {1.0 + h, 1.0 - h}) {
      CVec p = z;
      for (int v = 0; v < dim; ++v) p[v] *= s;
      push(p);
    }
    f(cand, vre, vim);
    double best_gain = val;
    int best_idx = -1;
    for (int i = 0; i < n_cand; ++i) {
      const auto si = static_cast<std::size_t>(i);
      const double mod = std::sqrt(vre[si] * vre[si] + vim[si] * vim[si]);
      const double w = ball_weight(pts[si].norm2(), alpha) * mod;
      if (w > best_gain) {
        best_gain = w;
        best_idx = i;
      }
    }
    if (best_idx >= 0) {
      val = best_gain;
      z = pts[static_cast<std::size_t>(best_idx)];
    } else {
      h *= 0.5;
    }
  }
}

}

NormEstimate weighted_sup_norm(const BatchFn& f, int dim, double alpha,
                               const SearchConfig& cfg) {
  validate_search_config(cfg, dim);
  if (!(alpha > 0.0)) throw std::invalid_argument("weighted_sup_norm: alpha must be positive");

  const int M = cfg.radial_points;
  const auto K = static_cast<std::size_t>(cfg.sphere_samples);
  const PointBatch dirs = unit_directions(dim, K, cfg.seed, 0);

  std::vector<double> radii(static_cast<std::size_t>(M) + 1);
  for (int i = 0; i <= M; ++i)
    radii[static_cast<std::size_t>(i)] =
        cfg.r_cap * std::sin(std::numbers::pi * 0.5 * static_cast<double>(i) /
                             static_cast<double>(M));

  std::vector<ShellResult> shells(radii.size());
  parallel_for(radii.size(), [&](std::size_t si) {
    const double r = radii[si];
    PointBatch batch;
    batch.resize(dim, K);
    for (int v = 0; v < dim; ++v) {
      const auto sv = static_cast<std::size_t>(v);
      for (std::size_t k = 0; k < K; ++k) {
        batch.re[sv][k] = r * dirs.re[sv][k];
        batch.im[sv][k] = r * dirs.im[sv][k];
      }
    }
    std::vector<double> vre(K), vim(K), mod2(K);
    f(batch, vre, vim);
    kernels::vc_abs2(K, vre.data(), vim.data(), mod2.data());
    std::size_t arg = 0;
    const double m2 = kernels::vr_max(K, mod2.data(), &arg);
    shells[si] = {ball_weight_r(r, alpha) * std::sqrt(m2), arg};
  });

  // Top shells become multistart seeds; the fold is sequential so results do
  // not depend on the thread schedule.
  constexpr int kStarts = 3;
  std::vector<std::size_t> order(shells.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return shells[a].value > shells[b].value;
  });

  double best_val = -1.0;
  CVec best_z(dim);
  const int starts = std::min<int>(kStarts, static_cast<int>(order.size()));
  for (int s = 0; s < starts; ++s) {
    const std::size_t si = order[static_cast<std::size_t>(s)];
    const double r = radii[si];
    CVec z(dim);
    for (int v = 0; v < dim; ++v) {
      const auto sv = static_cast<std::size_t>(v);
      z[v] = Complex{r * dirs.re[sv][shells[si].argmax], r * dirs.im[sv][shells[si].argmax]};
    }
    double val = point_value(f, z, alpha);
    compass_refine(f, dim, alpha, cfg.r_cap, cfg.refine_iters, z, val);
    if (val > best_val) {
      best_val = val;
      best_z = z;
    }
  }

  NormEstimate est;
  est.value = best_val < 0.0 ? 0.0 : best_val;
  est.witness = best_z;
  est.grid = {cfg.radial_points, cfg.sphere_samples, cfg.refine_iters, cfg.seed};
  return est;
}

double monomial_norm_closed(int j, double alpha) {
  if (j < 0) throw std::invalid_argument("monomial_norm_closed: negative exponent");
  if (!(alpha > 0.0)) throw std::invalid_argument("monomial_norm_closed: alpha must be positive");
  if (j == 0) return 1.0;
  const double jd = static_cast<double>(j);
  const double t = jd / (jd + 2.0 * alpha);
  return std::pow(t, jd / 2.0) * std::pow(2.0 * alpha / (jd + 2.0 * alpha), alpha);
}

NormEstimate pair_monomial_norm(int j, double alpha, double overlap, const SearchConfig& cfg) {
  if (j < 0) throw std::invalid_argument("pair_monomial_norm: negative exponent");
  if (!(alpha > 0.0)) throw std::invalid_argument("pair_monomial_norm: alpha must be positive");
  if (overlap < -1e-12 || overlap > 1.0 + 1e-12)
    throw std::invalid_argument("pair_monomial_norm: overlap outside [0,1]");
  overlap = std::clamp(overlap, 0.0, 1.0);

  NormEstimate est;
  est.grid = {cfg.radial_points, cfg.sphere_samples, cfg.refine_iters, cfg.seed};
  if (overlap >= 1.0 - 1e-12) {
    // Aligned directions: the pair collapses to a single power.
    est.value = monomial_norm_closed(j + 1, alpha);
    const double jd = static_cast<double>(j + 1);
    const double t = std::sqrt(jd / (jd + 2.0 * alpha));
    est.witness = CVec{Complex{t, 0.0}, Complex{0.0, 0.0}};
    return est;
  }

  // Phase alignment reduces the sup to h(x,y) = x^j (c x + s y) w(x,y)^alpha
  // on the quarter disc, where c = overlap and s completes the unit pair.
  const double c = overlap;
  const double s = std::sqrt((1.0 - c) * (1.0 + c));
  const auto h = [&](double x, double y) {
    const double w = 1.0 - x * x - y * y;
    if (w <= 0.0 || x < 0.0 || y < 0.0) return 0.0;
    const double lin = c * x + s * y;
    if (lin <= 0.0) return 0.0;
    return (j == 0 ? 1.0 : std::pow(x, j)) * lin * std::pow(w, alpha);
  };

  constexpr int G = 256;
  double best = 0.0, bx = 0.0, by = 0.0;
  for (int ix = 0; ix < G; ++ix) {
    const double x = (ix + 0.5) / G;
    for (int iy = 0; iy < G; ++iy) {
      const double y = (iy + 0.5) / G;
      const double v = h(x, y);
      if (v > best) {
        best = v;
        bx = x;
        by = y;
      }
    }
  }
  double step = 1.0 / G;
  for (int round = 0; round < 60 && step > 1e-18; ++round) {
    bool moved = true;
    int guard = 0;
    while (moved && guard++ < 64) {
      moved = false;
      const double cand[4][2] = {{bx + step, by}, {bx - step, by}, {bx, by + step}, {bx, by - step}};
      for (const auto& xy : cand) {
        const double v = h(xy[0], xy[1]);
        if (v > best) {
          best = v;
          bx = xy[0];
          by = xy[1];
          moved = true;
        }
      }
    }
    step *= 0.5;
  }
  est.value = best;
  est.witness = CVec{Complex{bx, 0.0}, Complex{by, 0.0}};
  return est;
}

GammaCoeffs gamma_coeffs(double two_alpha, int kmax) {
  if (!(two_alpha > 0.0)) throw std::invalid_argument("gamma_coeffs: exponent must be positive");
  if (kmax < 0) throw std::invalid_argument("gamma_coeffs: kmax must be >= 0");
  GammaCoeffs g;
  g.two_alpha = two_alpha;
  g.values.resize(static_cast<std::size_t>(kmax) + 1);
  g.values[0] = 1.0;
  for (int k = 1; k <= kmax; ++k)
    g.values[static_cast<std::size_t>(k)] =
        g.values[static_cast<std::size_t>(k - 1)] * (static_cast<double>(k - 1) + two_alpha) /
        static_cast<double>(k);
  return g;
}

AsymptoticsReport coeff_asymptotics(double alpha, int kmax, std::span<const double> a_abs_grid) {
  if (!(alpha > 0.0)) throw std::invalid_argument("coeff_asymptotics: alpha must be positive");
  if (kmax < 1) throw std::invalid_argument("coeff_asymptotics: kmax must be >= 1");
  for (double t : a_abs_grid)
    if (t < 0.0 || t >= 1.0)
      throw std::invalid_argument("coeff_asymptotics: grid point outside [0,1)");

  const GammaCoeffs g = gamma_coeffs(2.0 * alpha, kmax);
  AsymptoticsReport rep;
  rep.alpha = alpha;

  std::vector<double> prefix(g.values.size());
  double run = 0.0;
  for (std::size_t k = 0; k < g.values.size(); ++k) {
    run += g.values[k];
    prefix[k] = run;
  }
  for (int k = 1; k <= kmax; k *= 2)
    rep.sums.push_back({k, prefix[static_cast<std::size_t>(k)],
                        prefix[static_cast<std::size_t>(k)] /
                            std::pow(static_cast<double>(k), 2.0 * alpha)});

  for (double t : a_abs_grid) {
    double sum = 1.0;  // k = 0 term
    double tk = 1.0;
    for (int k = 1; k <= kmax; ++k) {
      tk *= t;
      if (tk == 0.0) break;
      sum += g.values[static_cast<std::size_t>(k)] *
             std::pow(static_cast<double>(k), -alpha) * tk;
    }
    rep.series.push_back({t, ball_weight_r(t, alpha) * sum});
  }
  return rep;
}

}
