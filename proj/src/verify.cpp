#include "ballcomp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "ballcomp/directions.hpp"
#include "ballcomp/geometry.hpp"
#include "ballcomp/testfns.hpp"

namespace ballcomp {
namespace {

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}

  double u01() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }
  double gauss() {
    const double p = std::clamp(u01(), 1e-12, 1.0 - 1e-12);
    return detail::inverse_normal_cdf(p);
  }
};

// Uniform point in the ball of radius rmax (rotation-invariant direction,
// square-root radial profile biased toward the rim).
CVec ball_point(Rng& rng, int dim, double rmax) {
  CVec d(dim);
  double n2 = 0.0;
  do {
    for (int v = 0; v < dim; ++v) d[v] = Complex{rng.gauss(), rng.gauss()};
    n2 = d.norm2();
  } while (!(n2 > 0.0));
  const double s = rmax * std::sqrt(rng.u01()) / std::sqrt(n2);
  for (int v = 0; v < dim; ++v) d[v] *= s;
  return d;
}

Complex unit_disc_coeff(Rng& rng) {
  const double r = std::sqrt(rng.u01());
  const double th = 2.0 * std::numbers::pi * rng.u01();
  return Complex{r * std::cos(th), r * std::sin(th)};
}

void enum_indices(int dim, int budget, MultiIndex& cur, int pos,
                  std::vector<MultiIndex>& out) {
  if (pos == dim) {
    out.push_back(cur);
    return;
  }
  for (int e = 0; e <= budget; ++e) {
    cur.exponents[static_cast<std::size_t>(pos)] = e;
    enum_indices(dim, budget - e, cur, pos + 1, out);
  }
  cur.exponents[static_cast<std::size_t>(pos)] = 0;
}

std::vector<MultiIndex> all_indices(int dim, int max_degree) {
  std::vector<MultiIndex> out;
  MultiIndex cur;
  cur.exponents.assign(static_cast<std::size_t>(dim), 0);
  enum_indices(dim, max_degree, cur, 0, out);
  return out;
}

PolyFn random_poly(Rng& rng, int dim, int max_degree) {
  PolyFn f(dim);
  const std::vector<MultiIndex> idx = all_indices(dim, max_degree);
  for (const MultiIndex& m : idx) f.set_coeff(m, unit_disc_coeff(rng));
  f.scale(Complex{1.0 / static_cast<double>(idx.size()), 0.0});
  return f;
}

PolyMap random_selfmap(Rng& rng, int dim, int max_degree, double shrink,
                       std::uint64_t val_seed) {
  std::vector<PolyFn> comps;
  for (int k = 0; k < dim; ++k)
    comps.push_back(random_poly(rng, dim, max_degree));
  PolyMap m(std::move(comps));
  const SelfMapReport rep = validate_selfmap(m, 0.0, val_seed);
  if (rep.sup > 0.0) m.scale(Complex{shrink / rep.sup, 0.0});
  return m;
}

SearchConfig doubled(const SearchConfig& cfg) {
  SearchConfig d = cfg;
  d.radial_points = cfg.radial_points * 2;
  d.sphere_samples = cfg.sphere_samples * 2;
  d.refine_iters = cfg.refine_iters * 2;
  return d;
}

std::string fmt_point(const CVec& z) {
  std::ostringstream os;
  os.precision(17);
  os << "(";
  for (int v = 0; v < z.dim(); ++v) {
    if (v) os << ", ";
    os << z[v].real() << (z[v].imag() < 0.0 ? "" : "+") << z[v].imag() << "i";
  }
  os << ")";
  return os.str();
}

CVec sub(const CVec& a, const CVec& b) {
  CVec d(a.dim());
  for (int v = 0; v < a.dim(); ++v) d[v] = a[v] - b[v];
  return d;
}

double op_image_norm(const SymbolQuadruple& q, const BatchFn& probe,
                     double beta, const SearchConfig& cfg) {
  return weighted_sup_norm(apply_operator(q, probe), q.dim(), beta, cfg).value;
}

// Suite-local seed derivations; constants are arbitrary distinct tags.
std::uint64_t mix(std::uint64_t seed, std::uint64_t tag) {
  return detail::splitmix64(seed ^ (tag * 0x9e3779b97f4a7c15ULL));
}

}  // namespace

void validate_instance_spec(const InstanceSpec& spec) {
  if (spec.dim < 1 || spec.dim > 6)
    throw std::invalid_argument("instance: dimension outside [1, 6]");
  if (spec.max_degree < 0 || spec.max_degree > 8)
    throw std::invalid_argument("instance: max_degree outside [0, 8]");
  if (!(spec.shrink > 0.0) || !(spec.shrink < 1.0))
    throw std::invalid_argument("instance: shrink outside (0, 1)");
}

SymbolQuadruple random_instance(const InstanceSpec& spec) {
  validate_instance_spec(spec);
  Rng rng(mix(spec.seed, 1));
  PolyFn u = random_poly(rng, spec.dim, spec.max_degree);
  PolyFn v = random_poly(rng, spec.dim, spec.max_degree);
  PolyMap phi =
      random_selfmap(rng, spec.dim, spec.max_degree, spec.shrink, spec.seed);
  PolyMap psi =
      random_selfmap(rng, spec.dim, spec.max_degree, spec.shrink, spec.seed);
  return SymbolQuadruple{std::move(u), std::move(v), std::move(phi),
                         std::move(psi)};
}

PropertyReport lemma21_suite(const InstanceSpec& spec, int trials,
                             const SpaceParams& p, const SearchConfig& cfg) {
  validate_instance_spec(spec);
  validate_space_params(p);
  validate_search_config(cfg, spec.dim);
  if (trials < 1) throw std::invalid_argument("lemma21: trials must be >= 1");

  PropertyReport rep;
  rep.suite = "lemma21";
  rep.trials = trials;

  struct Row {
    int trial;
    const char* family;
    double ratio;
    CVec a, z, w;
  };
  std::vector<Row> rows;
  Rng rng(mix(spec.seed, 21));
  for (int t = 0; t < trials; ++t) {
    const CVec a = ball_point(rng, spec.dim, 0.95);
    const CVec z = ball_point(rng, spec.dim, 0.99);
    const CVec w = ball_point(rng, spec.dim, 0.99);
    const double rho = geometry::pseudo_dist(z, w);
    if (rho < 1e-12) continue;
    const TestFunction f = make_f_a(a, p.alpha);
    const double wz = ball_weight(z.norm2(), p.alpha);
    const double ww = ball_weight(w.norm2(), p.alpha);
    const double lhs_fa =
        std::abs(wz * eval_at(f.fn, z) - ww * eval_at(f.fn, w));
    const double lhs_one = std::abs(wz - ww);
    rows.push_back({t, "point-probe", lhs_fa / rho, a, z, w});
    rows.push_back({t, "constant-one", lhs_one / rho, a, z, w});
  }

  std::vector<double> ratios;
  for (const Row& r : rows) ratios.push_back(r.ratio);
  std::sort(ratios.begin(), ratios.end(), std::greater<double>());
  const std::size_t decile = std::max<std::size_t>(1, ratios.size() / 10);
  const double median_top = ratios.empty() ? 0.0 : ratios[decile / 2];
  const double threshold = 10.0 * median_top;
  for (const Row& r : rows) {
    if (median_top > 0.0 && r.ratio > threshold) {
      std::ostringstream os;
      os.precision(17);
      os << r.family << " ratio " << r.ratio << " exceeds stability bound "
         << threshold << "; a=" << fmt_point(r.a) << " z=" << fmt_point(r.z)
         << " w=" << fmt_point(r.w);
      rep.failures.push_back({spec.seed, r.trial, os.str()});
    }
  }
  rep.empirical_constants.push_back({"C_emp", ratios.empty() ? 0.0 : ratios[0]});
  rep.empirical_constants.push_back({"top_decile_median", median_top});
  rep.empirical_constants.push_back(
      {"rows", static_cast<double>(rows.size())});
  return rep;
}

PropertyReport lemma22_suite(const InstanceSpec& spec, int trials,
                             const SpaceParams& p, const SearchConfig& cfg,
                             double slack, int points_per_instance) {
  validate_instance_spec(spec);
  validate_space_params(p);
  validate_search_config(cfg, spec.dim);
  if (trials < 1) throw std::invalid_argument("lemma22: trials must be >= 1");
  if (!(slack >= 1.0)) throw std::invalid_argument("lemma22: slack must be >= 1");
  if (points_per_instance < 1)
    throw std::invalid_argument("lemma22: points_per_instance must be >= 1");

  PropertyReport rep;
  rep.suite = "lemma22";
  rep.trials = trials;
  double c1 = 0.0, c2 = 0.0, c3 = 0.0;

  for (int i = 0; i < trials; ++i) {
    InstanceSpec si = spec;
    si.seed = spec.seed + static_cast<std::uint64_t>(i);
    const SymbolQuadruple q = random_instance(si);
    Rng rng(mix(si.seed, 22));
    for (int k = 0; k < points_per_instance; ++k) {
      const CVec a = ball_point(rng, spec.dim, 0.95);
      const Complex dphi = d_ratio(q.u, q.phi, p, a);
      const Complex dpsi = d_ratio(q.v, q.psi, p, a);
      const double rho = geometry::pseudo_dist(q.phi.eval(a), q.psi.eval(a));

      const TestFunction f_phi = make_f_a(q.phi.eval(a), p.alpha);
      const TestFunction f_psi = make_f_a(q.psi.eval(a), p.alpha);
      const TestFunction g_fwd = make_g(q, a, p.alpha, true);
      const TestFunction g_bwd = make_g(q, a, p.alpha, false);
      const double n_fphi = op_image_norm(q, f_phi.fn, p.beta, cfg);
      const double n_fpsi = op_image_norm(q, f_psi.fn, p.beta, cfg);
      const double n_gfwd = op_image_norm(q, g_fwd.fn, p.beta, cfg);
      const double n_gbwd = op_image_norm(q, g_bwd.fn, p.beta, cfg);

      struct Side {
        const char* label;
        double lhs;
        double rhs;
        const TestFunction* pf;
        const TestFunction* pg;
      };
      const Side sides[2] = {
          {"first-weight bound", std::abs(dphi) * rho, n_fphi + n_gfwd, &f_phi,
           &g_fwd},
          {"second-weight bound", std::abs(dpsi) * rho, n_fpsi + n_gbwd,
           &f_psi, &g_bwd},
      };
      for (const Side& s : sides) {
        if (s.lhs < 1e-14) continue;
        if (s.lhs <= slack * s.rhs) {
          if (s.rhs > 0.0) {
            const double c = s.lhs / s.rhs;
            if (s.label[0] == 'f')
              c1 = std::max(c1, c);
            else
              c2 = std::max(c2, c);
          }
          continue;
        }
        // Lower-estimate noise or a genuine violation: retry at doubled
        // resolution before recording.
        const SearchConfig cfg2 = doubled(cfg);
        const double rhs2 = op_image_norm(q, s.pf->fn, p.beta, cfg2) +
                            op_image_norm(q, s.pg->fn, p.beta, cfg2);
        if (s.lhs <= slack * rhs2) {
          if (rhs2 > 0.0) {
            const double c = s.lhs / rhs2;
            if (s.label[0] == 'f')
              c1 = std::max(c1, c);
            else
              c2 = std::max(c2, c);
          }
          continue;
        }
        std::ostringstream os;
        os.precision(17);
        os << s.label << " violated: lhs " << s.lhs << " > " << slack
           << " * rhs " << rhs2 << " (first pass rhs " << s.rhs
           << "); instance seed " << si.seed << " point " << fmt_point(a);
        rep.failures.push_back({si.seed, i * points_per_instance + k, os.str()});
      }

      const double lhs3 = std::abs(dphi - dpsi);
      const double rhs3 = n_fphi + n_fpsi + std::min(n_gfwd, n_gbwd);
      if (rhs3 > 0.0) {
        c3 = std::max(c3, lhs3 / rhs3);
      } else if (lhs3 > 1e-10) {
        const SearchConfig cfg2 = doubled(cfg);
        const double rhs3b = op_image_norm(q, f_phi.fn, p.beta, cfg2) +
                             op_image_norm(q, f_psi.fn, p.beta, cfg2) +
                             std::min(op_image_norm(q, g_fwd.fn, p.beta, cfg2),
                                      op_image_norm(q, g_bwd.fn, p.beta, cfg2));
        if (rhs3b <= 0.0) {
          std::ostringstream os;
          os.precision(17);
          os << "difference bound degenerate: lhs " << lhs3
             << " with zero right side; instance seed " << si.seed << " point "
             << fmt_point(a);
          rep.failures.push_back(
              {si.seed, i * points_per_instance + k, os.str()});
        } else {
          c3 = std::max(c3, lhs3 / rhs3b);
        }
      }
    }
  }
  rep.empirical_constants.push_back({"C_i_max", c1});
  rep.empirical_constants.push_back({"C_ii_max", c2});
  rep.empirical_constants.push_back({"C_iii_max", c3});
  return rep;
}

PropertyReport lemma23_suite(const InstanceSpec& spec, int trials,
                             const SpaceParams& p, const SearchConfig& cfg,
                             double slack) {
  validate_instance_spec(spec);
  validate_space_params(p);
  validate_search_config(cfg, spec.dim);
  if (trials < 1) throw std::invalid_argument("lemma23: trials must be >= 1");
  if (!(slack >= 1.0)) throw std::invalid_argument("lemma23: slack must be >= 1");

  const std::vector<int> ladder = {0, 1, 2, 4, 8, 16, 32, 64};
  constexpr double kRadii[] = {0.3, 0.6, 0.9, 0.99, 0.995};

  PropertyReport rep;
  rep.suite = "lemma23";
  rep.trials = trials;
  double c_i = 0.0, c_ii = 0.0, c_iii = 0.0;
  int gated21 = 0, gated22 = 0;

  for (int i = 0; i < trials; ++i) {
    InstanceSpec si = spec;
    si.seed = spec.seed + static_cast<std::uint64_t>(i);
    const SymbolQuadruple q = random_instance(si);
    const CriterionSequence seq = criterion_sequence(q, p, ladder, cfg);
    double sup_b1 = 0.0, sup_b2 = 0.0;
    for (const RatioEstimate& e : seq.b1_seq) sup_b1 = std::max(sup_b1, e.value);
    for (const RatioEstimate& e : seq.b2_seq) sup_b2 = std::max(sup_b2, e.value);

    const PointBatch dirs = unit_directions(spec.dim, 8, si.seed, 5);
    double lhs_f = 0.0, lhs_gf = 0.0, lhs_gb = 0.0;
    for (const double r : kRadii) {
      for (std::size_t d = 0; d < dirs.count; ++d) {
        CVec a = dirs.get(d);
        for (int v = 0; v < spec.dim; ++v) a[v] *= r;
        lhs_f = std::max(
            lhs_f, op_image_norm(q, make_f_a(a, p.alpha).fn, p.beta, cfg));
        lhs_gf = std::max(
            lhs_gf, op_image_norm(q, make_g(q, a, p.alpha, true).fn, p.beta, cfg));
        lhs_gb = std::max(
            lhs_gb,
            op_image_norm(q, make_g(q, a, p.alpha, false).fn, p.beta, cfg));
      }
    }

    const auto check_part = [&](const char* label, double lhs, double rhs,
                                double& c_emp) {
      if (rhs > 0.0) {
        c_emp = std::max(c_emp, lhs / rhs);
        return;
      }
      if (lhs <= 1e-10) return;
      std::ostringstream os;
      os.precision(17);
      os << label << ": left side " << lhs
         << " with zero criterion sup; instance seed " << si.seed;
      rep.failures.push_back({si.seed, i, os.str()});
    };
    check_part("point-probe sup", lhs_f, sup_b1, c_i);

    const ConditionReport cphi = condition_check(q, ConditionSide::Phi, cfg);
    if (!cphi.vacuous && cphi.inf_margin >= 0.1) {
      ++gated21;
      check_part("paired-probe sup (forward)", lhs_gf, sup_b1 + sup_b2, c_ii);
    }
    const ConditionReport cpsi = condition_check(q, ConditionSide::Psi, cfg);
    if (!cpsi.vacuous && cpsi.inf_margin >= 0.1) {
      ++gated22;
      check_part("paired-probe sup (backward)", lhs_gb, sup_b1 + sup_b2, c_iii);
    }
  }
  rep.empirical_constants.push_back({"C_i_max", c_i});
  rep.empirical_constants.push_back({"C_ii_max", c_ii});
  rep.empirical_constants.push_back({"C_iii_max", c_iii});
  rep.empirical_constants.push_back(
      {"gated_forward", static_cast<double>(gated21)});
  rep.empirical_constants.push_back(
      {"gated_backward", static_cast<double>(gated22)});
  return rep;
}

PropertyReport lemma31_suite(const InstanceSpec& spec, int trials,
                             const SpaceParams& p, const SearchConfig& cfg,
                             const std::vector<double>& a_ladder,
                             double slack) {
  validate_instance_spec(spec);
  validate_space_params(p);
  validate_search_config(cfg, spec.dim);
  if (trials < 1) throw std::invalid_argument("lemma31: trials must be >= 1");
  if (!(slack >= 1.0)) throw std::invalid_argument("lemma31: slack must be >= 1");
  if (a_ladder.size() < 2)
    throw std::invalid_argument("lemma31: radius ladder needs >= 2 rungs");
  for (std::size_t i = 0; i < a_ladder.size(); ++i) {
    if (!(a_ladder[i] > 0.0) || !(a_ladder[i] < 1.0))
      throw std::invalid_argument("lemma31: radius outside (0, 1)");
    if (i > 0 && a_ladder[i] <= a_ladder[i - 1])
      throw std::invalid_argument("lemma31: radii must increase");
  }

  const std::vector<int> ladder = {0, 1, 2, 4, 8, 16, 32, 64};

  PropertyReport rep;
  rep.suite = "lemma31";
  rep.trials = trials;
  double c_emp = 0.0, tail_logged = 0.0;

  for (int i = 0; i < trials; ++i) {
    InstanceSpec si = spec;
    si.seed = spec.seed + static_cast<std::uint64_t>(i);
    const SymbolQuadruple q = random_instance(si);
    const CriterionSequence seq = criterion_sequence(q, p, ladder, cfg);
    const int j_min = default_tail_start(ladder);
    const TailStats tail = compactness_tail(seq, j_min);
    double tail_b1 = 0.0;
    for (std::size_t k = 0; k < ladder.size(); ++k)
      if (ladder[k] >= j_min) tail_b1 = std::max(tail_b1, seq.b1_seq[k].value);
    tail_logged = std::max(tail_logged, tail_b1);

    const PointBatch dirs = unit_directions(spec.dim, 8, si.seed, 6);
    std::vector<double> vals;
    for (const double r : a_ladder) {
      double best = 0.0;
      for (std::size_t d = 0; d < dirs.count; ++d) {
        CVec a = dirs.get(d);
        for (int v = 0; v < spec.dim; ++v) a[v] *= r;
        best = std::max(
            best, op_image_norm(q, make_f_a(a, p.alpha).fn, p.beta, cfg));
      }
      vals.push_back(best);
      if (tail_b1 > 0.0) c_emp = std::max(c_emp, best / tail_b1);
    }

    if (tail.verdict == Verdict::CompactIndicated) {
      for (std::size_t k = 0; k + 1 < vals.size(); ++k) {
        if (vals[k + 1] <= slack * vals[k] || vals[k + 1] < 1e-12) continue;
        // Re-measure both rungs at doubled resolution before flagging.
        const SearchConfig cfg2 = doubled(cfg);
        double lo = 0.0, hi = 0.0;
        for (std::size_t d = 0; d < dirs.count; ++d) {
          CVec a1 = dirs.get(d), a2 = dirs.get(d);
          for (int v = 0; v < spec.dim; ++v) {
            a1[v] *= a_ladder[k];
            a2[v] *= a_ladder[k + 1];
          }
          lo = std::max(
              lo, op_image_norm(q, make_f_a(a1, p.alpha).fn, p.beta, cfg2));
          hi = std::max(
              hi, op_image_norm(q, make_f_a(a2, p.alpha).fn, p.beta, cfg2));
        }
        if (hi <= slack * lo || hi < 1e-12) continue;
        std::ostringstream os;
        os.precision(17);
        os << "boundary trend violated on compact-indicated instance: value "
           << hi << " at radius " << a_ladder[k + 1] << " exceeds " << slack
           << " * " << lo << " at radius " << a_ladder[k] << "; instance seed "
           << si.seed;
        rep.failures.push_back({si.seed, i, os.str()});
      }
    }
  }
  rep.empirical_constants.push_back({"C_emp", c_emp});
  rep.empirical_constants.push_back({"tail_b1_max", tail_logged});
  return rep;
}

PropertyReport geometry_suite(const InstanceSpec& spec, int trials) {
  validate_instance_spec(spec);
  if (trials < 1) throw std::invalid_argument("geometry: trials must be >= 1");

  PropertyReport rep;
  rep.suite = "geometry";
  rep.trials = trials;
  double m_fixed = 0.0, m_zero = 0.0, m_invol = 0.0, m_zhu = 0.0, m_sym = 0.0,
         m_rho = 0.0;

  Rng rng(mix(spec.seed, 3));
  for (int t = 0; t < trials; ++t) {
    const CVec a = ball_point(rng, spec.dim, 0.97);
    const CVec b = ball_point(rng, spec.dim, 0.97);
    const CVec z = ball_point(rng, spec.dim, 0.97);
    const CVec w = ball_point(rng, spec.dim, 0.97);

    const double r_fixed = geometry::mobius(a, a).norm();
    const double r_zero = sub(geometry::mobius(a, CVec(spec.dim)), a).norm();
    const double r_invol =
        sub(geometry::mobius(a, geometry::mobius(a, z)), z).norm();
    const double r_zhu = geometry::zhu_identity_residual(a, z, w);
    const double r_sym =
        std::abs(geometry::pseudo_dist(z, w) - geometry::pseudo_dist(w, z));
    const double r_rho =
        std::abs(geometry::pseudo_dist(geometry::mobius(b, z),
                                       geometry::mobius(b, w)) -
                 geometry::pseudo_dist(z, w));
    m_fixed = std::max(m_fixed, r_fixed);
    m_zero = std::max(m_zero, r_zero);
    m_invol = std::max(m_invol, r_invol);
    m_zhu = std::max(m_zhu, r_zhu);
    m_sym = std::max(m_sym, r_sym);
    m_rho = std::max(m_rho, r_rho);

    const struct {
      const char* label;
      double value;
      double tol;
    } checks[] = {
        {"fixed point image", r_fixed, 1e-12},
        {"origin image", r_zero, 1e-12},
        {"involution", r_invol, 1e-10},
        {"product identity residual", r_zhu, 1e-12},
        {"distance symmetry", r_sym, 1e-12},
        {"distance invariance", r_rho, 1e-9},
    };
    for (const auto& c : checks) {
      if (c.value <= c.tol) continue;
      std::ostringstream os;
      os.precision(17);
      os << c.label << " residual " << c.value << " > " << c.tol
         << "; a=" << fmt_point(a) << " b=" << fmt_point(b)
         << " z=" << fmt_point(z) << " w=" << fmt_point(w);
      rep.failures.push_back({spec.seed, t, os.str()});
    }
  }
  rep.empirical_constants.push_back({"max_fixed_point", m_fixed});
  rep.empirical_constants.push_back({"max_origin_image", m_zero});
  rep.empirical_constants.push_back({"max_involution", m_invol});
  rep.empirical_constants.push_back({"max_product_identity", m_zhu});
  rep.empirical_constants.push_back({"max_distance_symmetry", m_sym});
  rep.empirical_constants.push_back({"max_distance_invariance", m_rho});
  return rep;
}

}
