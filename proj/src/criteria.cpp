#include "ballcomp/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>

#include "ballcomp/directions.hpp"
#include "ballcomp/geometry.hpp"
#include "ballcomp/testfns.hpp"

namespace ballcomp {
namespace {

// Direction streams. The norm engine owns stream 0; everything here uses
// disjoint streams so refining one search never reshuffles another.
constexpr std::uint64_t kStreamXi = 11;
constexpr std::uint64_t kStreamPair = 12;
constexpr std::uint64_t kStreamAligned = 13;
constexpr std::uint64_t kStreamBallGrid = 3;
constexpr std::uint64_t kStreamPointProbe = 4;

// Radii of the fixed ball grid used by the pointwise checks; the outermost
// shell sits at 0.995.
constexpr double kGridRadii[] = {0.01, 0.05, 0.1, 0.2, 0.3,  0.4,   0.5,  0.6,
                                 0.7,  0.8,  0.9, 0.925, 0.95, 0.975, 0.99, 0.995};

// Radii of the point-probe ladder in the essential bracket.
constexpr double kProbeRadii[] = {0.9, 0.99, 0.995};

// Reduced resolution for ranking candidate directions. The winning
// direction is always re-evaluated at the caller's full resolution.
SearchConfig scan_config(const SearchConfig& cfg, int dim) {
  SearchConfig s = cfg;
  s.radial_points = std::max(16, cfg.radial_points / 2);
  s.sphere_samples = std::max(dim == 1 ? 16 : 64, cfg.sphere_samples / 2);
  s.refine_iters = std::min(cfg.refine_iters, 12);
  return s;
}

CVec unit_e1(int dim) {
  CVec xi(dim);
  xi[0] = Complex{1.0, 0.0};
  return xi;
}

NormEstimate probe_estimate(const SymbolQuadruple& q, int j, const CVec& xi,
                            const CVec* xi2, double beta,
                            const SearchConfig& cfg) {
  std::optional<CVec> extra;
  if (xi2 != nullptr) extra = *xi2;
  return weighted_sup_norm(diff_probe(q, j, xi, extra), q.dim(), beta, cfg);
}

double probe_value(const SymbolQuadruple& q, int j, const CVec& xi,
                   const CVec* xi2, double beta, const SearchConfig& cfg) {
  return probe_estimate(q, j, xi, xi2, beta, cfg).value;
}

// Perturbs one real coordinate of a unit direction and renormalizes.
// A perturbation that cancels the vector is discarded.
bool nudge(const CVec& d, int coord, double h, CVec& out) {
  out = d;
  const int v = coord / 2;
  if (coord % 2 == 0)
    out[v] += Complex{h, 0.0};
  else
    out[v] += Complex{0.0, h};
  const double n = out.norm();
  if (!(n > 0.0)) return false;
  for (int k = 0; k < out.dim(); ++k) out[k] /= n;
  return true;
}

// Steepest-ascent compass over the real coordinates of one or two unit
// directions. Strict improvement only, so ties keep the incumbent and the
// result is deterministic.
template <typename Obj>
void refine_directions(std::vector<CVec*> dirs, double& best, Obj&& obj,
                       int rounds, int guard) {
  int total = 0;
  for (const CVec* d : dirs) total += 2 * d->dim();
  double h = 0.25;
  for (int round = 0; round < rounds; ++round) {
    for (int g = 0; g < guard; ++g) {
      bool moved = false;
      std::vector<CVec> best_dirs;
      for (const CVec* d : dirs) best_dirs.push_back(*d);
      double best_v = best;
      for (int c = 0; c < total; ++c) {
        int which = 0;
        int local = c;
        while (local >= 2 * dirs[static_cast<std::size_t>(which)]->dim()) {
          local -= 2 * dirs[static_cast<std::size_t>(which)]->dim();
          ++which;
        }
        for (const double s : {h, -h}) {
          CVec cand(0);
          if (!nudge(*dirs[static_cast<std::size_t>(which)], local, s, cand))
            continue;
          std::vector<const CVec*> eval_dirs;
          for (int k = 0; k < static_cast<int>(dirs.size()); ++k)
            eval_dirs.push_back(k == which ? &cand
                                           : dirs[static_cast<std::size_t>(k)]);
          const double v = obj(eval_dirs);
          if (v > best_v) {
            best_v = v;
            for (std::size_t k = 0; k < dirs.size(); ++k)
              best_dirs[k] = *eval_dirs[k];
            moved = true;
          }
        }
      }
      if (!moved) break;
      for (std::size_t k = 0; k < dirs.size(); ++k) *dirs[k] = best_dirs[k];
      best = best_v;
    }
    h *= 0.5;
  }
}

// Coarse planar pair norm used only to rank candidate direction pairs; the
// reported denominator always comes from pair_monomial_norm.
double pair_norm_coarse(int j, double alpha, double overlap) {
  overlap = std::clamp(overlap, 0.0, 1.0);
  if (overlap >= 1.0 - 1e-12) return monomial_norm_closed(j + 1, alpha);
  const double c = overlap;
  const double s = std::sqrt((1.0 - c) * (1.0 + c));
  const auto h = [&](double x, double y) {
    const double w = 1.0 - x * x - y * y;
    if (w <= 0.0 || x < 0.0 || y < 0.0) return 0.0;
    const double lin = c * x + s * y;
    if (lin <= 0.0) return 0.0;
    return (j == 0 ? 1.0 : std::pow(x, j)) * lin * std::pow(w, alpha);
  };
  constexpr int G = 48;
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
  for (int round = 0; round < 25 && step > 1e-12; ++round) {
    bool moved = true;
    int g = 0;
    while (moved && g++ < 16) {
      moved = false;
      const double cand[4][2] = {
          {bx + step, by}, {bx - step, by}, {bx, by + step}, {bx, by - step}};
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
  return best;
}

void validate_ladder(const std::vector<int>& ladder, const char* who) {
  if (ladder.empty())
    throw std::invalid_argument(std::string(who) + ": empty degree ladder");
  if (ladder.front() < 0)
    throw std::invalid_argument(std::string(who) + ": negative degree");
  for (std::size_t i = 1; i < ladder.size(); ++i)
    if (ladder[i] <= ladder[i - 1])
      throw std::invalid_argument(std::string(who) +
                                  ": ladder must be strictly increasing");
}

// Least-squares slope of log(value) against log(degree) over the top half
// of the ladder, skipping rungs with degree 0 or a nonpositive value.
// Fewer than two usable rungs give slope 0.
double fit_slope_top_half(const std::vector<int>& js,
                          const std::vector<double>& vals) {
  const std::size_t n = js.size();
  const std::size_t start = n / 2;
  std::vector<double> xs, ys;
  for (std::size_t i = start; i < n; ++i) {
    if (js[i] >= 1 && vals[i] > 0.0) {
      xs.push_back(std::log(static_cast<double>(js[i])));
      ys.push_back(std::log(vals[i]));
    }
  }
  if (xs.size() < 2) return 0.0;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(xs.size());
  my /= static_cast<double>(xs.size());
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (!(sxx > 0.0)) return 0.0;
  return sxy / sxx;
}

PolyFn zero_weight(int dim) { return PolyFn(dim); }

// Growth screen for one single operator, at scan resolution: the screen
// feeds a slope test only, so full-resolution numerators are not needed.
void screen_single(const PolyFn& w, const PolyMap& m, const SpaceParams& p,
                   const SearchConfig& cfg, const std::vector<int>& ladder) {
  SymbolQuadruple single{w, zero_weight(w.dim()), m, m};
  const SearchConfig scfg = scan_config(cfg, w.dim());
  std::vector<double> vals;
  CVec warm(0);
  bool have_warm = false;
  for (const int j : ladder) {
    RatioEstimate e = b1(single, p, j, scfg, have_warm ? &warm : nullptr);
    vals.push_back(e.value);
    warm = e.xi;
    have_warm = true;
  }
  if (fit_slope_top_half(ladder, vals) > 0.05)
    throw std::domain_error("operator pair not in theorem's hypothesis");
}

EssentialBracket bracket_from_seq(const SymbolQuadruple& q,
                                  const SpaceParams& p,
                                  const SearchConfig& cfg,
                                  const CriterionSequence& seq) {
  screen_single(q.u, q.phi, p, cfg, seq.ladder);
  screen_single(q.v, q.psi, p, cfg, seq.ladder);

  EssentialBracket br;
  br.j_min = default_tail_start(seq.ladder);

  double slice_contrib = 0.0;
  double tail_b1 = 0.0, tail_b2 = 0.0;
  for (std::size_t i = 0; i < seq.ladder.size(); ++i) {
    if (seq.ladder[i] < br.j_min) continue;
    tail_b1 = std::max(tail_b1, seq.b1_seq[i].value);
    tail_b2 = std::max(tail_b2, seq.b2_seq[i].value);
    br.probes.push_back(
        {"slice", static_cast<double>(seq.ladder[i]), seq.b1_seq[i].value});
    slice_contrib = std::max(slice_contrib, seq.b1_seq[i].value);
  }
  br.upper_proxy = tail_b1 + tail_b2;

  // Point probes f_a on a radius ladder, maximized over a few base
  // directions per radius.
  const int dim = q.dim();
  const PointBatch dirs = unit_directions(dim, 8, cfg.seed, kStreamPointProbe);
  std::vector<double> ladder_vals;
  for (const double r : kProbeRadii) {
    double best = 0.0;
    for (std::size_t i = 0; i < dirs.count; ++i) {
      CVec a = dirs.get(i);
      for (int v = 0; v < dim; ++v) a[v] *= r;
      const TestFunction f = make_f_a(a, p.alpha);
      const NormEstimate est =
          weighted_sup_norm(apply_operator(q, f.fn), dim, p.beta, cfg);
      best = std::max(best, est.value);
    }
    ladder_vals.push_back(best);
    br.probes.push_back({"point", r, best});
  }

  // A monotone ladder that lost half its starting value vanishes toward
  // the boundary; its fixed-radius values then say nothing about the
  // essential norm and the family contributes 0. Otherwise the boundary
  // value stands in for the |a| -> 1 limit.
  const double v0 = ladder_vals[0], v1 = ladder_vals[1], v2 = ladder_vals[2];
  br.point_family_decayed =
      v2 <= 0.5 * v0 && v1 <= v0 * 1.05 && v2 <= v1 * 1.05;
  const double point_contrib = br.point_family_decayed ? 0.0 : v2;

  br.lower = std::max(slice_contrib, point_contrib);
  return br;
}

}  // namespace

RatioEstimate b1(const SymbolQuadruple& q, const SpaceParams& p, int j,
                 const SearchConfig& cfg, const CVec* warm_xi) {
  require_consistent(q);
  validate_space_params(p);
  validate_search_config(cfg, q.dim());
  if (j < 0) throw std::invalid_argument("b1: negative degree");

  const int dim = q.dim();
  RatioEstimate r;
  r.j = j;
  r.denominator = monomial_norm_closed(j, p.alpha);

  CVec xi = unit_e1(dim);
  if (dim >= 2 && j > 0) {
    const SearchConfig scfg = scan_config(cfg, dim);
    const auto obj = [&](const CVec& d) {
      return probe_value(q, j, d, nullptr, p.beta, scfg);
    };
    const PointBatch cand = unit_directions(dim, 16, cfg.seed, kStreamXi);
    double best = -1.0;
    for (std::size_t i = 0; i < cand.count; ++i) {
      const CVec d = cand.get(i);
      const double v = obj(d);
      if (v > best) {
        best = v;
        xi = d;
      }
    }
    if (warm_xi != nullptr && warm_xi->dim() == dim) {
      const double v = obj(*warm_xi);
      if (v > best) {
        best = v;
        xi = *warm_xi;
      }
    }
    refine_directions(
        {&xi}, best,
        [&](const std::vector<const CVec*>& ds) { return obj(*ds[0]); }, 5, 2);
  }

  const NormEstimate est = probe_estimate(q, j, xi, nullptr, p.beta, cfg);
  r.numerator = est.value;
  r.witness = est.witness;
  r.xi = xi;
  r.value = est.value / r.denominator;
  return r;
}

RatioEstimate b2(const SymbolQuadruple& q, const SpaceParams& p, int j,
                 const SearchConfig& cfg, const CVec* warm_xi,
                 const CVec* warm_xi2) {
  require_consistent(q);
  validate_space_params(p);
  validate_search_config(cfg, q.dim());
  if (j < 0) throw std::invalid_argument("b2: negative degree");

  const int dim = q.dim();
  RatioEstimate r;
  r.j = j;

  CVec xi = unit_e1(dim);
  CVec xi2 = unit_e1(dim);
  if (dim >= 2) {
    const SearchConfig scfg = scan_config(cfg, dim);
    const auto ratio_of = [&](const CVec& d1, const CVec& d2) {
      const double num = probe_value(q, j, d1, &d2, p.beta, scfg);
      const double den = pair_norm_coarse(
          j, p.alpha, std::abs(geometry::inner(d1, d2)));
      return num / den;
    };

    const PointBatch pairs =
        unit_directions(dim, 24, cfg.seed, kStreamPair);
    const PointBatch aligned =
        unit_directions(dim, 6, cfg.seed, kStreamAligned);
    double best = -1.0;
    for (std::size_t k = 0; k + 1 < pairs.count; k += 2) {
      const CVec d1 = pairs.get(k), d2 = pairs.get(k + 1);
      const double v = ratio_of(d1, d2);
      if (v > best) {
        best = v;
        xi = d1;
        xi2 = d2;
      }
    }
    for (std::size_t k = 0; k < aligned.count; ++k) {
      const CVec d = aligned.get(k);
      const double v = ratio_of(d, d);
      if (v > best) {
        best = v;
        xi = d;
        xi2 = d;
      }
    }
    if (warm_xi != nullptr && warm_xi2 != nullptr &&
        warm_xi->dim() == dim && warm_xi2->dim() == dim) {
      const double v = ratio_of(*warm_xi, *warm_xi2);
      if (v > best) {
        best = v;
        xi = *warm_xi;
        xi2 = *warm_xi2;
      }
    }
    refine_directions(
        {&xi, &xi2}, best,
        [&](const std::vector<const CVec*>& ds) {
          return ratio_of(*ds[0], *ds[1]);
        },
        4, 2);
  }

  const double overlap =
      std::clamp(std::abs(geometry::inner(xi, xi2)), 0.0, 1.0);
  const NormEstimate den = pair_monomial_norm(j, p.alpha, overlap, cfg);
  const NormEstimate est = probe_estimate(q, j, xi, &xi2, p.beta, cfg);
  r.numerator = est.value;
  r.denominator = den.value;
  r.witness = est.witness;
  r.xi = xi;
  r.xi2 = xi2;
  r.value = est.value / den.value;
  return r;
}

CriterionSequence criterion_sequence(const SymbolQuadruple& q,
                                     const SpaceParams& p,
                                     const std::vector<int>& ladder,
                                     const SearchConfig& cfg) {
  validate_ladder(ladder, "criterion_sequence");
  CriterionSequence seq;
  seq.ladder = ladder;
  CVec w1(0), w2a(0), w2b(0);
  bool have_warm = false;
  for (const int j : ladder) {
    RatioEstimate e1 = b1(q, p, j, cfg, have_warm ? &w1 : nullptr);
    RatioEstimate e2 = b2(q, p, j, cfg, have_warm ? &w2a : nullptr,
                          have_warm ? &w2b : nullptr);
    w1 = e1.xi;
    w2a = e2.xi;
    w2b = e2.xi2;
    have_warm = true;
    seq.b1_seq.push_back(std::move(e1));
    seq.b2_seq.push_back(std::move(e2));
  }
  return seq;
}

ConditionReport condition_check(const SymbolQuadruple& q, ConditionSide side,
                                const SearchConfig& cfg) {
  require_consistent(q);
  validate_search_config(cfg, q.dim());

  const PolyMap& base_map = side == ConditionSide::Phi ? q.phi : q.psi;
  const PolyMap& other_map = side == ConditionSide::Phi ? q.psi : q.phi;
  const int dim = q.dim();

  ConditionReport rep;
  rep.side = side;
  rep.argmin = CVec(dim);

  const PointBatch dirs = unit_directions(
      dim, static_cast<std::size_t>(cfg.sphere_samples), cfg.seed,
      kStreamBallGrid);
  std::size_t total = 0, degenerate = 0;
  double inf = std::numeric_limits<double>::infinity();
  for (const double r : kGridRadii) {
    for (std::size_t i = 0; i < dirs.count; ++i) {
      CVec a = dirs.get(i);
      for (int v = 0; v < dim; ++v) a[v] *= r;
      const CVec b = base_map.eval(a);
      const CVec o = other_map.eval(a);
      const CVec m = geometry::mobius(b, o);
      ++total;
      const double mn = m.norm();
      if (mn < kPairDegenerate) {
        ++degenerate;
        continue;
      }
      CVec xi_a = m;
      for (int v = 0; v < dim; ++v) xi_a[v] /= mn;
      const double ratio = ball_weight(b.norm2(), 1.0) /
                           std::abs(Complex{1.0, 0.0} - geometry::inner(b, xi_a));
      if (ratio < inf) {
        inf = ratio;
        rep.argmin = a;
      }
    }
  }
  rep.vacuous = degenerate == total;
  rep.inf_margin = inf;
  rep.degenerate_fraction =
      static_cast<double>(degenerate) / static_cast<double>(total);
  return rep;
}

ClassicalIndicators classical_indicators(const SymbolQuadruple& q,
                                         const SpaceParams& p,
                                         const SearchConfig& cfg) {
  require_consistent(q);
  validate_space_params(p);
  validate_search_config(cfg, q.dim());

  const int dim = q.dim();
  ClassicalIndicators ind;
  ind.arg_dphi_rho = CVec(dim);
  ind.arg_dpsi_rho = CVec(dim);
  ind.arg_diff = CVec(dim);

  const PointBatch dirs = unit_directions(
      dim, static_cast<std::size_t>(cfg.sphere_samples), cfg.seed,
      kStreamBallGrid);
  for (const double r : kGridRadii) {
    for (std::size_t i = 0; i < dirs.count; ++i) {
      CVec z = dirs.get(i);
      for (int v = 0; v < dim; ++v) z[v] *= r;
      const Complex dphi = d_ratio(q.u, q.phi, p, z);
      const Complex dpsi = d_ratio(q.v, q.psi, p, z);
      const double rho = geometry::pseudo_dist(q.phi.eval(z), q.psi.eval(z));
      const double s1 = std::abs(dphi) * rho;
      const double s2 = std::abs(dpsi) * rho;
      const double s3 = std::abs(dphi - dpsi);
      if (s1 > ind.sup_dphi_rho) {
        ind.sup_dphi_rho = s1;
        ind.arg_dphi_rho = z;
      }
      if (s2 > ind.sup_dpsi_rho) {
        ind.sup_dpsi_rho = s2;
        ind.arg_dpsi_rho = z;
      }
      if (s3 > ind.sup_diff) {
        ind.sup_diff = s3;
        ind.arg_diff = z;
      }
    }
  }
  return ind;
}

const char* verdict_label(Verdict v) {
  switch (v) {
    case Verdict::CompactIndicated:
      return "compact-indicated";
    case Verdict::BoundedNonCompact:
      return "bounded, non-compact-indicated";
    case Verdict::BoundedInconclusive:
      return "bounded, inconclusive-compactness";
    case Verdict::UnboundedIndicated:
      return "unbounded-indicated";
  }
  return "unknown";
}

int default_tail_start(const std::vector<int>& ladder) {
  validate_ladder(ladder, "default_tail_start");
  const std::size_t n = ladder.size();
  const int anchor = ladder[n >= 4 ? n - 4 : 0];
  return std::min(64, anchor);
}

TailStats compactness_tail(const CriterionSequence& seq, int j_min) {
  validate_ladder(seq.ladder, "compactness_tail");
  if (seq.b1_seq.size() != seq.ladder.size() ||
      seq.b2_seq.size() != seq.ladder.size())
    throw std::invalid_argument("compactness_tail: ragged sequence");

  TailStats ts;
  ts.j_min = j_min;

  std::size_t tail_count = 0;
  double head = 0.0, tail = 0.0;
  bool have_head = false;
  bool all_zero = true;
  std::vector<double> b1_vals;
  for (std::size_t i = 0; i < seq.ladder.size(); ++i) {
    const double v1 = seq.b1_seq[i].value;
    const double v2 = seq.b2_seq[i].value;
    b1_vals.push_back(v1);
    if (v1 != 0.0 || v2 != 0.0) all_zero = false;
    const double rung = std::max(v1, v2);
    if (seq.ladder[i] >= j_min) {
      ++tail_count;
      tail = std::max(tail, rung);
    } else {
      have_head = true;
      head = std::max(head, rung);
    }
  }
  if (tail_count < 4)
    throw std::invalid_argument(
        "compactness_tail: need at least 4 ladder rungs at or beyond j_min");
  ts.tail_max = tail;
  ts.head_max = have_head ? head : tail;

  if (all_zero) {
    ts.verdict = Verdict::CompactIndicated;
    return ts;
  }
  if (ts.tail_max == 0.0) {
    // The tail reached exact zero while the head did not: decayed.
    ts.verdict = Verdict::CompactIndicated;
    return ts;
  }

  ts.slope = fit_slope_top_half(seq.ladder, b1_vals);
  if (ts.slope > 0.05)
    ts.verdict = Verdict::UnboundedIndicated;
  else if (ts.slope < -0.05 && ts.tail_max < 0.5 * ts.head_max)
    ts.verdict = Verdict::CompactIndicated;
  else if (std::abs(ts.slope) <= 0.05 && ts.tail_max >= 0.5 * ts.head_max)
    ts.verdict = Verdict::BoundedNonCompact;
  else
    ts.verdict = Verdict::BoundedInconclusive;
  return ts;
}

EssentialBracket essential_bracket(const SymbolQuadruple& q,
                                   const SpaceParams& p,
                                   const SearchConfig& cfg,
                                   const std::vector<int>& ladder) {
  const CriterionSequence seq = criterion_sequence(q, p, ladder, cfg);
  return bracket_from_seq(q, p, cfg, seq);
}

AnalysisReport boundedness_report(const SymbolQuadruple& q,
                                  const SpaceParams& p,
                                  const SearchConfig& cfg,
                                  const std::vector<int>& ladder) {
  require_consistent(q);
  validate_space_params(p);
  validate_search_config(cfg, q.dim());

  AnalysisReport rep;
  rep.params = p;
  rep.ladder = ladder;
  rep.seq = criterion_sequence(q, p, ladder, cfg);
  rep.cond_phi = condition_check(q, ConditionSide::Phi, cfg);
  rep.cond_psi = condition_check(q, ConditionSide::Psi, cfg);
  rep.conditions_applicable = q.dim() >= 2;
  rep.classical = classical_indicators(q, p, cfg);
  rep.tail = compactness_tail(rep.seq, default_tail_start(ladder));

  if (q.dim() == 1) {
    rep.notes.push_back(
        "single-variable instance: alignment conditions dropped from gating "
        "(phase covariance)");
  } else {
    for (const ConditionReport* c : {&rep.cond_phi, &rep.cond_psi}) {
      const char* name =
          c->side == ConditionSide::Phi ? "first symbol" : "second symbol";
      if (c->vacuous)
        rep.notes.push_back(std::string("alignment condition vacuous for ") +
                            name + ": symbols coincide on the probe grid");
      else if (c->inf_margin < 0.1)
        rep.notes.push_back(std::string("alignment condition margin for ") +
                            name +
                            " below 0.1: necessity gate unsupported");
    }
  }

  try {
    rep.bracket = bracket_from_seq(q, p, cfg, rep.seq);
    rep.bracket_available = true;
    rep.notes.push_back(
        "growth screen applied to both single operators (the usual "
        "hypothesis names only the first; the screen does not guess "
        "which was meant)");
  } catch (const std::domain_error& e) {
    rep.bracket_available = false;
    rep.notes.push_back(std::string("essential bracket skipped: ") + e.what());
  }
  return rep;
}

}
