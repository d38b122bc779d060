#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "ballcomp/criteria.hpp"
#include "ballcomp/directions.hpp"
#include "ballcomp/funcmodel.hpp"
#include "ballcomp/norms.hpp"
#include "ballcomp/testfns.hpp"

using namespace ballcomp;

namespace {

PolyFn one_fn(int n) { return PolyFn::constant(n, Complex{1.0, 0.0}); }
PolyFn zero_fn(int n) { return PolyFn(n); }

SymbolQuadruple identity_op(int n) {
  return SymbolQuadruple{one_fn(n), zero_fn(n), PolyMap::identity(n),
                         PolyMap::identity(n)};
}

SymbolQuadruple cancelling_op(int n) {
  const PolyMap half = PolyMap::scaled_identity(n, Complex{0.5, 0.0});
  return SymbolQuadruple{one_fn(n), one_fn(n), half, half};
}

SymbolQuadruple contraction_op(int n) {
  return SymbolQuadruple{one_fn(n), zero_fn(n),
                         PolyMap::scaled_identity(n, Complex{0.5, 0.0}),
                         PolyMap::scaled_identity(n, Complex{0.5, 0.0})};
}

// Synthetic sequence with prescribed b1 values and zero b2.
CriterionSequence synthetic(const std::vector<int>& ladder,
                            const std::vector<double>& vals) {
  CriterionSequence seq;
  seq.ladder = ladder;
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    RatioEstimate e1;
    e1.j = ladder[i];
    e1.value = vals[i];
    seq.b1_seq.push_back(e1);
    RatioEstimate e2;
    e2.j = ladder[i];
    seq.b2_seq.push_back(e2);
  }
  return seq;
}

const std::vector<int> kDefaultLadder = {0, 1, 2, 4, 8, 16, 32, 64, 128, 256};

}  // namespace

TEST_CASE("first criterion is exactly zero for a cancelling pair") {
  const SearchConfig cfg;
  const SymbolQuadruple q = cancelling_op(2);
  const SpaceParams p{1.0, 1.0};
  for (const int j : {0, 1, 4, 16}) {
    const RatioEstimate e = b1(q, p, j, cfg);
    CHECK(e.value == 0.0);
    CHECK(e.numerator == 0.0);
    CHECK(e.denominator > 0.0);
    const RatioEstimate e2 = b2(q, p, j, cfg);
    CHECK(e2.value == 0.0);
  }
}

TEST_CASE("first criterion is one for the identity at equal exponents") {
  const SearchConfig cfg;
  for (const int n : {1, 2}) {
    const SymbolQuadruple q = identity_op(n);
    const SpaceParams p{1.0, 1.0};
    for (const int j : {0, 1, 5, 16}) {
      const RatioEstimate e = b1(q, p, j, cfg);
      CHECK(std::abs(e.value - 1.0) < 1e-6);
      CHECK(e.xi.dim() == n);
      CHECK(e.xi.norm() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(e.witness.dim() == n);
      const RatioEstimate e2 = b2(q, p, j, cfg);
      CHECK(std::abs(e2.value - 1.0) < 1e-6);
    }
  }
}

TEST_CASE("criteria scale linearly with the weights") {
  const SearchConfig cfg;
  PolyFn u(2);
  u.set_coeff(MultiIndex{{1, 0}}, Complex{0.6, 0.2});
  u.set_coeff(MultiIndex{{0, 0}}, Complex{0.3, 0.0});
  PolyFn v(2);
  v.set_coeff(MultiIndex{{0, 1}}, Complex{-0.4, 0.5});
  const PolyMap phi = PolyMap::scaled_identity(2, Complex{0.6, 0.0});
  const PolyMap psi = PolyMap::scaled_identity(2, Complex{-0.5, 0.1});
  const SymbolQuadruple q{u, v, phi, psi};
  const SpaceParams p{1.0, 1.0};

  for (const double lam : {2.0, 3.7}) {
    PolyFn us = u;
    us.scale(Complex{lam, 0.0});
    PolyFn vs = v;
    vs.scale(Complex{lam, 0.0});
    const SymbolQuadruple qs{us, vs, phi, psi};
    for (const int j : {1, 4}) {
      const double base = b1(q, p, j, cfg).value;
      const double scaled = b1(qs, p, j, cfg).value;
      if (lam == 2.0)
        CHECK(scaled == 2.0 * base);
      else
        CHECK(scaled == doctest::Approx(lam * base).epsilon(1e-12));
    }
  }
}

TEST_CASE("second criterion collapses to the first in one variable") {
  const SearchConfig cfg;
  const SpaceParams p{1.0, 1.0};
  PolyFn u(1);
  u.set_coeff(MultiIndex{{0}}, Complex{0.8, -0.1});
  u.set_coeff(MultiIndex{{2}}, Complex{0.2, 0.3});
  PolyFn v(1);
  v.set_coeff(MultiIndex{{1}}, Complex{-0.5, 0.4});
  const SymbolQuadruple q{u, v, PolyMap::scaled_identity(1, Complex{0.7, 0.0}),
                          PolyMap::scaled_identity(1, Complex{0.3, 0.4})};
  for (const int j : {0, 1, 3, 8}) {
    const RatioEstimate two = b2(q, p, j, cfg);
    const RatioEstimate one = b1(q, p, j + 1, cfg);
    CHECK(two.value == one.value);
    CHECK(two.numerator == one.numerator);
    CHECK(two.denominator == one.denominator);
  }
}

TEST_CASE("degree weighted criterion stabilises when exponents differ by one") {
  const SearchConfig cfg;
  const SymbolQuadruple q = identity_op(1);
  const SpaceParams p{1.0, 2.0};
  const double lo = 64.0 * b1(q, p, 64, cfg).value;
  const double hi = 256.0 * b1(q, p, 256, cfg).value;
  CHECK(std::abs(lo - hi) / hi < 0.25);
}

TEST_CASE("criterion sequence mirrors its ladder and warm starts match") {
  const SearchConfig cfg;
  const SymbolQuadruple q = contraction_op(2);
  const SpaceParams p{1.0, 1.0};
  const std::vector<int> ladder = {0, 1, 2, 4, 8};
  const CriterionSequence seq = criterion_sequence(q, p, ladder, cfg);
  REQUIRE(seq.ladder == ladder);
  REQUIRE(seq.b1_seq.size() == ladder.size());
  REQUIRE(seq.b2_seq.size() == ladder.size());
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    CHECK(seq.b1_seq[i].j == ladder[i]);
    // The contraction halves the slice per degree.
    const double expect = std::pow(2.0, -ladder[i]);
    CHECK(std::abs(seq.b1_seq[i].value - expect) / expect < 1e-6);
  }
  CHECK_THROWS_AS((void)criterion_sequence(q, p, {1, 1, 2}, cfg),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)criterion_sequence(q, p, {}, cfg),
                  std::invalid_argument);
}

TEST_CASE("alignment condition distinguishes the probe geometries") {
  const SearchConfig cfg;
  // First map constant zero: its image pins the ratio at exactly one.
  {
    const SymbolQuadruple q{one_fn(1), one_fn(1), PolyMap::constant(CVec(1)),
                            PolyMap::scaled_identity(1, Complex{0.5, 0.0})};
    const ConditionReport rep = condition_check(q, ConditionSide::Phi, cfg);
    CHECK_FALSE(rep.vacuous);
    CHECK(rep.inf_margin == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.degenerate_fraction == 0.0);
  }
  // Coinciding maps leave no direction anywhere.
  {
    const SymbolQuadruple q = cancelling_op(2);
    const ConditionReport rep = condition_check(q, ConditionSide::Phi, cfg);
    CHECK(rep.vacuous);
    CHECK(rep.degenerate_fraction == 1.0);
  }
  // Opposite contractions: ratio is 1 + r/2, minimised at the smallest
  // probe radius 0.01.
  {
    const SymbolQuadruple q{one_fn(1), one_fn(1),
                            PolyMap::scaled_identity(1, Complex{0.5, 0.0}),
                            PolyMap::scaled_identity(1, Complex{-0.5, 0.0})};
    const ConditionReport rep = condition_check(q, ConditionSide::Phi, cfg);
    CHECK_FALSE(rep.vacuous);
    CHECK(rep.inf_margin == doctest::Approx(1.005).epsilon(1e-12));
    CHECK(rep.argmin.norm() == doctest::Approx(0.01).epsilon(1e-12));
  }
}

TEST_CASE("classical indicators vanish exactly for a cancelling pair") {
  const SearchConfig cfg;
  const SymbolQuadruple q = cancelling_op(2);
  const SpaceParams p{1.0, 1.0};
  const ClassicalIndicators ind = classical_indicators(q, p, cfg);
  CHECK(ind.sup_dphi_rho == 0.0);
  CHECK(ind.sup_dpsi_rho == 0.0);
  CHECK(ind.sup_diff == 0.0);
}

TEST_CASE("classical indicators detect a one sided operator") {
  const SearchConfig cfg;
  // Second slot empty, second map at the origin: the gap is |z| and the
  // first weight ratio is identically one.
  const SymbolQuadruple q{one_fn(2), zero_fn(2), PolyMap::identity(2),
                          PolyMap::constant(CVec(2))};
  const SpaceParams p{1.0, 1.0};
  const ClassicalIndicators ind = classical_indicators(q, p, cfg);
  CHECK(ind.sup_dphi_rho >= 0.995);
  CHECK(ind.sup_dphi_rho <= 1.0);
  CHECK(ind.sup_dpsi_rho == 0.0);
  CHECK(ind.sup_diff == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("tail classification follows the decision table") {
  // Flat sequence: bounded but not compact.
  {
    const std::vector<double> v(kDefaultLadder.size(), 1.0);
    const TailStats ts = compactness_tail(synthetic(kDefaultLadder, v), 32);
    CHECK(ts.verdict == Verdict::BoundedNonCompact);
    CHECK(ts.tail_max == 1.0);
    CHECK(ts.head_max == 1.0);
    CHECK(std::abs(ts.slope) < 1e-12);
  }
  // Hyperbolic decay: slope -1, compact.
  {
    std::vector<double> v;
    for (const int j : kDefaultLadder) v.push_back(1.0 / std::max(j, 1));
    const TailStats ts = compactness_tail(synthetic(kDefaultLadder, v), 32);
    CHECK(ts.verdict == Verdict::CompactIndicated);
    CHECK(ts.slope == doctest::Approx(-1.0).epsilon(1e-9));
  }
  // Identically zero: compact without consulting the slope.
  {
    const std::vector<double> v(kDefaultLadder.size(), 0.0);
    const TailStats ts = compactness_tail(synthetic(kDefaultLadder, v), 32);
    CHECK(ts.verdict == Verdict::CompactIndicated);
  }
  // Linear growth: unbounded.
  {
    std::vector<double> v;
    for (const int j : kDefaultLadder) v.push_back(static_cast<double>(std::max(j, 1)));
    const TailStats ts = compactness_tail(synthetic(kDefaultLadder, v), 32);
    CHECK(ts.verdict == Verdict::UnboundedIndicated);
    CHECK(ts.slope == doctest::Approx(1.0).epsilon(1e-9));
  }
  // Mild decay with a heavy tail: no rule fires.
  {
    const std::vector<double> v = {0.6, 0.6,  0.6, 0.6,  0.6,
                                   0.6, 0.5, 0.45, 0.4, 0.35};
    const TailStats ts = compactness_tail(synthetic(kDefaultLadder, v), 32);
    CHECK(ts.verdict == Verdict::BoundedInconclusive);
    CHECK(ts.slope < -0.05);
    CHECK(ts.tail_max >= 0.5 * ts.head_max);
  }
  // Fewer than four tail rungs is a caller error.
  CHECK_THROWS_AS(
      (void)compactness_tail(synthetic({0, 1, 2, 4, 8}, {1, 1, 1, 1, 1}), 2),
      std::invalid_argument);
}

TEST_CASE("tail maximum covers both criterion families") {
  CriterionSequence seq =
      synthetic(kDefaultLadder, std::vector<double>(kDefaultLadder.size(), 0.5));
  seq.b2_seq[9].value = 2.0;  // j = 256
  const TailStats ts = compactness_tail(seq, 32);
  CHECK(ts.tail_max == 2.0);
}

TEST_CASE("default tail start leaves four rungs and caps at sixty four") {
  CHECK(default_tail_start(kDefaultLadder) == 32);
  CHECK(default_tail_start({0, 1, 2, 4, 8, 16, 32, 64}) == 8);
  CHECK(default_tail_start({32, 64, 96, 128, 192, 256, 384, 512}) == 64);
  CHECK(default_tail_start({1, 2, 4}) == 1);
}

TEST_CASE("verdict labels are stable strings") {
  CHECK(std::string(verdict_label(Verdict::CompactIndicated)) ==
        "compact-indicated");
  CHECK(std::string(verdict_label(Verdict::BoundedNonCompact)) ==
        "bounded, non-compact-indicated");
  CHECK(std::string(verdict_label(Verdict::BoundedInconclusive)) ==
        "bounded, inconclusive-compactness");
  CHECK(std::string(verdict_label(Verdict::UnboundedIndicated)) ==
        "unbounded-indicated");
}

TEST_CASE("essential bracket pins the canonical fixtures") {
  const SearchConfig cfg;
  // Cancelling pair: both ends vanish.
  {
    const EssentialBracket br =
        essential_bracket(cancelling_op(2), SpaceParams{1.0, 1.0}, cfg,
                          kDefaultLadder);
    CHECK(br.lower == 0.0);
    CHECK(br.upper_proxy == 0.0);
    CHECK(br.j_min == 32);
  }
  // Identity: flat criteria, bracket [1, 2] up to search slack.
  {
    const EssentialBracket br = essential_bracket(
        identity_op(2), SpaceParams{1.0, 1.0}, cfg, kDefaultLadder);
    CHECK(br.lower >= 1.0 - 1e-6);
    CHECK(br.lower <= br.upper_proxy);
    CHECK(br.upper_proxy == doctest::Approx(2.0).epsilon(1e-6));
    CHECK_FALSE(br.probes.empty());
  }
  // Strict contraction: both ends collapse toward zero.
  {
    const EssentialBracket br = essential_bracket(
        contraction_op(2), SpaceParams{1.0, 1.0}, cfg, kDefaultLadder);
    CHECK(br.lower <= 1e-8);
    CHECK(br.upper_proxy <= 1e-8);
    CHECK(br.point_family_decayed);
  }
  // Mismatched exponents blow up along the ladder: outside the hypothesis.
  {
    CHECK_THROWS_WITH_AS((void)essential_bracket(identity_op(2),
                                                 SpaceParams{1.0, 0.5}, cfg,
                                                 kDefaultLadder),
                         "operator pair not in theorem's hypothesis",
                         std::domain_error);
  }
}

TEST_CASE("criterion value equals the operator norm route at the witness") {
  const SearchConfig cfg;
  PolyFn u(2);
  u.set_coeff(MultiIndex{{0, 0}}, Complex{0.9, 0.0});
  u.set_coeff(MultiIndex{{1, 0}}, Complex{0.1, 0.2});
  PolyFn v(2);
  v.set_coeff(MultiIndex{{0, 0}}, Complex{0.5, -0.3});
  const SymbolQuadruple q{u, v, PolyMap::scaled_identity(2, Complex{0.5, 0.0}),
                          PolyMap::scaled_identity(2, Complex{-0.4, 0.2})};
  const SpaceParams p{1.0, 1.0};
  for (const int j : {1, 4}) {
    const RatioEstimate e = b1(q, p, j, cfg);
    REQUIRE(e.value > 0.0);
    // Push the normalised slice monomial through the operator and search
    // its norm independently; both routes measure the same quantity.
    const double denom = e.denominator;
    BatchFn probe = slice_power(PolyMap::identity(2), e.xi, j);
    BatchFn normalised = [probe, denom](const PointBatch& pts,
                                        std::span<double> re,
                                        std::span<double> im) {
      probe(pts, re, im);
      for (std::size_t i = 0; i < pts.count; ++i) {
        re[i] /= denom;
        im[i] /= denom;
      }
    };
    const NormEstimate via_op =
        weighted_sup_norm(apply_operator(q, normalised), 2, p.beta, cfg);
    CHECK(std::abs(via_op.value - e.value) / e.value < 1e-6);
  }
}

TEST_CASE("full report assembles all gates coherently") {
  SearchConfig cfg;
  cfg.radial_points = 16;
  cfg.sphere_samples = 64;
  cfg.refine_iters = 10;
  const std::vector<int> ladder = {0, 1, 2, 4, 8, 16, 32, 64};

  // Cancelling pair: compact verdict, vacuous conditions, zero bracket.
  {
    const AnalysisReport rep = boundedness_report(
        cancelling_op(2), SpaceParams{1.0, 1.0}, cfg, ladder);
    CHECK(rep.tail.verdict == Verdict::CompactIndicated);
    CHECK(rep.conditions_applicable);
    CHECK(rep.cond_phi.vacuous);
    CHECK(rep.cond_psi.vacuous);
    CHECK(rep.bracket_available);
    CHECK(rep.bracket.lower == 0.0);
    CHECK(rep.bracket.upper_proxy == 0.0);
    bool noted = false;
    for (const auto& n : rep.notes)
      if (n.find("vacuous") != std::string::npos) noted = true;
    CHECK(noted);
  }
  // Single variable: conditions drop out with a note.
  {
    const AnalysisReport rep = boundedness_report(
        identity_op(1), SpaceParams{1.0, 1.0}, cfg, ladder);
    CHECK_FALSE(rep.conditions_applicable);
    CHECK(rep.tail.verdict == Verdict::BoundedNonCompact);
    bool noted = false;
    for (const auto& n : rep.notes)
      if (n.find("single-variable") != std::string::npos) noted = true;
    CHECK(noted);
  }
  // Growing criteria: unbounded verdict and no bracket.
  {
    const AnalysisReport rep = boundedness_report(
        identity_op(2), SpaceParams{1.0, 0.5}, cfg, ladder);
    CHECK(rep.tail.verdict == Verdict::UnboundedIndicated);
    CHECK_FALSE(rep.bracket_available);
    bool noted = false;
    for (const auto& n : rep.notes)
      if (n.find("essential bracket skipped") != std::string::npos) noted = true;
    CHECK(noted);
  }
}
