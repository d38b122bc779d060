#pragma once

#include <string>
#include <vector>

#include "ballcomp/funcmodel.hpp"
#include "ballcomp/norms.hpp"

namespace ballcomp {

// One rung of a degree-indexed boundedness criterion. value is
// numerator / denominator where the numerator is a searched weighted sup
// (a lower bound, see NormEstimate) and the denominator is the exact
// extremal monomial norm for the same degree.
struct RatioEstimate {
  int j = 0;
  double value = 0.0;
  double numerator = 0.0;
  double denominator = 1.0;
  CVec xi = CVec(0);       // maximizing direction for the slice power
  CVec xi2 = CVec(0);      // second direction; dim 0 when the probe has none
  CVec witness = CVec(0);  // ball point attaining the numerator estimate
};

// b1(j): sup over unit xi of ||u <phi,xi>^j - v <psi,xi>^j||_beta divided
// by the norm of z -> <z,xi>^j at weight alpha. When dim == 1 the direction
// is a phase and rotates out, so the single evaluation xi = 1 is exact;
// the same holds at j = 0 in any dimension. warm_xi seeds the direction
// scan; pass the previous rung's winner.
RatioEstimate b1(const SymbolQuadruple& q, const SpaceParams& p, int j,
                 const SearchConfig& cfg, const CVec* warm_xi = nullptr);

// b2(j): same with an extra linear factor <., xi2>, divided by the pair
// norm at the chosen overlap |<xi,xi2>|. With dim == 1 this collapses to
// b1(j+1) since both factors are powers of the one coordinate.
RatioEstimate b2(const SymbolQuadruple& q, const SpaceParams& p, int j,
                 const SearchConfig& cfg, const CVec* warm_xi = nullptr,
                 const CVec* warm_xi2 = nullptr);

struct CriterionSequence {
  std::vector<int> ladder;
  std::vector<RatioEstimate> b1_seq;
  std::vector<RatioEstimate> b2_seq;
};

// Evaluates both criterion families over a strictly increasing degree
// ladder, warm-starting each rung with the previous rung's directions.
CriterionSequence criterion_sequence(const SymbolQuadruple& q,
                                     const SpaceParams& p,
                                     const std::vector<int>& ladder,
                                     const SearchConfig& cfg);

enum class ConditionSide { Phi, Psi };

// Alignment condition for one symbol: at each probe point a, with
// b = map(a) and xi_a the unit direction of the Mobius image of the other
// map's value, the ratio (1 - |b|^2) / |1 - <b, xi_a>| must stay bounded
// away from 0. Probe points where the two images are closer than
// kPairDegenerate give no direction and are skipped.
struct ConditionReport {
  ConditionSide side = ConditionSide::Phi;
  double inf_margin = 0.0;  // +inf when every probe point was degenerate
  CVec argmin = CVec(0);    // probe point attaining the infimum
  double degenerate_fraction = 0.0;
  bool vacuous = false;
};

ConditionReport condition_check(const SymbolQuadruple& q, ConditionSide side,
                                const SearchConfig& cfg);

// Pointwise indicators: each single-operator weight ratio coupled with the
// pseudo-hyperbolic gap of the two symbols, and the sup of the difference
// of the two weight ratios.
struct ClassicalIndicators {
  double sup_dphi_rho = 0.0;
  double sup_dpsi_rho = 0.0;
  double sup_diff = 0.0;
  CVec arg_dphi_rho = CVec(0);
  CVec arg_dpsi_rho = CVec(0);
  CVec arg_diff = CVec(0);
};

ClassicalIndicators classical_indicators(const SymbolQuadruple& q,
                                         const SpaceParams& p,
                                         const SearchConfig& cfg);

enum class Verdict {
  CompactIndicated,
  BoundedNonCompact,
  BoundedInconclusive,
  UnboundedIndicated,
};

const char* verdict_label(Verdict v);

// Tail behaviour of the criterion sequence. slope is the least-squares
// slope of log b1(j) against log j over the top half of the ladder
// (rungs with j >= 1 and b1 > 0 only); head_max / tail_max split the
// ladder at j_min and take the larger of b1 and b2 per rung. At least
// four rungs must lie at or beyond j_min.
struct TailStats {
  int j_min = 0;
  double head_max = 0.0;
  double tail_max = 0.0;
  double slope = 0.0;
  Verdict verdict = Verdict::BoundedInconclusive;
};

// Classification rules, applied in order:
//   every rung exactly 0                            -> compact
//   slope > +0.05                                   -> unbounded
//   slope < -0.05 and tail_max < 0.5 * head_max     -> compact
//   |slope| <= 0.05 and tail_max >= 0.5 * head_max  -> bounded non-compact
//   otherwise                                       -> inconclusive
TailStats compactness_tail(const CriterionSequence& seq, int j_min);

// Degree from which a ladder counts as "tail": the largest rung that
// still leaves four tail rungs, capped at 64.
int default_tail_start(const std::vector<int>& ladder);

// One probe row in the essential-norm bracket.
struct ProbeValue {
  std::string family;      // "slice" or "point"
  double parameter = 0.0;  // degree j, or base radius
  double value = 0.0;
};

// Two-sided essential-norm estimate. lower comes from norm-one test
// functions pushed through the operator; upper_proxy is the tail maximum
// of b1 plus the tail maximum of b2. The point family contributes its
// boundary value only when its radius ladder does not decay; a monotone
// ladder that drops below half its first value marks a family that
// vanishes toward the boundary and contributes nothing.
struct EssentialBracket {
  double lower = 0.0;
  double upper_proxy = 0.0;
  int j_min = 0;
  bool point_family_decayed = false;
  std::vector<ProbeValue> probes;
};

// Throws std::domain_error("operator pair not in theorem's hypothesis")
// when either single operator alone shows unbounded growth over the
// ladder; the bracket is only meaningful when both are bounded.
EssentialBracket essential_bracket(const SymbolQuadruple& q,
                                   const SpaceParams& p,
                                   const SearchConfig& cfg,
                                   const std::vector<int>& ladder);

// Full analysis bundle produced by one analyzer run.
struct AnalysisReport {
  SpaceParams params;
  std::vector<int> ladder;
  CriterionSequence seq;
  ConditionReport cond_phi;
  ConditionReport cond_psi;
  bool conditions_applicable = false;  // false when dim == 1
  ClassicalIndicators classical;
  TailStats tail;
  bool bracket_available = false;
  EssentialBracket bracket;
  std::vector<std::string> notes;
};

// Runs the whole pipeline. Symbols are assumed validated upstream
// (validate_selfmap at analyzer entry); this only re-checks consistency.
AnalysisReport boundedness_report(const SymbolQuadruple& q,
                                  const SpaceParams& p,
                                  const SearchConfig& cfg,
                                  const std::vector<int>& ladder);

}
