#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ballcomp/criteria.hpp"
#include "ballcomp/funcmodel.hpp"
#include "ballcomp/norms.hpp"

namespace ballcomp {

// Recipe for one random operator pair. Weight polynomials draw their
// coefficients from the unit disc scaled by the reciprocal term count;
// the symbol maps are rescaled after generation so their validated sup
// equals shrink.
struct InstanceSpec {
  std::uint64_t seed = 1;
  int dim = 1;
  int max_degree = 2;
  double shrink = 0.5;
};

void validate_instance_spec(const InstanceSpec& spec);

// One reproducible failure: the suite seed, the trial index it happened
// in, and a self-contained description of the inputs and both sides.
struct Counterexample {
  std::uint64_t seed = 0;
  int trial = 0;
  std::string detail;
};

struct PropertyReport {
  std::string suite;
  int trials = 0;
  std::vector<Counterexample> failures;
  std::vector<std::pair<std::string, double>> empirical_constants;

  bool pass() const { return failures.empty(); }
};

// Deterministic per spec.seed: the same spec always yields the same
// quadruple, coefficient for coefficient.
SymbolQuadruple random_instance(const InstanceSpec& spec);

// Lipschitz-type stability of the weighted evaluation pairing: over random
// (a, z, w) the two-point difference of (1-|z|^2)^alpha f(z) for the
// norm-one probes (point probe at a, and the constant one) stays within
// C_emp times the pseudo-hyperbolic distance. PASS iff no ratio exceeds
// 10x the median of the top decile; C_emp is logged, never asserted.
PropertyReport lemma21_suite(const InstanceSpec& spec, int trials,
                             const SpaceParams& p, const SearchConfig& cfg);

// Pointwise lower bounds with constant exactly 1 (slack covers search
// under-estimation only): per base point a,
//   |D_phi(a)| rho <= slack * (||T f_{phi(a)}|| + ||T g_fwd||)
// plus the swapped version, and the difference bound with its constant
// logged. A row violating the slack is re-checked at doubled resolution
// before it becomes a counterexample.
PropertyReport lemma22_suite(const InstanceSpec& spec, int trials,
                             const SpaceParams& p, const SearchConfig& cfg,
                             double slack = 1.05, int points_per_instance = 50);

// Uniform-over-base-point bounds against the criterion sups: sup_a of the
// operator image norms compared with sup_j b1 (and + sup_j b2 for the
// paired probes, gated on the alignment conditions). Constants logged;
// a zero right side with a nonzero left side fails after re-check.
PropertyReport lemma23_suite(const InstanceSpec& spec, int trials,
                             const SpaceParams& p, const SearchConfig& cfg,
                             double slack = 1.05);

// Boundary trend of the point-probe family against the criterion tail:
// values along the |a| radius ladder are compared with the tail maximum
// of b1, and must not increase (within slack) for instances whose tail
// classifies as compact. This is a monotone-trend check on a finite
// ladder, not a limit claim.
PropertyReport lemma31_suite(const InstanceSpec& spec, int trials,
                             const SpaceParams& p, const SearchConfig& cfg,
                             const std::vector<double>& a_ladder = {0.9, 0.99,
                                                                    0.995},
                             double slack = 1.05);

// Automorphism identities on random tuples: fixed points, involution,
// the product identity residual, distance symmetry, and automorphism
// invariance of the pseudo-hyperbolic distance, each against a fixed
// tolerance. Max residuals are logged.
PropertyReport geometry_suite(const InstanceSpec& spec, int trials);

}
