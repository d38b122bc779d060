#pragma once

#include "ballcomp/batch.hpp"
#include "ballcomp/funcmodel.hpp"
#include "ballcomp/geometry.hpp"

namespace ballcomp {

enum class TestKind { FA, GForward, GBackward };

// A norm-one probe together with the data that built it. For the paired
// kinds, degenerate means the two symbol images at the base point were
// pseudo-hyperbolically closer than the threshold and the probe is the zero
// function.
struct TestFunction {
  TestKind kind = TestKind::FA;
  CVec base = CVec(0);
  double alpha = 1.0;
  bool degenerate = false;
  BatchFn fn;
};

// Threshold below which the direction Phi_{phi(a)}(psi(a)) is treated as
// zero and the paired probe degenerates.
inline constexpr double kPairDegenerate = 1e-13;

// z -> (1-|a|^2)^alpha / (1 - <z,a>)^(2 alpha), principal branch. Norm one,
// value 1 at z = a. Requires |a| < 1.
TestFunction make_f_a(const CVec& a, double alpha);

// The paired probe at base point a:
//   g(z) = f_b(z) * <Phi_b(z), m/|m|>,  b = phi(a), m = Phi_b(psi(a))
// for forward = true; swap phi and psi otherwise. Vanishes at b exactly.
TestFunction make_g(const SymbolQuadruple& q, const CVec& a, double alpha, bool forward);

// Weight-ratio transform (1-|z|^2)^beta u(z) / (1-|phi(z)|^2)^alpha.
// Requires |z| < 1 and |phi(z)| < 1.
Complex d_ratio(const PolyFn& u, const PolyMap& phi, const SpaceParams& p, const CVec& z);

struct FlatBounds {
  double lower = 0.0;        // dictionary lower bound for the flat seminorm
  double upper_scale = 0.0;  // pseudo-hyperbolic distance of the two points
};

// Lower-bounds the two-point flat seminorm over unit-norm functions by
// maximizing over a dictionary: the constant one plus f_c for dict_size
// centers on the segment from z to w (both endpoints included).
FlatBounds flat_alpha_bounds(const CVec& z, const CVec& w, double alpha, int dict_size);

}
