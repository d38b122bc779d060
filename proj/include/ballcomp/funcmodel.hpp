#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "ballcomp/batch.hpp"
#include "ballcomp/geometry.hpp"

namespace ballcomp {

// Exponent vector of one monomial. Entries are >= 0 and the length equals
// the ambient dimension.
struct MultiIndex {
  std::vector<int> exponents;

  int total_degree() const {
    int s = 0;
    for (int e : exponents) s += e;
    return s;
  }

  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
};

// Polynomial C^n -> C stored as a sorted table of (multi-index, coefficient)
// with nonzero coefficients only.
class PolyFn {
 public:
  explicit PolyFn(int dim);
  static PolyFn constant(int dim, Complex c);
  static PolyFn coordinate(int dim, int var);

  int dim() const { return dim_; }
  const std::vector<std::pair<MultiIndex, Complex>>& terms() const { return terms_; }

  // Setting a coefficient to exactly zero removes the term.
  void set_coeff(const MultiIndex& m, Complex c);
  Complex coeff(const MultiIndex& m) const;
  void scale(Complex c);

  int max_degree() const;

  Complex eval(const CVec& z) const;
  void eval_batch(const PointBatch& pts, std::span<double> out_re,
                  std::span<double> out_im) const;

 private:
  int dim_;
  std::vector<std::pair<MultiIndex, Complex>> terms_;
};

// Polynomial self-map candidate C^n -> C^n (componentwise PolyFn).
class PolyMap {
 public:
  explicit PolyMap(std::vector<PolyFn> components);
  static PolyMap identity(int dim);
  static PolyMap constant(const CVec& value);
  static PolyMap scaled_identity(int dim, Complex c);

  int dim() const { return static_cast<int>(comps_.size()); }
  const PolyFn& component(int k) const { return comps_[static_cast<std::size_t>(k)]; }
  PolyFn& component(int k) { return comps_[static_cast<std::size_t>(k)]; }

  void scale(Complex c);
  int max_degree() const;

  CVec eval(const CVec& z) const;
  void eval_batch(const PointBatch& pts, PointBatch& out) const;

 private:
  std::vector<PolyFn> comps_;
};

// Target-space exponents: alpha for the domain space, beta for the codomain.
// Both must be positive.
struct SpaceParams {
  double alpha = 1.0;
  double beta = 1.0;
};

void validate_space_params(const SpaceParams& p);

// Weights and symbols of the operator pair u*C_phi - v*C_psi.
struct SymbolQuadruple {
  PolyFn u, v;
  PolyMap phi, psi;

  int dim() const { return u.dim(); }
};

void require_consistent(const SymbolQuadruple& q);

// z -> <phi(z), xi>^j for a unit direction xi. j >= 0.
BatchFn slice_power(const PolyMap& phi, const CVec& xi, int j);

// z -> u(z)<phi(z),xi>^j - v(z)<psi(z),xi>^j, optionally with one extra
// factor <phi(z),xi2> resp. <psi(z),xi2>. When xi2 equals xi componentwise
// the extra factor is folded into the power so the result coincides bit for
// bit with the plain probe at exponent j+1.
BatchFn diff_probe(const SymbolQuadruple& q, int j, const CVec& xi,
                   const std::optional<CVec>& xi2 = std::nullopt);

// z -> u(z) f(phi(z)) - v(z) f(psi(z)).
BatchFn apply_operator(const SymbolQuadruple& q, BatchFn f);

struct SelfMapReport {
  bool pass = false;
  double sup = 0.0;       // sup of |phi| over the unit sphere (search estimate)
  CVec witness = CVec(0);        // sphere point attaining the estimate
  double delta_margin = 0.0;
};

// Estimates sup_{|z|=1} |phi(z)| by seeded sphere sampling plus local
// refinement; PASS iff the estimate is <= 1 - delta_margin. The sup of a
// polynomial map over the closed ball is attained on the sphere, so a PASS
// certifies a strict self-map whenever delta_margin > 0.
SelfMapReport validate_selfmap(const PolyMap& phi, double delta_margin = 1e-3,
                               std::uint64_t seed = 1);

}
