#include "ballcomp/funcmodel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ballcomp/directions.hpp"
#include "ballcomp/kernels.hpp"
#include "batch_ops.hpp"

namespace ballcomp {

namespace {

// Plain split-complex scalar ops written with the exact operation order of
// the batch kernels, so the scalar eval path reproduces eval_batch bit for
// bit (the build disables fp contraction).
struct C2 {
  double re = 0.0, im = 0.0;
};

C2 c2_mul(C2 a, C2 b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

C2 c2_axpy(C2 y, C2 c, C2 x) {
  return {y.re + (c.re * x.re - c.im * x.im), y.im + (c.re * x.im + c.im * x.re)};
}

void check_unit(const CVec& xi, const char* what) {
  if (std::abs(xi.norm() - 1.0) > 1e-12)
    throw std::invalid_argument(std::string(what) + ": direction is not unit length");
}

}

Complex eval_at(const BatchFn& f, const CVec& z) {
  PointBatch b;
  b.resize(z.dim(), 1);
  b.set(0, z);
  double re = 0.0, im = 0.0;
  f(b, std::span<double>(&re, 1), std::span<double>(&im, 1));
  return {re, im};
}

PolyFn::PolyFn(int dim) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("PolyFn: dimension must be >= 1");
}

PolyFn PolyFn::constant(int dim, Complex c) {
  PolyFn p(dim);
  p.set_coeff(MultiIndex{std::vector<int>(static_cast<std::size_t>(dim), 0)}, c);
  return p;
}

PolyFn PolyFn::coordinate(int dim, int var) {
  if (var < 0 || var >= dim) throw std::invalid_argument("PolyFn::coordinate: variable index");
  PolyFn p(dim);
  MultiIndex m{std::vector<int>(static_cast<std::size_t>(dim), 0)};
  m.exponents[static_cast<std::size_t>(var)] = 1;
  p.set_coeff(m, Complex{1.0, 0.0});
  return p;
}

void PolyFn::set_coeff(const MultiIndex& m, Complex c) {
  if (static_cast<int>(m.exponents.size()) != dim_)
    throw std::invalid_argument("PolyFn::set_coeff: multi-index length mismatch");
  for (int e : m.exponents)
    if (e < 0) throw std::invalid_argument("PolyFn::set_coeff: negative exponent");
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const auto& t, const MultiIndex& k) { return t.first < k; });
  const bool found = it != terms_.end() && it->first == m;
  if (c == Complex{0.0, 0.0}) {
    if (found) terms_.erase(it);
    return;
  }
  if (found)
    it->second = c;
  else
    terms_.insert(it, {m, c});
}

Complex PolyFn::coeff(const MultiIndex& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const auto& t, const MultiIndex& k) { return t.first < k; });
  if (it != terms_.end() && it->first == m) return it->second;
  return {0.0, 0.0};
}

void PolyFn::scale(Complex c) {
  if (c == Complex{0.0, 0.0}) {
    terms_.clear();
    return;
  }
  for (auto& t : terms_) t.second *= c;
}

int PolyFn::max_degree() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.first.total_degree());
  return d;
}

Complex PolyFn::eval(const CVec& z) const {
  if (z.dim() != dim_) throw std::invalid_argument("PolyFn::eval: dimension mismatch");
  C2 acc;
  for (const auto& [m, c] : terms_) {
    C2 mon{1.0, 0.0};
    bool first = true;
    for (int v = 0; v < dim_; ++v) {
      const int e = m.exponents[static_cast<std::size_t>(v)];
      if (e == 0) continue;
      const C2 zv{z[v].real(), z[v].imag()};
      C2 p = zv;
      for (int k = 1; k < e; ++k) p = c2_mul(p, zv);
      mon = first ? p : c2_mul(mon, p);
      first = false;
    }
    acc = c2_axpy(acc, C2{c.real(), c.imag()}, mon);
  }
  return {acc.re, acc.im};
}

void PolyFn::eval_batch(const PointBatch& pts, std::span<double> out_re,
                        std::span<double> out_im) const {
  if (pts.dim != dim_) throw std::invalid_argument("PolyFn::eval_batch: dimension mismatch");
  const std::size_t n = pts.count;
  if (out_re.size() < n || out_im.size() < n)
    throw std::invalid_argument("PolyFn::eval_batch: output span too small");

  std::vector<int> maxdeg(static_cast<std::size_t>(dim_), 0);
  for (const auto& [m, c] : terms_)
    for (int v = 0; v < dim_; ++v)
      maxdeg[static_cast<std::size_t>(v)] =
          std::max(maxdeg[static_cast<std::size_t>(v)], m.exponents[static_cast<std::size_t>(v)]);

  // Power ladders per variable, exponent e stored at slot e-1. Each rung is
  // one extra multiply by the coordinate plane, matching the scalar chain.
  std::vector<std::vector<std::vector<double>>> pw_re(static_cast<std::size_t>(dim_));
  std::vector<std::vector<std::vector<double>>> pw_im(static_cast<std::size_t>(dim_));
  for (int v = 0; v < dim_; ++v) {
    const auto sv = static_cast<std::size_t>(v);
    const int d = maxdeg[sv];
    pw_re[sv].resize(static_cast<std::size_t>(d));
    pw_im[sv].resize(static_cast<std::size_t>(d));
    for (int e = 1; e <= d; ++e) {
      auto& rre = pw_re[sv][static_cast<std::size_t>(e - 1)];
      auto& rim = pw_im[sv][static_cast<std::size_t>(e - 1)];
      rre.resize(n);
      rim.resize(n);
      if (e == 1) {
        rre = pts.re[sv];
        rim = pts.im[sv];
      } else {
        kernels::vc_mul(n, pw_re[sv][static_cast<std::size_t>(e - 2)].data(),
                        pw_im[sv][static_cast<std::size_t>(e - 2)].data(), pts.re[sv].data(),
                        pts.im[sv].data(), rre.data(), rim.data());
      }
    }
  }

  std::fill(out_re.begin(), out_re.begin() + static_cast<std::ptrdiff_t>(n), 0.0);
  std::fill(out_im.begin(), out_im.begin() + static_cast<std::ptrdiff_t>(n), 0.0);
  std::vector<double> mon_re(n), mon_im(n);
  for (const auto& [m, c] : terms_) {
    bool first = true;
    for (int v = 0; v < dim_; ++v) {
      const int e = m.exponents[static_cast<std::size_t>(v)];
      if (e == 0) continue;
      const auto sv = static_cast<std::size_t>(v);
      const auto& pre = pw_re[sv][static_cast<std::size_t>(e - 1)];
      const auto& pim = pw_im[sv][static_cast<std::size_t>(e - 1)];
      if (first) {
        std::copy(pre.begin(), pre.end(), mon_re.begin());
        std::copy(pim.begin(), pim.end(), mon_im.begin());
        first = false;
      } else {
        kernels::vc_mul(n, mon_re.data(), mon_im.data(), pre.data(), pim.data(), mon_re.data(),
                        mon_im.data());
      }
    }
    if (first) {
      std::fill(mon_re.begin(), mon_re.end(), 1.0);
      std::fill(mon_im.begin(), mon_im.end(), 0.0);
    }
    kernels::vc_axpy(n, c.real(), c.imag(), mon_re.data(), mon_im.data(), out_re.data(),
                     out_im.data());
  }
}

PolyMap::PolyMap(std::vector<PolyFn> components) : comps_(std::move(components)) {
  if (comps_.empty()) throw std::invalid_argument("PolyMap: no components");
  const int d = static_cast<int>(comps_.size());
  for (const auto& c : comps_)
    if (c.dim() != d)
      throw std::invalid_argument("PolyMap: component dimension must equal component count");
}

PolyMap PolyMap::identity(int dim) {
  std::vector<PolyFn> cs;
  cs.reserve(static_cast<std::size_t>(dim));
  for (int v = 0; v < dim; ++v) cs.push_back(PolyFn::coordinate(dim, v));
  return PolyMap(std::move(cs));
}

PolyMap PolyMap::constant(const CVec& value) {
  std::vector<PolyFn> cs;
  cs.reserve(static_cast<std::size_t>(value.dim()));
  for (int v = 0; v < value.dim(); ++v) cs.push_back(PolyFn::constant(value.dim(), value[v]));
  return PolyMap(std::move(cs));
}

PolyMap PolyMap::scaled_identity(int dim, Complex c) {
  PolyMap m = identity(dim);
  m.scale(c);
  return m;
}

void PolyMap::scale(Complex c) {
  for (auto& p : comps_) p.scale(c);
}

int PolyMap::max_degree() const {
  int d = 0;
  for (const auto& p : comps_) d = std::max(d, p.max_degree());
  return d;
}

CVec PolyMap::eval(const CVec& z) const {
  CVec r(dim());
  for (int k = 0; k < dim(); ++k) r[k] = comps_[static_cast<std::size_t>(k)].eval(z);
  return r;
}

void PolyMap::eval_batch(const PointBatch& pts, PointBatch& out) const {
  out.resize(dim(), pts.count);
  for (int k = 0; k < dim(); ++k) {
    const auto sk = static_cast<std::size_t>(k);
    comps_[sk].eval_batch(pts, out.re[sk], out.im[sk]);
  }
}

void validate_space_params(const SpaceParams& p) {
  if (!(p.alpha > 0.0) || !(p.beta > 0.0))
    throw std::invalid_argument("space parameters must be positive");
}

void require_consistent(const SymbolQuadruple& q) {
  const int d = q.u.dim();
  if (q.v.dim() != d || q.phi.dim() != d || q.psi.dim() != d)
    throw std::invalid_argument("symbol quadruple: dimension mismatch");
}

namespace {

using detail::dot_against;
using detail::pow_inplace;

bool same_components(const CVec& a, const CVec& b) {
  if (a.dim() != b.dim()) return false;
  for (int k = 0; k < a.dim(); ++k)
    if (a[k] != b[k]) return false;
  return true;
}

}

BatchFn slice_power(const PolyMap& phi, const CVec& xi, int j) {
  if (xi.dim() != phi.dim()) throw std::invalid_argument("slice_power: dimension mismatch");
  if (j < 0) throw std::invalid_argument("slice_power: negative exponent");
  check_unit(xi, "slice_power");
  return [phi, xi, j](const PointBatch& pts, std::span<double> out_re,
                      std::span<double> out_im) {
    PointBatch img;
    phi.eval_batch(pts, img);
    std::vector<double> acc_re, acc_im;
    dot_against(img, xi, acc_re, acc_im);
    pow_inplace(acc_re, acc_im, j);
    std::copy(acc_re.begin(), acc_re.end(), out_re.begin());
    std::copy(acc_im.begin(), acc_im.end(), out_im.begin());
  };
}

BatchFn diff_probe(const SymbolQuadruple& q, int j, const CVec& xi,
                   const std::optional<CVec>& xi2) {
  require_consistent(q);
  if (xi.dim() != q.dim()) throw std::invalid_argument("diff_probe: dimension mismatch");
  if (j < 0) throw std::invalid_argument("diff_probe: negative exponent");
  check_unit(xi, "diff_probe");
  bool fold = false;
  if (xi2) {
    if (xi2->dim() != q.dim()) throw std::invalid_argument("diff_probe: dimension mismatch");
    check_unit(*xi2, "diff_probe");
    fold = same_components(*xi2, xi);
  }
  const int jeff = fold ? j + 1 : j;
  const bool extra = xi2.has_value() && !fold;
  const CVec xi2v = extra ? *xi2 : CVec(q.dim());
  return [q, jeff, xi, extra, xi2v](const PointBatch& pts, std::span<double> out_re,
                                    std::span<double> out_im) {
    const std::size_t n = pts.count;
    PointBatch img;
    std::vector<double> a_re, a_im, b_re, b_im, t_re, t_im, w_re(n), w_im(n);
    q.phi.eval_batch(pts, img);
    dot_against(img, xi, a_re, a_im);
    pow_inplace(a_re, a_im, jeff);
    if (extra) {
      dot_against(img, xi2v, t_re, t_im);
      kernels::vc_mul(n, a_re.data(), a_im.data(), t_re.data(), t_im.data(), a_re.data(),
                      a_im.data());
    }
    q.psi.eval_batch(pts, img);
    dot_against(img, xi, b_re, b_im);
    pow_inplace(b_re, b_im, jeff);
    if (extra) {
      dot_against(img, xi2v, t_re, t_im);
      kernels::vc_mul(n, b_re.data(), b_im.data(), t_re.data(), t_im.data(), b_re.data(),
                      b_im.data());
    }
    q.u.eval_batch(pts, w_re, w_im);
    kernels::vc_mul(n, w_re.data(), w_im.data(), a_re.data(), a_im.data(), out_re.data(),
                    out_im.data());
    q.v.eval_batch(pts, w_re, w_im);
    kernels::vc_mul(n, w_re.data(), w_im.data(), b_re.data(), b_im.data(), b_re.data(),
                    b_im.data());
    for (std::size_t i = 0; i < n; ++i) {
      out_re[i] -= b_re[i];
      out_im[i] -= b_im[i];
    }
  };
}

BatchFn apply_operator(const SymbolQuadruple& q, BatchFn f) {
  require_consistent(q);
  return [q, f = std::move(f)](const PointBatch& pts, std::span<double> out_re,
                               std::span<double> out_im) {
    const std::size_t n = pts.count;
    PointBatch img;
    std::vector<double> f_re(n), f_im(n), w_re(n), w_im(n), g_re(n), g_im(n);
    q.phi.eval_batch(pts, img);
    f(img, f_re, f_im);
    q.u.eval_batch(pts, w_re, w_im);
    kernels::vc_mul(n, w_re.data(), w_im.data(), f_re.data(), f_im.data(), out_re.data(),
                    out_im.data());
    q.psi.eval_batch(pts, img);
    f(img, f_re, f_im);
    q.v.eval_batch(pts, w_re, w_im);
    kernels::vc_mul(n, w_re.data(), w_im.data(), f_re.data(), f_im.data(), g_re.data(),
                    g_im.data());
    for (std::size_t i = 0; i < n; ++i) {
      out_re[i] -= g_re[i];
      out_im[i] -= g_im[i];
    }
  };
}

SelfMapReport validate_selfmap(const PolyMap& phi, double delta_margin, std::uint64_t seed) {
  if (delta_margin < 0.0 || delta_margin >= 1.0)
    throw std::invalid_argument("validate_selfmap: delta_margin outside [0,1)");
  const int n = phi.dim();
  const std::size_t count = n == 1 ? 1024 : 2048;
  PointBatch dirs = unit_directions(n, count, seed, 0x5e1f);
  PointBatch img;
  phi.eval_batch(dirs, img);
  std::vector<double> acc(count, 0.0), tmp(count);
  for (int v = 0; v < n; ++v) {
    const auto sv = static_cast<std::size_t>(v);
    kernels::vc_abs2(count, img.re[sv].data(), img.im[sv].data(), tmp.data());
    for (std::size_t i = 0; i < count; ++i) acc[i] += tmp[i];
  }
  std::size_t arg = 0;
  double best = kernels::vr_max(count, acc.data(), &arg);
  CVec z = dirs.get(arg);

  // Compass polish on the sphere: coordinate steps then renormalize.
  const auto objective = [&phi, n](CVec& p) {
    double s = 1.0 / p.norm();
    for (int v = 0; v < n; ++v) p[v] *= s;
    return phi.eval(p).norm2();
  };
  double h = 0.15;
  for (int round = 0; round < 36; ++round) {
    bool moved = true;
    int guard = 0;
    while (moved && guard++ < 64) {
      moved = false;
      for (int d = 0; d < 2 * n && !moved; ++d) {
        for (double sgn : {1.0, -1.0}) {
          CVec cand = z;
          Complex delta = (d % 2 == 0) ? Complex{sgn * h, 0.0} : Complex{0.0, sgn * h};
          cand[d / 2] += delta;
          const double val = objective(cand);
          if (val > best) {
            best = val;
            z = cand;
            moved = true;
            break;
          }
        }
      }
    }
    h *= 0.5;
  }
  SelfMapReport rep;
  rep.sup = std::sqrt(best);
  rep.witness = z;
  rep.delta_margin = delta_margin;
  rep.pass = rep.sup <= 1.0 - delta_margin + 1e-12;
  return rep;
}

}
