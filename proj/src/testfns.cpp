#include "ballcomp/testfns.hpp"

#include <cmath>
#include <stdexcept>

#include "ballcomp/geometry.hpp"
#include "ballcomp/norms.hpp"
#include "batch_ops.hpp"

namespace ballcomp {

namespace {

void require_interior(const CVec& a, const char* what) {
  if (a.norm() >= 1.0) throw std::invalid_argument(std::string(what) + ": point outside open ball");
}

// Fills out with (1-|a|^2)^alpha / (1 - <z,a>)^(2 alpha) over the batch.
// 2 alpha integral takes the exact reciprocal-power path; otherwise the
// principal complex power. On the ball Re(1 - <z,a>) > 0, away from the cut.
void fa_values(const CVec& a, double alpha, const PointBatch& pts, std::span<double> out_re,
               std::span<double> out_im) {
  const std::size_t n = pts.count;
  const double scale = ball_weight(a.norm2(), alpha);
  std::vector<double> w_re(n, 1.0), w_im(n, 0.0);
  for (int v = 0; v < pts.dim; ++v) {
    const auto sv = static_cast<std::size_t>(v);
    kernels::vc_axpy(n, -a[v].real(), a[v].imag(), pts.re[sv].data(), pts.im[sv].data(),
                     w_re.data(), w_im.data());
  }
  const double two_alpha = 2.0 * alpha;
  const int m = static_cast<int>(std::lround(two_alpha));
  if (std::abs(two_alpha - m) < 1e-12 && m >= 1 && m <= 512) {
    detail::pow_inplace(w_re, w_im, m);
    for (std::size_t i = 0; i < n; ++i) {
      const double d = w_re[i] * w_re[i] + w_im[i] * w_im[i];
      out_re[i] = scale * w_re[i] / d;
      out_im[i] = scale * -w_im[i] / d;
    }
    return;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Complex p = std::pow(Complex{w_re[i], w_im[i]}, -two_alpha);
    out_re[i] = scale * p.real();
    out_im[i] = scale * p.imag();
  }
}

}

TestFunction make_f_a(const CVec& a, double alpha) {
  require_interior(a, "make_f_a");
  if (!(alpha > 0.0)) throw std::invalid_argument("make_f_a: alpha must be positive");
  TestFunction t;
  t.kind = TestKind::FA;
  t.base = a;
  t.alpha = alpha;
  t.fn = [a, alpha](const PointBatch& pts, std::span<double> out_re, std::span<double> out_im) {
    fa_values(a, alpha, pts, out_re, out_im);
  };
  return t;
}

TestFunction make_g(const SymbolQuadruple& q, const CVec& a, double alpha, bool forward) {
  require_consistent(q);
  require_interior(a, "make_g");
  if (!(alpha > 0.0)) throw std::invalid_argument("make_g: alpha must be positive");
  const CVec b = forward ? q.phi.eval(a) : q.psi.eval(a);
  const CVec other = forward ? q.psi.eval(a) : q.phi.eval(a);
  if (b.norm() >= 1.0 || other.norm() >= 1.0)
    throw std::invalid_argument("make_g: symbol image outside open ball");

  TestFunction t;
  t.kind = forward ? TestKind::GForward : TestKind::GBackward;
  t.base = a;
  t.alpha = alpha;

  CVec m = geometry::mobius(b, other);
  const double mn = m.norm();
  if (mn < kPairDegenerate) {
    t.degenerate = true;
    t.fn = [](const PointBatch& pts, std::span<double> out_re, std::span<double> out_im) {
      std::fill(out_re.begin(), out_re.begin() + static_cast<std::ptrdiff_t>(pts.count), 0.0);
      std::fill(out_im.begin(), out_im.begin() + static_cast<std::ptrdiff_t>(pts.count), 0.0);
    };
    return t;
  }
  for (int v = 0; v < m.dim(); ++v) m[v] /= mn;

  // g(z) = f_b(z) <Phi_b(z), d>. The inner factor goes through mobius
  // pointwise so g(b) lands on exactly zero.
  t.fn = [b, d = m, alpha](const PointBatch& pts, std::span<double> out_re,
                           std::span<double> out_im) {
    const std::size_t n = pts.count;
    fa_values(b, alpha, pts, out_re, out_im);
    for (std::size_t i = 0; i < n; ++i) {
      const Complex inner = geometry::inner(geometry::mobius(b, pts.get(i)), d);
      const Complex g = Complex{out_re[i], out_im[i]} * inner;
      out_re[i] = g.real();
      out_im[i] = g.imag();
    }
  };
  return t;
}

Complex d_ratio(const PolyFn& u, const PolyMap& phi, const SpaceParams& p, const CVec& z) {
  validate_space_params(p);
  if (z.norm() >= 1.0) throw std::invalid_argument("d_ratio: point outside open ball");
  const CVec img = phi.eval(z);
  const double img2 = img.norm2();
  if (img2 >= 1.0) throw std::domain_error("d_ratio: symbol image outside open ball");
  return ball_weight(z.norm2(), p.beta) * u.eval(z) / ball_weight(img2, p.alpha);
}

FlatBounds flat_alpha_bounds(const CVec& z, const CVec& w, double alpha, int dict_size) {
  if (z.dim() != w.dim()) throw std::invalid_argument("flat_alpha_bounds: dimension mismatch");
  require_interior(z, "flat_alpha_bounds");
  require_interior(w, "flat_alpha_bounds");
  if (!(alpha > 0.0)) throw std::invalid_argument("flat_alpha_bounds: alpha must be positive");
  if (dict_size < 2) throw std::invalid_argument("flat_alpha_bounds: dict_size must be >= 2");

  const double wz = ball_weight(z.norm2(), alpha);
  const double ww = ball_weight(w.norm2(), alpha);
  double lower = std::abs(wz - ww);  // constant-one dictionary member
  for (int i = 0; i < dict_size; ++i) {
    const double tpar = static_cast<double>(i) / static_cast<double>(dict_size - 1);
    CVec c(z.dim());
    for (int v = 0; v < z.dim(); ++v) c[v] = z[v] + tpar * (w[v] - z[v]);
    const TestFunction f = make_f_a(c, alpha);
    const Complex dv = wz * eval_at(f.fn, z) - ww * eval_at(f.fn, w);
    lower = std::max(lower, std::abs(dv));
  }
  return {lower, geometry::pseudo_dist(z, w)};
}

}
