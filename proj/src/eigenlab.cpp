#include "hyptube/eigenlab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hyptube/error.hpp"
#include "hyptube/kernel.hpp"
#include "hyptube/quadrature.hpp"

namespace hyptube {

namespace {

constexpr cplx I{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

void require_terms(const EigenSpec& spec) {
  if (spec.terms.empty()) fail(ErrorKind::Domain, "EigenSpec has no terms");
}

}  // namespace

EigenSpec& EigenSpec::add(cplx coeff, const Isometry& iso) {
  terms.push_back({coeff, iso});
  return *this;
}

cplx eval_eigen(const EigenSpec& spec, const HPoint& z) {
  require_terms(spec);
  const double tau = spec.params.tau();
  const cplx a = spec.params.exponent();
  cplx sum = 0.0;
  for (const EigenTerm& term : spec.terms) {
    const Isometry& g = term.iso;
    const cplx num = g.c() * std::conj(z.z()) + g.d();
    const cplx den = g.c() * z.z() + g.d();
    const double im = mobius_apply(g, z).y();
    sum += term.coeff * std::exp(tau * (std::log(num) - std::log(den)) + a * std::log(im));
  }
  return sum;
}

cplx eval_eigen_c(const EigenSpec& spec, const CPoint& P) {
  require_terms(spec);
  const double tau = spec.params.tau();
  const cplx a = spec.params.exponent();
  cplx sum = 0.0;
  for (const EigenTerm& term : spec.terms) {
    const Isometry& g = term.iso;
    const cplx num = g.c() * P.Zt() + g.d();
    const cplx den = g.c() * P.Z() + g.d();
    if (num == cplx(0.0) || den == cplx(0.0)) fail(ErrorKind::Domain, "eval_eigen_c: gauge factor vanishes");
    const CPoint gP = mobius_apply_c(g, P);
    if (!(gP.Y.real() > 0.0)) fail(ErrorKind::Domain, "eval_eigen_c: Re Y(gP) must be positive");
    sum += term.coeff * std::exp(tau * (std::log(num) - std::log(den)) + a * std::log(gP.Y));
  }
  return sum;
}

void SliceSpec::validate() const {
  if (n1 < 1 || n2 < 1) fail(ErrorKind::Domain, "slice resolution must be positive");
  if (kind == Kind::Theta) {
    if (!(t_min >= 0.0 && t_min <= t_max && t_max < 1.0)) {
      fail(ErrorKind::NotInTube, "theta slice: need 0 <= t_min <= t_max < 1");
    }
    return;
  }
  if (!(re_min < re_max && im_min < im_max)) fail(ErrorKind::Domain, "line slice: empty rectangle");
  const int m = 12;
  for (int i = 0; i <= m; ++i) {
    for (int j = 0; j <= m; ++j) {
      const cplx w(re_min + (re_max - re_min) * i / m, im_min + (im_max - im_min) * j / m);
      if (!in_tube(line_point(w), 1.0)) fail(ErrorKind::NotInTube, "line slice leaves the tube");
    }
  }
}

std::vector<GrowthRow> growth_profile(const EigenSpec& spec, const SliceSpec& slice) {
  slice.validate();
  const double tau = spec.params.tau();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<GrowthRow> rows;
  rows.reserve(std::size_t(slice.n1) * slice.n2);
  auto frac = [](int i, int n) { return n == 1 ? 0.0 : double(i) / (n - 1); };
  for (int i = 0; i < slice.n1; ++i) {
    for (int j = 0; j < slice.n2; ++j) {
      GrowthRow r{};
      if (slice.kind == SliceSpec::Kind::Theta) {
        r.t = slice.t_min + (slice.t_max - slice.t_min) * frac(i, slice.n1);
        r.theta = slice.theta_min + (slice.theta_max - slice.theta_min) * frac(j, slice.n2);
        r.P = horocycle_point_c(slice.base, r.theta, r.t);
      } else {
        const cplx w(slice.re_min + (slice.re_max - slice.re_min) * frac(i, slice.n1),
                     slice.im_min + (slice.im_max - slice.im_min) * frac(j, slice.n2));
        r.P = slice.line_point(w);
        const HoroCoords hc = tube_coords_from_point(r.P);
        r.t = hc.t;
        r.theta = hc.theta.value_or(nan);
      }
      r.abs_u_sq = std::norm(eval_eigen_c(spec, r.P));
      r.b0 = std::isnan(r.theta) ? 0.0 : B0(r.t, r.theta);
      r.normalized = std::sqrt(tau) * r.abs_u_sq * std::exp(tau * r.b0);
      r.rate_gap = tau > 0.0 ? std::log(r.abs_u_sq) / tau + r.b0 : nan;
      rows.push_back(r);
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// zero counting

namespace {

struct Grazing {};

// value with |f'/f|, which bounds how fast the phase can turn
struct Sample {
  cplx f;
  double l;
};

class Counter {
 public:
  Counter(const AnalyticFn& f, double graze, int max_depth, double hd)
      : f_(f), graze_(graze), max_depth_(max_depth), hd_(hd) {}

  cplx eval(cplx w) const {
    const cplx v = f_(w);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) fail(ErrorKind::Numerical, "nodal: non-finite value");
    if (v == cplx(0.0)) throw Grazing{};
    return v;
  }

  // grazing is judged by the distance estimate |f/f'|, so functions with a
  // large dynamic range are fine
  Sample sample(cplx w) const {
    const cplx v = eval(w);
    const double l = std::abs(deriv(w, hd_) / v);
    if (std::isnan(l)) fail(ErrorKind::Numerical, "nodal: non-finite derivative");
    if (l * graze_ > 1.0) throw Grazing{};
    return {v, l};
  }

  // arg increment along the segment; a piece is accepted once it turns by
  // less than pi / 4 and its length times |f'/f| at both ends is below 1
  double darg(cplx w0, const Sample& a, cplx w1, const Sample& b, int depth = 0) const {
    const double d = std::arg(b.f / a.f);
    if (std::abs(d) <= kPi / 4.0 && std::abs(w1 - w0) * std::max(a.l, b.l) <= 1.0) return d;
    if (depth > 40) throw Grazing{};
    const cplx wm = 0.5 * (w0 + w1);
    const Sample m = sample(wm);
    return darg(w0, a, wm, m, depth + 1) + darg(wm, m, w1, b, depth + 1);
  }

  double edge(cplx w0, cplx w1, int pieces) const {
    double sum = 0.0;
    cplx a = w0;
    Sample fa = sample(w0);
    for (int k = 1; k <= pieces; ++k) {
      const cplx b = w0 + (w1 - w0) * (double(k) / pieces);
      const Sample fb = sample(b);
      sum += darg(a, fa, b, fb);
      a = b;
      fa = fb;
    }
    return sum;
  }

  int rect_winding(double x0, double x1, double y0, double y1) const {
    const cplx a(x0, y0), b(x1, y0), c(x1, y1), d(x0, y1);
    const double s = edge(a, b, 4) + edge(b, c, 4) + edge(c, d, 4) + edge(d, a, 4);
    return int(std::lround(s / (2.0 * kPi)));
  }

  int circle_winding(cplx c, double r) const {
    constexpr int n = 32;
    double s = 0.0;
    cplx wa = c + r;
    Sample fa = sample(wa);
    for (int k = 1; k <= n; ++k) {
      const cplx wb = c + std::polar(r, 2.0 * kPi * k / n);
      const Sample fb = sample(wb);
      s += darg(wa, fa, wb, fb);
      wa = wb;
      fa = fb;
    }
    return int(std::lround(s / (2.0 * kPi)));
  }

  cplx deriv(cplx w, double h) const {
    return (f_(w + h) - f_(w - h) - I * f_(w + I * h) + I * f_(w - I * h)) / (4.0 * h);
  }

  std::optional<cplx> newton(cplx w, int m, double x0, double x1, double y0, double y1) const {
    const double size = std::max(x1 - x0, y1 - y0);
    const double h = 1e-6 * size;
    for (int it = 0; it < 100; ++it) {
      const cplx fw = f_(w);
      if (fw == cplx(0.0)) break;
      const cplx d = deriv(w, h);
      if (d == cplx(0.0)) return std::nullopt;
      const cplx step = double(m) * fw / d;
      w -= step;
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) return std::nullopt;
      if (std::abs(step) <= 1e-15 * (size + std::abs(w))) break;
    }
    const double pad = 1e-9 * size;
    if (w.real() < x0 - pad || w.real() > x1 + pad || w.imag() < y0 - pad || w.imag() > y1 + pad) return std::nullopt;
    return w;
  }

  void locate(double x0, double x1, double y0, double y1, int m, int depth, std::vector<NodalZero>& out) const {
    if (m == 0) return;
    if (m < 0) fail(ErrorKind::Numerical, "nodal: negative winding (function is not analytic?)");
    const double size = std::max(x1 - x0, y1 - y0);
    if (auto w = newton(cplx(0.5 * (x0 + x1), 0.5 * (y0 + y1)), m, x0, x1, y0, y1)) {
      const double dist = std::min({w->real() - x0, x1 - w->real(), w->imag() - y0, y1 - w->imag()});
      // a zero on the cell boundary makes the windings ambiguous
      if (dist < 1e-6 * size) throw Grazing{};
      {
        const double r = m == 1 ? 0.5 * dist : std::min(0.5 * dist, 0.05 * size);
        try {
          // for m > 1 the circle must see |f| well above the value at the
          // centre, otherwise a cluster could pass for a multiple zero
          const bool settled = m == 1 || std::abs(f_(*w)) <= 1e-6 * std::abs(eval(*w + r));
          if (settled && circle_winding(*w, r) == m) {
            out.push_back({*w, m});
            return;
          }
        } catch (const Grazing&) {
        }
      }
    }
    if (depth >= max_depth_) fail(ErrorKind::Partition, "nodal: could not isolate zeros");
    // off-centre split; shift it if the cut grazes a zero
    static constexpr double fr[] = {0.4863, 0.5291, 0.4417, 0.5713, 0.3961};
    for (double fx : fr) {
      const double xm = x0 + fx * (x1 - x0);
      const double ym = y0 + (1.0 - fx) * (y1 - y0);
      int m00, m10, m01, m11;
      try {
        m00 = rect_winding(x0, xm, y0, ym);
        m10 = rect_winding(xm, x1, y0, ym);
        m01 = rect_winding(x0, xm, ym, y1);
        m11 = rect_winding(xm, x1, ym, y1);
      } catch (const Grazing&) {
        continue;
      }
      if (m00 + m10 + m01 + m11 != m) throw Grazing{};
      locate(x0, xm, y0, ym, m00, depth + 1, out);
      locate(xm, x1, y0, ym, m10, depth + 1, out);
      locate(x0, xm, ym, y1, m01, depth + 1, out);
      locate(xm, x1, ym, y1, m11, depth + 1, out);
      return;
    }
    // left to the caller, which moves the whole grid
    throw Grazing{};
  }

 private:
  const AnalyticFn& f_;
  double graze_;
  int max_depth_;
  double hd_;
};

NodalReport count_once(const AnalyticFn& f, double x0, double x1, double y0, double y1, const NodalSpec& spec) {
  const int N = spec.grid;
  const double hx = (x1 - x0) / N, hy = (y1 - y0) / N;
  std::vector<cplx> F(std::size_t(N + 1) * (N + 1));
  auto node = [&](int i, int j) { return cplx(x0 + i * hx, y0 + j * hy); };
  auto at = [&](int i, int j) -> cplx& { return F[std::size_t(i) * (N + 1) + j]; };
  double fmax = 0.0;
  for (int i = 0; i <= N; ++i)
    for (int j = 0; j <= N; ++j) {
      at(i, j) = f(node(i, j));
      fmax = std::max(fmax, std::abs(at(i, j)));
    }
  if (!(fmax > 0.0) || !std::isfinite(fmax)) fail(ErrorKind::Numerical, "nodal: function vanishes or overflows on the grid");
  const double size = std::max(x1 - x0, y1 - y0);
  const Counter C(f, spec.graze_rel * size, spec.max_depth, 1e-7 * size);
  std::vector<Sample> S(F.size());
  for (int i = 0; i <= N; ++i)
    for (int j = 0; j <= N; ++j) S[std::size_t(i) * (N + 1) + j] = C.sample(node(i, j));
  auto sm = [&](int i, int j) -> const Sample& { return S[std::size_t(i) * (N + 1) + j]; };

  // horizontal edges (i,j)->(i+1,j) and vertical edges (i,j)->(i,j+1)
  std::vector<double> H(std::size_t(N) * (N + 1)), V(std::size_t(N + 1) * N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j <= N; ++j) H[std::size_t(i) * (N + 1) + j] = C.darg(node(i, j), sm(i, j), node(i + 1, j), sm(i + 1, j));
  for (int i = 0; i <= N; ++i)
    for (int j = 0; j < N; ++j) V[std::size_t(i) * N + j] = C.darg(node(i, j), sm(i, j), node(i, j + 1), sm(i, j + 1));

  NodalReport rep;
  rep.area = (x1 - x0) * (y1 - y0);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      const double s = H[std::size_t(i) * (N + 1) + j] + V[std::size_t(i + 1) * N + j] -
                       H[std::size_t(i) * (N + 1) + j + 1] - V[std::size_t(i) * N + j];
      const int m = int(std::lround(s / (2.0 * kPi)));
      if (m == 0) continue;
      rep.total_count += m;
      C.locate(x0 + i * hx, x0 + (i + 1) * hx, y0 + j * hy, y0 + (j + 1) * hy, m, 0, rep.zeros);
    }
  }
  int located = 0;
  for (const NodalZero& z : rep.zeros) located += z.multiplicity;
  if (located != rep.total_count) throw Grazing{};
  std::sort(rep.zeros.begin(), rep.zeros.end(), [](const NodalZero& a, const NodalZero& b) {
    return a.w.real() != b.w.real() ? a.w.real() < b.w.real() : a.w.imag() < b.w.imag();
  });
  return rep;
}

}  // namespace

NodalReport nodal_slice_zeros(const AnalyticFn& f, double re_min, double re_max, double im_min, double im_max,
                              const NodalSpec& spec) {
  if (!(re_min < re_max && im_min < im_max)) fail(ErrorKind::Domain, "nodal: empty region");
  if (spec.grid < 1) fail(ErrorKind::Domain, "nodal: grid must be positive");
  const double cell = std::max(re_max - re_min, im_max - im_min) / spec.grid;
  for (int k = 0; k <= spec.max_jitter; ++k) {
    // retries move every interior grid line by changing the resolution
    const double d = 1e-3 * cell * k;
    NodalSpec sk = spec;
    sk.grid = spec.grid + k;
    try {
      NodalReport r = count_once(f, re_min + d, re_max + d, im_min + 0.7 * d, im_max + 0.7 * d, sk);
      r.area = (re_max - re_min) * (im_max - im_min);
      return r;
    } catch (const Grazing&) {
    }
  }
  fail(ErrorKind::Partition, "nodal: a zero sits on the grid after all jitter attempts");
}

namespace {

double half_b0_neg(const SliceSpec& s, cplx w) {
  const HoroCoords hc = tube_coords_from_point(s.line_point(w));
  if (!hc.theta) return 0.0;
  return -0.5 * B0(hc.t, *hc.theta);
}

void require_line(const SliceSpec& s) {
  if (s.kind != SliceSpec::Kind::Line) fail(ErrorKind::Domain, "B0 density needs a line slice");
  s.validate();
}

}  // namespace

double b0_density_flux(const SliceSpec& s) {
  require_line(s);
  const double L = std::max(s.re_max - s.re_min, s.im_max - s.im_min);
  const double h = 1e-4 * L;
  QuadratureSpec q;
  q.rel_tol = 1e-10;
  q.abs_tol = 1e-13;
  // outward normal derivative on each side, counter-clockwise
  auto side = [&](cplx a, cplx b, cplx normal) {
    auto g = [&](double u) -> cplx {
      const cplx w = a + u * (b - a);
      return (half_b0_neg(s, w + h * normal) - half_b0_neg(s, w - h * normal)) / (2.0 * h) * std::abs(b - a);
    };
    return integrate_1d(g, 0.0, 1.0, q).value.real();
  };
  const cplx c00(s.re_min, s.im_min), c10(s.re_max, s.im_min), c11(s.re_max, s.im_max), c01(s.re_min, s.im_max);
  const double flux = side(c00, c10, -I) + side(c10, c11, 1.0) + side(c11, c01, I) + side(c01, c00, -1.0);
  return flux / (2.0 * kPi);
}

double b0_density_grid(const SliceSpec& s, int n) {
  require_line(s);
  if (n < 2 || n % 2) fail(ErrorKind::Domain, "b0_density_grid needs an even n >= 2");
  const double hx = (s.re_max - s.re_min) / n, hy = (s.im_max - s.im_min) / n;
  const double d = 1e-3 * std::max(s.re_max - s.re_min, s.im_max - s.im_min);
  auto simpson = [n](int k) { return (k == 0 || k == n) ? 1.0 : (k % 2 ? 4.0 : 2.0); };
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      const cplx w(s.re_min + i * hx, s.im_min + j * hy);
      const double lap = (half_b0_neg(s, w + d) + half_b0_neg(s, w - d) + half_b0_neg(s, w + I * d) +
                          half_b0_neg(s, w - I * d) - 4.0 * half_b0_neg(s, w)) /
                         (d * d);
      sum += simpson(i) * simpson(j) * lap;
    }
  }
  return sum * hx * hy / 9.0 / (2.0 * kPi);
}

NodalReport nodal_density_vs_b0(const EigenSpec& spec, const SliceSpec& slice, const NodalSpec& nspec) {
  require_line(slice);
  auto f = [&](cplx w) { return eval_eigen_c(spec, slice.line_point(w)); };
  NodalReport r = nodal_slice_zeros(f, slice.re_min, slice.re_max, slice.im_min, slice.im_max, nspec);
  r.b0_density_integral = b0_density_flux(slice);
  return r;
}

}  // namespace hyptube
