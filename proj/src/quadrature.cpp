#include "hyptube/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <vector>

#include "hyptube/error.hpp"

namespace hyptube {

namespace {

// Kronrod 15 abscissae on [-1, 1] in order, with Kronrod weights and the
// embedded Gauss 7 weights (zero on Kronrod-only nodes).
struct GK15 {
  std::array<double, 15> x{};
  std::array<double, 15> wk{};
  std::array<double, 15> wg{};

  GK15() {
    constexpr double xk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                              0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                              0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                              0.207784955007898467600689403773245, 0.0};
    constexpr double k[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                             0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                             0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                             0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
    constexpr double g[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                             0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
    for (int i = 0; i < 7; ++i) {
      x[i] = -xk[i];
      x[14 - i] = xk[i];
      wk[i] = wk[14 - i] = k[i];
      const double gw = (i % 2 == 1) ? g[i / 2] : 0.0;
      wg[i] = wg[14 - i] = gw;
    }
    x[7] = 0.0;
    wk[7] = k[7];
    wg[7] = g[3];
  }
};

const GK15& rule() {
  static const GK15 r;
  return r;
}

struct Panel1 {
  double a, b;
  cplx value;
  double err;
  bool operator<(const Panel1& o) const { return err < o.err; }
};

Panel1 gk_panel(const RealIntegrand& f, double a, double b, long& evals) {
  const GK15& R = rule();
  const double m = 0.5 * (a + b), h = 0.5 * (b - a);
  cplx k = 0.0, g = 0.0;
  for (int i = 0; i < 15; ++i) {
    const cplx v = f(m + h * R.x[i]);
    k += R.wk[i] * v;
    g += R.wg[i] * v;
  }
  evals += 15;
  return {a, b, k * h, std::abs((k - g) * h)};
}

bool converged(cplx total, double err, const QuadratureSpec& spec) {
  return err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) fail(ErrorKind::Domain, "quadrature tolerances must be positive");
  if (max_subdivisions < 1) fail(ErrorKind::Domain, "max_subdivisions must be >= 1");
  if (!(truncation_margin > 0.0)) fail(ErrorKind::Domain, "truncation_margin must be positive");
}

QuadratureResult integrate_1d(const RealIntegrand& f, double a, double b, const QuadratureSpec& spec) {
  spec.validate();
  if (!(a < b) || std::isnan(a) || std::isinf(a)) fail(ErrorKind::Domain, "integrate_1d needs finite a < b");

  RealIntegrand g = f;
  double lo = a, hi = b;
  if (std::isinf(b)) {
    g = [&f, a](double s) -> cplx {
      const double d = 1.0 - s;
      return f(a + s / d) / (d * d);
    };
    lo = 0.0;
    hi = 1.0;
  }

  QuadratureResult res;
  std::priority_queue<Panel1> q;
  constexpr int kInitial = 4;
  for (int i = 0; i < kInitial; ++i) {
    q.push(gk_panel(g, lo + (hi - lo) * i / kInitial, lo + (hi - lo) * (i + 1) / kInitial, res.evaluations));
  }
  cplx total = 0.0;
  double err = 0.0;
  auto tally = [&] {
    total = 0.0;
    err = 0.0;
    auto copy = q;
    while (!copy.empty()) {
      total += copy.top().value;
      err += copy.top().err;
      copy.pop();
    }
  };
  tally();
  int splits = 0;
  while (!converged(total, err, spec)) {
    if (splits >= spec.max_subdivisions) {
      throw AccuracyError("integrate_1d: subdivision budget exhausted", total.real(), total.imag(), err);
    }
    const Panel1 worst = q.top();
    q.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel1 l = gk_panel(g, worst.a, mid, res.evaluations);
    const Panel1 r = gk_panel(g, mid, worst.b, res.evaluations);
    total += l.value + r.value - worst.value;
    err += l.err + r.err - worst.err;
    q.push(l);
    q.push(r);
    ++splits;
    // keep the running sums from drifting
    if (splits % 64 == 0) tally();
  }
  tally();
  res.value = total;
  res.error_estimate = err;
  res.truncation_radius = b;
  return res;
}

namespace {

struct Panel2 {
  double r0, r1, p0, p1;
  cplx value;
  double err_r, err_p;
  double err() const { return err_r + err_p; }
  bool operator<(const Panel2& o) const { return err() < o.err(); }
};

}  // namespace

QuadratureResult integrate_hyperbolic(const ScalarField& f, const HPoint& center, double decay_rate,
                                      const QuadratureSpec& spec) {
  spec.validate();
  if (!(decay_rate > 0.0)) fail(ErrorKind::Domain, "integrate_hyperbolic needs a positive decay rate");

  // tail of exp(-k (cosh r - 1)) sinh r beyond R is exp(-k (cosh R - 1)) / k
  const double R = std::acosh(1.0 + spec.truncation_margin / decay_rate);
  const double xc = center.x(), yc = center.y();
  const GK15& G = rule();
  QuadratureResult res;
  res.truncation_radius = R;

  auto eval_panel = [&](double r0, double r1, double p0, double p1) {
    const double mr = 0.5 * (r0 + r1), hr = 0.5 * (r1 - r0);
    const double mp = 0.5 * (p0 + p1), hp = 0.5 * (p1 - p0);
    std::array<std::array<cplx, 15>, 15> F;
    for (int i = 0; i < 15; ++i) {
      const double r = mr + hr * G.x[i];
      const double rho = std::tanh(0.5 * r);
      const double jac = std::sinh(r);
      for (int j = 0; j < 15; ++j) {
        const cplx e = std::polar(rho, mp + hp * G.x[j]);
        const cplx w = cplx(0.0, 1.0) * (1.0 + e) / (1.0 - e);
        // Im w = (1 - rho^2) / |1 - e|^2 exactly
        const double im = (1.0 - rho * rho) / std::norm(1.0 - e);
        F[i][j] = f(HPoint(xc + yc * w.real(), yc * im)) * jac;
      }
    }
    res.evaluations += 225;
    cplx kk = 0.0, gk = 0.0, kg = 0.0;
    for (int i = 0; i < 15; ++i) {
      cplx rowk = 0.0, rowg = 0.0;
      for (int j = 0; j < 15; ++j) {
        rowk += G.wk[j] * F[i][j];
        rowg += G.wg[j] * F[i][j];
      }
      kk += G.wk[i] * rowk;
      gk += G.wg[i] * rowk;
      kg += G.wk[i] * rowg;
    }
    const double s = hr * hp;
    return Panel2{r0, r1, p0, p1, kk * s, std::abs(kk - gk) * s, std::abs(kk - kg) * s};
  };

  std::priority_queue<Panel2> q;
  constexpr int nr = 2, np = 4;
  const double tp = 2.0 * std::numbers::pi;
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < np; ++j)
      q.push(eval_panel(R * i / nr, R * (i + 1) / nr, tp * j / np, tp * (j + 1) / np));

  auto tally = [&](cplx& total, double& err) {
    total = 0.0;
    err = 0.0;
    auto copy = q;
    while (!copy.empty()) {
      total += copy.top().value;
      err += copy.top().err();
      copy.pop();
    }
  };
  cplx total;
  double err;
  tally(total, err);
  int splits = 0;
  while (!converged(total, err, spec)) {
    if (splits >= spec.max_subdivisions) {
      throw AccuracyError("integrate_hyperbolic: subdivision budget exhausted", total.real(), total.imag(), err);
    }
    const Panel2 w = q.top();
    q.pop();
    Panel2 a, b;
    if (w.err_r >= w.err_p) {
      const double m = 0.5 * (w.r0 + w.r1);
      a = eval_panel(w.r0, m, w.p0, w.p1);
      b = eval_panel(m, w.r1, w.p0, w.p1);
    } else {
      const double m = 0.5 * (w.p0 + w.p1);
      a = eval_panel(w.r0, w.r1, w.p0, m);
      b = eval_panel(w.r0, w.r1, m, w.p1);
    }
    total += a.value + b.value - w.value;
    err += a.err() + b.err() - w.err();
    q.push(a);
    q.push(b);
    ++splits;
    if (splits % 64 == 0) tally(total, err);
  }
  tally(total, err);
  res.value = total;
  res.error_estimate = err;
  return res;
}

QuadratureResult integrate_radial(const RealIntegrand& g, double c_decay, const QuadratureSpec& spec) {
  spec.validate();
  if (!(c_decay > 0.0)) fail(ErrorKind::Domain, "integrate_radial needs a positive decay rate");
  double U = 1.0 + spec.truncation_margin / c_decay;
  QuadratureResult res = integrate_1d(g, 1.0, U, spec);
  // the decay certificate ignores polynomial growth of g; extend until the
  // estimated tail is negligible
  for (int k = 0; k < 8; ++k) {
    const double tail = std::abs(g(U)) / c_decay;
    if (tail <= std::max(spec.abs_tol, 1e-3 * spec.rel_tol * std::abs(res.value))) break;
    const double U2 = 1.0 + 2.0 * (U - 1.0);
    QuadratureResult more = integrate_1d(g, U, U2, spec);
    res.value += more.value;
    res.error_estimate += more.error_estimate;
    res.evaluations += more.evaluations;
    U = U2;
  }
  res.truncation_radius = U;
  return res;
}

}  // namespace hyptube
