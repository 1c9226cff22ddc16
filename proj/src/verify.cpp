#include "hyptube/verify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "hyptube/eigenlab.hpp"
#include "hyptube/error.hpp"
#include "hyptube/kernel.hpp"
#include "hyptube/quadrature.hpp"
#include "hyptube/transform.hpp"

namespace hyptube {

std::uint64_t Rng::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double Rng::uniform() { return double(next() >> 11) * 0x1.0p-53; }

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx I{0.0, 1.0};

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

double cnorm(const CPoint& P) { return std::sqrt(std::norm(P.X) + std::norm(P.Y)); }

double cdist(const CPoint& P, const CPoint& Q) {
  return std::sqrt(std::norm(P.X - Q.X) + std::norm(P.Y - Q.Y));
}

struct Suite {
  const VerifyOptions& opt;
  Rng rng;
  std::vector<CheckRow> rows;

  explicit Suite(const VerifyOptions& o) : opt(o), rng(o.seed) {}

  double tol(double base) const { return opt.tolerance_override ? *opt.tolerance_override : base * opt.tol_scale; }

  void add(const std::string& id, long n, double err, double base) {
    const double t = tol(base);
    rows.push_back({id, n, err, t, std::isfinite(err) && err <= t});
  }

  HPoint point() { return {rng.uniform(-1.5, 1.5), rng.uniform(0.4, 2.5)}; }
  double angle() { return rng.uniform(0.0, 2.0 * kPi); }

  Isometry iso() {
    const double a = rng.uniform(0.5, 1.5), b = rng.uniform(-1.0, 1.0), c = rng.uniform(-1.0, 1.0);
    return {a, b, c, (1.0 + b * c) / a};
  }

  CPoint tube_point(double tmax = 0.95) { return horocycle_point_c(point(), angle(), rng.uniform(0.01, tmax)); }
};

// ---------------------------------------------------------------------------

void plane_checks(Suite& S) {
  {
    double e = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const Isometry g = S.iso();
      const HPoint z = S.point(), w = S.point();
      e = std::max(e, std::abs(cosh_dist(mobius_apply(g, z), mobius_apply(g, w)) / cosh_dist(z, w) - 1.0));
    }
    S.add("plane.isometry_invariance", 1000, e, 1e-12);
  }
  {
    double e = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const Isometry g1 = S.iso(), g2 = S.iso();
      const HPoint z = S.point();
      const HPoint a = mobius_apply(g1.compose(g2), z), b = mobius_apply(g1, mobius_apply(g2, z));
      e = std::max(e, std::abs(a.z() - b.z()) / std::abs(b.z()));
    }
    S.add("plane.group_law", 1000, e, 1e-12);
  }
  {
    double e = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const CotangentVector xi = psi1(unit_vector(S.point(), S.angle()));
      e = std::max(e, std::abs(magnetic_hamiltonian(1.0, xi) - 0.5));
    }
    S.add("plane.psi1_level_set", 1000, e, 1e-14);
  }
  {
    // F(x, y) a random complex quadratic
    double e = 0.0;
    const int n = 200;
    for (int k = 0; k < n; ++k) {
      cplx c[6];
      for (auto& ci : c) ci = cplx(S.rng.uniform(-1, 1), S.rng.uniform(-1, 1));
      const Isometry g = S.iso();
      const HPoint z0 = S.point();
      const HPoint gz = mobius_apply(g, z0);
      const double X = gz.x(), Y = gz.y();
      const cplx Fx = c[1] + 2.0 * c[3] * X + c[4] * Y, Fy = c[2] + c[4] * X + 2.0 * c[5] * Y;
      const cplx al = -I * Fx, be = -I * Fy;
      const cplx zz = z0.z(), zb = std::conj(zz), cz = g.c() * zz + g.d(), czb = g.c() * zb + g.d();
      const cplx wp = 1.0 / (cz * cz);
      const cplx F1x = Fx * wp.real() + Fy * wp.imag() + g.c() / cz - g.c() / czb;
      const cplx F1y = -Fx * wp.imag() + Fy * wp.real() + I * g.c() / cz + I * g.c() / czb;
      const cplx al1 = -I * F1x, be1 = -I * F1y;
      const cplx lhs = (al * Y + 1.0) * (al * Y + 1.0) + (be * Y) * (be * Y);
      const cplx rhs = (al1 * z0.y() + 1.0) * (al1 * z0.y() + 1.0) + (be1 * z0.y()) * (be1 * z0.y());
      e = std::max(e, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
    }
    S.add("plane.energy_conservation", n, e, 1e-10);
  }
  {
    double e = 0.0;
    for (int k = 0; k < 50; ++k) {
      const SpectralParams sp(S.rng.uniform(0.0, 10.0), S.rng.uniform(0.0, 2.0));
      const cplx a = sp.exponent();
      const ScalarField u = [a](const HPoint& z) { return std::exp(a * std::log(z.y())); };
      const HPoint z = S.point();
      const cplx lhs = apply_D_tau_fd(u, sp.tau(), z);
      const cplx rhs = sp.s() * sp.s() * u(z);
      e = std::max(e, std::abs(lhs - rhs) / std::max(std::abs(u(z)), 1e-300));
    }
    S.add("plane.d_tau_model", 50, e, 1e-6);
  }
}

// ---------------------------------------------------------------------------

void tube_checks(Suite& S) {
  {
    double e = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const Isometry g = S.iso();
      const HPoint z = S.point();
      const CPoint P = S.tube_point();
      const cplx Z = P.Z(), Zt = P.Zt();
      const cplx lhs = (g.act(z.z()) - g.act(Zt)) / (g.act(std::conj(z.z())) - g.act(Z));
      const cplx rhs = (g.c() * std::conj(z.z()) + g.d()) * (g.c() * Z + g.d()) /
                       ((g.c() * z.z() + g.d()) * (g.c() * Zt + g.d())) * (z.z() - Zt) / (std::conj(z.z()) - Z);
      e = std::max(e, rel(lhs, rhs));
      // the single-valued logarithm exponentiates to the same factor
      e = std::max(e, rel(std::exp(log_gauge(mobius_apply(g, z), mobius_apply_c(g, P))), rhs));
    }
    S.add("tube.gauge_isometries", 1000, e, 1e-10);
  }
  {
    double e = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const Isometry g = S.iso(), gi = g.inverse();
      const CPoint P = S.tube_point();
      const CPoint gP = mobius_apply_c(g, P);
      const cplx prod = (g.c() * P.Z() + g.d()) / (g.c() * P.Zt() + g.d()) * (gi.c() * gP.Z() + gi.d()) /
                        (gi.c() * gP.Zt() + gi.d());
      e = std::max(e, std::abs(prod - 1.0));
    }
    S.add("tube.gauge_invert", 1000, e, 1e-10);
  }
  {
    long bad = 0;
    for (int k = 0; k < 10000; ++k) {
      const CPoint P = S.tube_point(0.999);
      if (!(P.Y.real() > std::abs(P.X.imag()))) ++bad;
    }
    for (int k = 0; k < 1000; ++k) {
      const double ix = S.rng.uniform(-2.0, 2.0);
      const CPoint Q{cplx(S.rng.uniform(-1, 1), ix), cplx(std::abs(ix) * S.rng.uniform(0.0, 1.0), S.rng.uniform(-1, 1))};
      if (in_tube(Q, 1.0)) ++bad;
    }
    S.add("tube.rey_screen", 11000, double(bad), 0.0);
  }
  {
    double e = 0.0;
    for (int k = 0; k < 10000; ++k) {
      const HPoint z = S.point();
      const double th = S.angle(), t = S.rng.uniform(1e-3, 0.97);
      const CPoint P = horocycle_point_c(z, th, t);
      const HoroCoords hc = tube_coords_from_point(P);
      e = std::max(e, cdist(horocycle_point_c(hc.base(), *hc.theta, hc.t), P) / cnorm(P));
    }
    S.add("tube.roundtrip", 10000, e, 1e-9);
  }
  {
    long collisions = 0;
    for (int k = 0; k < 10000; ++k) {
      const CPoint P = S.tube_point(), Q = S.tube_point();
      if (cdist(P, Q) <= 1e-7) ++collisions;
    }
    S.add("tube.injectivity", 10000, double(collisions), 0.0);
  }
  {
    double e = 0.0;
    const double h = 1e-7;
    for (int k = 0; k < 20; ++k) {
      const HPoint z = S.point();
      const double x = z.x(), y = z.y();
      auto F = [](double x, double y, double v1, double v2) {
        const double t = std::hypot(v1, v2);
        const CPoint P = t == 0.0 ? CPoint::embed(HPoint(x, y)) : horocycle_point_c(HPoint(x, y), std::atan2(v2, v1), t);
        return Eigen::Vector4d(P.X.real(), P.X.imag(), P.Y.real(), P.Y.imag());
      };
      const Eigen::Vector4d f0 = F(x, y, 0, 0);
      Eigen::Matrix4d J;
      J.col(0) = (F(x + h, y, 0, 0) - F(x - h, y, 0, 0)) / (2 * h);
      J.col(1) = (F(x, y + h, 0, 0) - F(x, y - h, 0, 0)) / (2 * h);
      J.col(2) = (F(x, y, h, 0) - f0) / h;
      J.col(3) = (F(x, y, 0, h) - f0) / h;
      Eigen::Matrix4d ref;
      ref << 1, 0, 0, 0, 0, 0, -y, 0, 0, 1, 0, 0, 0, 0, 0, -y;
      e = std::max(e, (J - ref).cwiseAbs().maxCoeff());
    }
    S.add("tube.jacobian_v0", 20, e, 1e-5);
  }
  {
    double e = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const CPoint P = S.tube_point(0.9);
      const Isometry g = S.iso();
      e = std::max(e, std::abs(tube_coords_from_point(mobius_apply_c(g, P)).t - tube_coords_from_point(P).t));
    }
    S.add("tube.t_isometry_invariance", 1000, e, 1e-9);
  }
  {
    double e = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const Isometry g = S.iso();
      const CPoint P = S.tube_point();
      const CPoint gP = mobius_apply_c(g, P);
      e = std::max({e, rel(gP.Z(), g.act(P.Z())), rel(gP.Zt(), g.act(P.Zt()))});
    }
    S.add("tube.mobius_c_scalar", 1000, e, 1e-12);
  }
  {
    double e = 0.0;
    for (int k = 0; k < 200; ++k) {
      const HPoint z = S.point();
      const double th = S.angle(), t = S.rng.uniform(-3.0, 3.0), h = 1e-5;
      const HPoint a = horocycle_point(z, th, t + h), b = horocycle_point(z, th, t - h), m = horocycle_point(z, th, t);
      e = std::max(e, std::abs(std::abs(a.z() - b.z()) / (2 * h) / m.y() - 1.0));
    }
    S.add("tube.horocycle_speed", 200, e, 1e-6);
  }
  {
    double e = 0.0;
    const HPoint i(0.0, 1.0);
    for (int k = 0; k < 50; ++k) {
      const double t = S.rng.uniform(0.0, 0.99);
      const CPoint a = horocycle_point_c(i, kPi, t);
      e = std::max({e, std::abs(a.X - cplx(0, t)), std::abs(a.Y - 1.0)});
      const CPoint b = horocycle_point_c(i, 0.0, t);
      e = std::max({e, std::abs(b.X - cplx(0, -t / (1 - t * t))), std::abs(b.Y - 1.0 / (1 - t * t))});
      const HPoint z = S.point();
      const double th = S.angle(), c = std::cos(th), t2 = t * t, t4 = t2 * t2;
      const double rex = z.x() + z.y() * (t4 - 2 * t2 + (t4 - 4 * t2) * c) * std::sin(th) /
                                     (t4 + (t4 - 4 * t2) * c * c + 2 * (t4 - 2 * t2) * c + 4);
      e = std::max(e, std::abs(horocycle_point_c(z, th, t).X.real() - rex));
      if (t > 1e-3) {
        const HoroCoords hc = tube_coords_from_point(a);
        e = std::max({e, std::abs(hc.x), std::abs(hc.y - 1.0), std::abs(hc.t - t), std::abs(*hc.theta - kPi)});
      }
    }
    const HoroCoords r = tube_coords_from_point(CPoint::embed(HPoint(0.3, 1.7)));
    if (r.theta || r.t != 0.0) e = 1.0;
    const HPoint h1 = horocycle_point(i, kPi, 1.0);
    e = std::max(e, std::abs(h1.z() - cplx(-1.0, 1.0)));
    S.add("tube.anchors", 50, e, 1e-12);
  }
}

// ---------------------------------------------------------------------------

void kernel_checks(Suite& S) {
  {
    double e = 0.0;
    for (int k = 0; k < 200; ++k) {
      const HPoint z = S.point();
      const double t = S.rng.uniform(0.05, 0.95), th = S.angle();
      const MaximizerResult m = kernel_max(z, t, t, th);
      e = std::max(e, cdist(m.Q, horocycle_point_c(z, th, t)));
    }
    S.add("kernel.maximizer_diagonal", 200, e, 1e-8);
  }
  {
    long viol = 0, n = 0;
    for (int c = 0; c < 5; ++c) {
      const HPoint z = S.point();
      const double t = S.rng.uniform(0.1, 0.9), th = S.angle();
      const double top = phi_diagonal(t, th);
      const HoroFrame fr = horocycle_frame(th, t);
      for (int k = 0; k < 1000; ++k, ++n) {
        // probes within hyperbolic distance ~2 of z
        const double r = S.rng.uniform(1e-3, 2.0), a = S.angle();
        const double rho = std::tanh(r / 2);
        const cplx e = std::polar(rho, a);
        const cplx w = I * (1.0 + e) / (1.0 - e);
        const HPoint wp(z.x() + z.y() * w.real(), z.y() * w.imag());
        if (log_kernel(z, fr.at(wp), t).phi.real() > top + 1e-12) ++viol;
      }
    }
    S.add("kernel.global_max", n, double(viol), 0.0);
  }
  {
    double worst = -1e300;
    for (int k = 0; k < 100; ++k) {
      const double t = S.rng.uniform(0.15, 0.85);
      const double eta = t + S.rng.uniform(-0.1, 0.1);
      const MaximizerResult m = kernel_max(S.point(), t, eta, S.angle());
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(m.hessian);
      worst = std::max(worst, es.eigenvalues().maxCoeff());
    }
    S.add("kernel.hessian_negative", 100, worst, 0.0);
  }
  {
    double e = 0.0;
    for (int i = 0; i < 20; ++i)
      for (int j = 0; j < 20; ++j) {
        const double t = 0.04 + 0.92 * i / 19.0, th = 2.0 * kPi * j / 20.0;
        e = std::max(e, std::abs(phi_max(t, t, th) - phi_diagonal(t, th)));
      }
    S.add("kernel.phitt_grid", 400, e, 1e-8);
  }
  {
    double e = 0.0;
    for (int k = 0; k < 60; ++k) {
      const double t = S.rng.uniform(0.2, 0.8), eta = t + S.rng.uniform(-0.05, 0.05), th = S.angle();
      e = std::max(e, std::abs(phi_max(t, eta, th) - phi_max(t, eta, kPi) + 0.5 * B0(t, th)));
    }
    S.add("kernel.b0_shift", 60, e, 1e-8);
  }
  {
    double e1 = 0.0, e2 = 0.0, e3 = 0.0;
    for (double t : {0.3, 0.5, 0.7}) {
      auto f = [t](double e) { return phi_max(e, e, kPi) - phi_max(t, e, kPi); };
      // Richardson-extrapolated central differences
      auto d1 = [&](double h) { return (f(t + h) - f(t - h)) / (2 * h); };
      auto d2 = [&](double h) { return (f(t + h) - 2 * f(t) + f(t - h)) / (h * h); };
      const double h = 2e-3;
      const double fp = (4 * d1(h / 2) - d1(h)) / 3, fpp = (4 * d2(h / 2) - d2(h)) / 3;
      e1 = std::max(e1, std::abs(fp));
      e2 = std::max(e2, std::abs(fpp - (3 * t * t - 4) / (t * (t * t * t * t - 3 * t * t + 4))));
      auto y = [t](double e) { return kernel_max(HPoint(0, 1), t, e, kPi).basepoint.y(); };
      const double hy = 1e-4;
      const double dy = (y(t + hy) - y(t - hy)) / (2 * hy);
      e3 = std::max(e3, std::abs(dy + t * (4 - 3 * t * t) / (2 * (4 - 3 * t * t + t * t * t * t))));
      e3 = std::max(e3, std::abs(kernel_max(HPoint(0, 1), t, t + 0.07, kPi).basepoint.x()));
    }
    S.add("kernel.f_prime", 3, e1, 1e-6);
    S.add("kernel.f_second", 3, e2, 1e-4);
    S.add("kernel.dy_deta", 3, e3, 1e-4);
  }
  {
    double e = 0.0;
    for (int k = 0; k < 100; ++k) {
      const HPoint z = S.point();
      const double t = S.rng.uniform(0.1, 0.9), th = S.angle();
      const CotangentVector xi = t_map(z, t, t, th);
      e = std::max({e, std::abs(xi.xi1 + (1 + std::cos(th)) / z.y()), std::abs(xi.xi2 + std::sin(th) / z.y()),
                    std::abs(magnetic_hamiltonian(-1.0, xi) - 0.5)});
    }
    S.add("kernel.t_map_level_set", 100, e, 1e-10);
  }
  {
    double e = 0.0;
    for (int k = 0; k < 50; ++k) {
      const double t = S.rng.uniform(0.2, 0.8), eta = t + S.rng.uniform(-0.05, 0.05), th = S.angle();
      const CotangentVector a = t_map(HPoint(0, 1), t, eta, th), b = t_map(HPoint(0, 2), t, eta, th);
      e = std::max({e, std::abs(b.xi1 - 0.5 * a.xi1), std::abs(b.xi2 - 0.5 * a.xi2)});
    }
    S.add("kernel.t_map_homogeneity", 50, e, 1e-10);
  }
  {
    double worst = 0.0;
    int n = 0;
    for (double t : {0.2, 0.4, 0.6, 0.8})
      for (int j = 0; j < 12; ++j, ++n) {
        const double th = 2 * kPi * j / 12, h = 1e-5;
        auto F = [&](double e, double a) {
          const CotangentVector x = t_map(HPoint(0, 1), t, e, a);
          return Eigen::Vector2d(x.xi1, x.xi2);
        };
        Eigen::Matrix2d J;
        J.col(0) = (F(t + h, th) - F(t - h, th)) / (2 * h);
        J.col(1) = (F(t, th + h) - F(t, th - h)) / (2 * h);
        const double smin = Eigen::JacobiSVD<Eigen::Matrix2d>(J).singularValues().minCoeff();
        worst = std::max(worst, 1.0 / smin);
      }
    // reported as 1 / sigma_min
    S.add("kernel.t_map_jacobian", n, worst, 1e6);
  }
  {
    double e = 0.0;
    for (int k = 0; k < 30; ++k) {
      const HPoint z = S.point();
      const double t = S.rng.uniform(0.2, 0.8), eta = t * (1.0 + S.rng.uniform(-0.04, 0.04)), th = S.angle();
      const EtaTheta r = theta_eta_inverse(z, t, t_map(z, t, eta, th));
      double d = std::abs(r.theta - th);
      d = std::min(d, 2 * kPi - d);
      e = std::max({e, std::abs(r.eta - eta), d});
    }
    S.add("kernel.theta_eta_roundtrip", 30, e, 1e-8);
  }
  {
    double e = 0.0, g = 0.0, dmin = 1e300;
    for (double eta : {0.2, 0.5, 0.8}) {
      const CriticalPoint cp = complex_critical_point(eta);
      e = std::max(e, cdist(cp.P, CPoint{cplx(0, eta), 1.0}));
      const PhaseJet j = phase_jet(HPoint(0, 1), CPoint{cplx(0, eta), 1.0}, eta);
      g = std::max(g, std::hypot(std::abs(j.dX), std::abs(j.dY)));
      dmin = std::min(dmin, std::abs(cp.hessian.determinant()));
    }
    S.add("kernel.critical_point", 3, e, 1e-8);
    S.add("kernel.critical_gradient", 3, g, 1e-10);
    S.add("kernel.critical_hessian", 3, 1.0 / dmin, 1e10);
  }
  {
    // analytic derivatives against central differences
    double e = 0.0;
    for (int k = 0; k < 100; ++k) {
      const HPoint z = S.point();
      const CPoint P = S.tube_point(0.7);
      const double eta = S.rng.uniform(0.1, 0.9);
      const PhaseJet j = phase_jet(z, P, eta);
      const double h = 1e-5;
      auto phi = [&](cplx X, cplx Y) { return log_kernel(z, CPoint{X, Y}, eta).phi; };
      const cplx dX = (phi(P.X + h, P.Y) - phi(P.X - h, P.Y)) / (2 * h);
      const cplx dY = (phi(P.X, P.Y + h) - phi(P.X, P.Y - h)) / (2 * h);
      const PhaseJet jx = phase_jet(z, CPoint{P.X + h, P.Y}, eta), jmx = phase_jet(z, CPoint{P.X - h, P.Y}, eta);
      const PhaseJet jy = phase_jet(z, CPoint{P.X, P.Y + h}, eta), jmy = phase_jet(z, CPoint{P.X, P.Y - h}, eta);
      const double sc = 1.0 + std::abs(j.dX) + std::abs(j.dY);
      e = std::max({e, std::abs(dX - j.dX) / sc, std::abs(dY - j.dY) / sc,
                    std::abs((jx.dX - jmx.dX) / (2 * h) - j.dXX) / (sc + std::abs(j.dXX)),
                    std::abs((jy.dX - jmy.dX) / (2 * h) - j.dXY) / (sc + std::abs(j.dXY)),
                    std::abs((jy.dY - jmy.dY) / (2 * h) - j.dYY) / (sc + std::abs(j.dYY))});
      const PhaseGradZ gz = phase_grad_z(z, P, eta);
      const cplx zx = (log_kernel(HPoint(z.x() + h, z.y()), P, eta).phi - log_kernel(HPoint(z.x() - h, z.y()), P, eta).phi) / (2 * h);
      const cplx zy = (log_kernel(HPoint(z.x(), z.y() + h), P, eta).phi - log_kernel(HPoint(z.x(), z.y() - h), P, eta).phi) / (2 * h);
      e = std::max({e, std::abs(zx - gz.dx) / sc, std::abs(zy - gz.dy) / sc});
    }
    S.add("kernel.phase_derivatives", 100, e, 1e-6);
  }
}

// ---------------------------------------------------------------------------

void quadrature_checks(Suite& S) {
  QuadratureSpec q;
  q.rel_tol = 1e-11;
  {
    double e = 0.0;
    for (int k = 0; k < 20; ++k) {
      const double c = S.rng.uniform(1.0, 5.0);
      double p[4];
      for (double& pi : p) pi = S.rng.uniform(-1.0, 1.0);
      p[0] += 2.0;
      auto poly = [&](double u) { return p[0] + u * (p[1] + u * (p[2] + u * p[3] * 0.2)); };
      const HPoint ctr = S.point();
      const QuadratureResult a = integrate_hyperbolic(
          [&](const HPoint& z) { const double u = cosh_dist(z, ctr); return cplx(poly(u) * std::exp(-c * u)); }, ctr, c, q);
      const QuadratureResult b = integrate_radial([&](double u) { return cplx(poly(u) * std::exp(-c * u)); }, c, q);
      e = std::max(e, rel(a.value, 2 * kPi * b.value));
    }
    S.add("quadrature.radial_consistency", 20, e, 1e-8);
  }
  {
    struct Case {
      QuadratureResult r;
      cplx exact;
    };
    std::vector<Case> cs;
    cs.push_back({integrate_1d([](double x) { return cplx(x); }, 0, 1, q), 0.5});
    cs.push_back({integrate_1d([](double u) { return cplx(std::exp(-2 * u)); }, 1, INFINITY, q), std::exp(-2.0) / 2});
    cs.push_back({integrate_radial([](double u) { return cplx(std::exp(-u)); }, 1.0, q), std::exp(-1.0)});
    cs.push_back({integrate_radial([](double u) { return cplx(u * std::exp(-u)); }, 1.0, q), 2 * std::exp(-1.0)});
    const HPoint i(0, 1);
    cs.push_back({integrate_hyperbolic([&](const HPoint& z) { return cplx(std::exp(-2 * cosh_dist(z, i))); }, i, 2.0, q),
                  kPi * std::exp(-2.0)});
    for (int k = 0; k < 15; ++k) {
      const double c = S.rng.uniform(0.5, 6.0);
      const int m = int(S.rng.next() % 4);
      // int_1^inf u^m e^{-cu} du by the incomplete gamma recursion
      double I0 = std::exp(-c) / c, Im = I0;
      for (int j = 1; j <= m; ++j) Im = (std::exp(-c) + j * Im) / c;
      cs.push_back({integrate_radial([&](double u) { return cplx(std::pow(u, m) * std::exp(-c * u)); }, c, q), Im});
      const double w = S.rng.uniform(1.0, 20.0);
      cs.push_back({integrate_1d([&](double x) { return cplx(std::cos(w * x), std::sin(w * x)); }, 0, 1, q),
                    cplx(std::sin(w) / w, (1 - std::cos(w)) / w)});
    }
    double e = 0.0;
    int honest = 0;
    for (const Case& c : cs) {
      const double err = std::abs(c.r.value - c.exact);
      e = std::max(e, err / std::max(std::abs(c.exact), 1e-300));
      if (err <= 3.0 * c.r.error_estimate + 1e-15 * std::abs(c.exact)) ++honest;
    }
    S.add("quadrature.analytic_set", long(cs.size()), e, 1e-9);
    S.add("quadrature.error_honesty", long(cs.size()), 1.0 - double(honest) / cs.size(), 0.05);
  }
}

// ---------------------------------------------------------------------------

void transform_checks(Suite& S) {
  {
    double e = std::abs(hyp2f1(1, 1, 2, 0.5) - 2 * std::log(2.0));
    e = std::max(e, std::abs(hyp2f1(cplx(0.3, 1.1), cplx(-2.0, 0.4), 1.0, 0.0) - 1.0));
    for (int k = 0; k < 50; ++k) {
      const cplx a(S.rng.uniform(-3, 3), S.rng.uniform(-3, 3)), b(S.rng.uniform(-3, 3), S.rng.uniform(-3, 3));
      const double x = S.rng.uniform(0.0, 0.9);
      const cplx f = hyp2f1(a, b, 1.0, x);
      e = std::max(e, rel(hyp2f1(b, a, 1.0, x), f));
      // 2F1(a, b; b; x) = (1 - x)^(-a)
      e = std::max(e, rel(hyp2f1(a, b, b, x), std::exp(-a * std::log(1.0 - x))));
    }
    S.add("transform.hyp2f1", 51, e, 1e-12);
  }
  {
    double e = 0.0;
    long zero = 0;
    for (double eta : {0.4, 0.5, 0.6})
      for (double tau : {2.0, 5.0, 10.0})
        for (double s : {0.5, 1.0}) {
          const STransformResult a = selberg_S_quadrature(eta, tau, s), b = selberg_S_formula(eta, tau, s);
          e = std::max(e, rel(a.value, b.value));
          if (std::abs(a.value) == 0.0) ++zero;
        }
    S.add("transform.s_quadrature_vs_formula", 18, e, 1e-5);
    S.add("transform.s_nonzero", 18, double(zero), 0.0);
  }
  {
    long bad = 0;
    double worst_ratio = 0.0, cp = 0.0;
    for (double eta : {0.4, 0.5, 0.6}) {
      double prev = 1e300;
      for (double tau : {10.0, 20.0, 40.0, 80.0}) {
        const STransformResult q = selberg_S_quadrature(eta, tau, 0.5, {}, QuadratureContour::Descent);
        const double gap = std::abs(std::log(std::abs(q.value)) / tau - phi_diagonal(eta, kPi));
        if (!(gap < prev)) ++bad;
        prev = gap;
        if (tau == 40.0) {
          const double r = std::abs(laplace_asymptote_S(eta, tau, 0.5).value) / std::abs(q.value);
          worst_ratio = std::max(worst_ratio, std::abs(std::log(r)));
        }
      }
      cp = std::max(cp, cdist(complex_critical_point(eta).P, CPoint{cplx(0, eta), 1.0}));
    }
    S.add("transform.s_rate_gap_monotone", 12, double(bad), 0.0);
    S.add("transform.laplace_ratio_tau40", 3, worst_ratio, std::log(1.25));
  }
  {
    double e = 0.0;
    for (int k = 0; k < 6; ++k) {
      const double tau = (k % 3 == 0) ? 2.0 : (k % 3 == 1 ? 5.0 : 10.0), s = k < 3 ? 0.5 : 1.0;
      const SpectralParams sp(tau, s);
      const cplx a = sp.exponent();
      const CPoint P = horocycle_point_c(S.point(), S.angle(), S.rng.uniform(0.05, 0.35));
      const double eta = S.rng.uniform(0.4, 0.6);
      const ScalarField u = [a](const HPoint& z) { return std::exp(a * std::log(z.y())); };
      const cplx v = continue_eigenfunction(u, eta, tau, P);
      e = std::max(e, rel(v, selberg_S_formula(eta, tau, s).value * std::exp(a * std::log(P.Y))));
    }
    S.add("transform.continuation_model", 6, e, 1e-5);
  }
  {
    double e = 0.0;
    for (int k = 0; k < 4; ++k) {
      const SpectralParams sp(S.rng.uniform(2.0, 8.0), 1.0);
      EigenSpec e1(sp), e2(sp);
      e1.add(1.0, S.iso());
      e2.add(1.0, S.iso());
      const cplx al(S.rng.uniform(-1, 1), S.rng.uniform(-1, 1)), be(S.rng.uniform(-1, 1), S.rng.uniform(-1, 1));
      const ScalarField u1 = [&](const HPoint& z) { return eval_eigen(e1, z); };
      const ScalarField u2 = [&](const HPoint& z) { return eval_eigen(e2, z); };
      const ScalarField uc = [&](const HPoint& z) { return al * u1(z) + be * u2(z); };
      const CPoint P = horocycle_point_c(S.point(), S.angle(), S.rng.uniform(0.05, 0.3));
      const cplx lhs = continue_eigenfunction(uc, 0.5, sp.tau(), P);
      const cplx rhs = al * continue_eigenfunction(u1, 0.5, sp.tau(), P) + be * continue_eigenfunction(u2, 0.5, sp.tau(), P);
      e = std::max(e, rel(lhs, rhs));
    }
    S.add("transform.continuation_linearity", 4, e, 1e-10);
  }
}

// ---------------------------------------------------------------------------

void eigen_checks(Suite& S) {
  {
    double e = 0.0;
    for (int k = 0; k < 50; ++k) {
      const SpectralParams sp(S.rng.uniform(0.0, 6.0), S.rng.uniform(0.0, 2.0));
      EigenSpec es(sp);
      es.add(cplx(S.rng.uniform(-1, 1), S.rng.uniform(-1, 1)), S.iso());
      es.add(cplx(S.rng.uniform(-1, 1), S.rng.uniform(-1, 1)), S.iso());
      const ScalarField u = [&](const HPoint& z) { return eval_eigen(es, z); };
      const HPoint z = S.point();
      const cplx r = apply_D_tau_fd(u, sp.tau(), z) - sp.s() * sp.s() * u(z);
      e = std::max(e, std::abs(r) / std::max(std::abs(u(z)) * std::max(sp.s() * sp.s(), 1.0), 1e-300));
    }
    S.add("eigen.residual", 50, e, 1e-4);
  }
  {
    double e = 0.0;
    for (int k = 0; k < 200; ++k) {
      EigenSpec es(SpectralParams(S.rng.uniform(0.0, 20.0), S.rng.uniform(0.0, 2.0)));
      es.add(cplx(S.rng.uniform(-1, 1), 0.3), S.iso()).add(0.5, S.iso());
      const HPoint z = S.point();
      e = std::max(e, rel(eval_eigen_c(es, CPoint::embed(z)), eval_eigen(es, z)));
    }
    EigenSpec one(SpectralParams(3.0, 0.8));
    one.add(1.0, Isometry::identity());
    for (int k = 0; k < 20; ++k) {
      const double t = S.rng.uniform(0.0, 0.95);
      e = std::max(e, std::abs(eval_eigen_c(one, CPoint{cplx(0, t), 1.0}) - 1.0));
    }
    S.add("eigen.restriction", 220, e, 1e-12);
  }
  {
    double e = 0.0;
    for (int k = 0; k < 20; ++k) {
      const double tau = 2.0 + 8.0 * S.rng.uniform(), s = S.rng.uniform(0.3, 1.5), eta = S.rng.uniform(0.4, 0.6);
      EigenSpec es(SpectralParams(tau, s));
      es.add(cplx(S.rng.uniform(-1, 1), S.rng.uniform(-1, 1)), S.iso()).add(1.0, S.iso());
      const CPoint P = horocycle_point_c(S.point(), S.angle(), S.rng.uniform(0.05, 0.35));
      const ScalarField u = [&](const HPoint& z) { return eval_eigen(es, z); };
      const cplx v = continue_eigenfunction(u, eta, tau, P);
      e = std::max(e, rel(v, selberg_S(eta, tau, s).value * eval_eigen_c(es, P)));
    }
    S.add("eigen.continuation_oracle", 20, e, 1e-4);
  }
  {
    long bad = 0;
    for (int k = 0; k < 50; ++k) {
      const int deg = 1 + k % 6;
      std::vector<cplx> roots;
      std::vector<int> mult;
      for (int d = 0; d < deg;) {
        const int m = (S.rng.next() % 4 == 0 && d + 2 <= deg) ? 2 : 1;
        roots.push_back({S.rng.uniform(-1.8, 1.8), S.rng.uniform(-1.8, 1.8)});
        mult.push_back(m);
        d += m;
      }
      const AnalyticFn f = [&](cplx w) {
        cplx p = 1.0;
        for (std::size_t i = 0; i < roots.size(); ++i)
          for (int j = 0; j < mult[i]; ++j) p *= w - roots[i];
        return p;
      };
      NodalReport r;
      try {
        r = nodal_slice_zeros(f, -2, 2, -2, 2);
      } catch (const Error&) {
        ++bad;
        continue;
      }
      bool ok = r.total_count == deg && r.zeros.size() == roots.size();
      for (std::size_t i = 0; i < roots.size(); ++i) {
        bool found = false;
        for (const NodalZero& z : r.zeros) found |= std::abs(z.w - roots[i]) < 1e-6 && z.multiplicity == mult[i];
        ok &= found;
      }
      if (!ok) ++bad;
    }
    S.add("eigen.argument_principle", 50, double(bad), 0.0);
  }
  {
    // real coefficients, isometries paired with their mirror images
    double e = 0.0;
    long n = 0;
    for (int k = 0; k < 6; ++k) {
      EigenSpec es(SpectralParams(20.0, 0.4));
      for (int j = 0; j < 2; ++j) {
        const double a = 1 + 0.3 * S.rng.uniform(-1, 1), b = 0.5 * S.rng.uniform(-1, 1), c = 0.5 * S.rng.uniform(-1, 1);
        const double co = j == 0 ? 1.0 : S.rng.uniform(-1, 1);
        es.add(co, Isometry(a, b, c, (1 + b * c) / a)).add(co, Isometry(a, -b, -c, (1 + b * c) / a));
      }
      const SliceSpec sl = line_slice(CPoint{cplx(0, 0.25), 1.0}, CPoint{cplx(0, 0.1), cplx(0.15, 0)}, -1.5, 1.5, -1.2, 1.2, 16);
      NodalSpec ns;
      ns.grid = 128;
      const NodalReport r = nodal_density_vs_b0(es, sl, ns);
      for (const NodalZero& z : r.zeros) {
        double best = 1e300;
        for (const NodalZero& o : r.zeros)
          if (o.multiplicity == z.multiplicity) best = std::min(best, std::abs(o.w - std::conj(z.w)));
        e = std::max(e, best);
        ++n;
      }
    }
    S.add("eigen.conjugation_symmetry", n, e, 1e-8);
  }
  {
    double e = 0.0;
    for (int k = 0; k < 3; ++k) {
      const double t = S.rng.uniform(0.2, 0.5);
      const CPoint V{cplx(S.rng.uniform(-0.2, 0.2), 0.05), cplx(0.08, S.rng.uniform(-0.02, 0.02))};
      const SliceSpec sl = line_slice(horocycle_point_c(HPoint(0, 1), kPi, t), V, -1, 1, -1, 1, 16);
      e = std::max(e, std::abs(b0_density_flux(sl) - b0_density_grid(sl, 64)));
    }
    S.add("eigen.b0_density_routes", 3, e, 1e-4);
  }
  {
    EigenSpec es(SpectralParams(10.0, 0.7));
    es.add(1.0, Isometry::identity());
    const auto rows = growth_profile(es, theta_slice(HPoint(0.2, 1.3), 0.05, 0.6, kPi, kPi, 12, 1));
    double e = 0.0;
    for (const GrowthRow& r : rows) e = std::max(e, std::abs(r.b0));
    S.add("eigen.growth_theta_pi", long(rows.size()), e, 1e-15);
  }
}

}  // namespace

std::vector<CheckRow> run_verify(const VerifyOptions& opt) {
  Suite S(opt);
  plane_checks(S);
  tube_checks(S);
  kernel_checks(S);
  quadrature_checks(S);
  transform_checks(S);
  eigen_checks(S);
  return S.rows;
}

}  // namespace hyptube
