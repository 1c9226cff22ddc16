#include "hyptube/kernel.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "hyptube/error.hpp"

namespace hyptube {

namespace {

constexpr cplx I{0.0, 1.0};

void check_eta(double eta) {
  if (!(eta > 0.0 && eta < 1.0)) fail(ErrorKind::Domain, "eta must lie in (0, 1)");
}

struct Slice {
  HPoint z;
  HoroFrame frame;
  double eta;

  // Re Phi and its gradient / Hessian in the basepoint coordinates.
  double value(double wx, double wy) const {
    return log_kernel(z, frame.at(HPoint(wx, wy)), eta).phi.real();
  }

  void derivs(double wx, double wy, Eigen::Vector2d& g, Eigen::Matrix2d& H) const {
    const PhaseJet j = phase_jet(z, frame.at(HPoint(wx, wy)), eta);
    const cplx p = frame.p, q = frame.q;
    g << j.dX.real(), (j.dX * p + j.dY * q).real();
    const double hxy = (j.dXX * p + j.dXY * q).real();
    const double hyy = (j.dXX * p * p + 2.0 * j.dXY * p * q + j.dYY * q * q).real();
    H << j.dXX.real(), hxy, hxy, hyy;
  }
};

}  // namespace

double c_param(double t) {
  if (!(t > 0.0 && t < 1.0)) fail(ErrorKind::Domain, "c_t needs 0 < t < 1");
  return 4.0 / (4.0 * t - t * t * t);
}

KernelEval log_kernel(const HPoint& z, const CPoint& P, double eta) {
  const double c = c_param(eta);
  return {log_gauge(z, P) - c * cosh_dist_c(z, P), eta, z, P};
}

PhaseJet phase_jet(const HPoint& z, const CPoint& P, double eta) {
  const double c = c_param(eta);
  const double x0 = z.x(), y0 = z.y();
  const cplx u = z.z() - P.Zt();
  const cplx w = std::conj(z.z()) - P.Z();
  const cplx a = P.X - x0;
  const cplx Y = P.Y;

  PhaseJet j;
  j.value = log_gauge(z, P) - c * cosh_dist_c(z, P);

  const cplx iu = 1.0 / u, iw = 1.0 / w;
  const cplx k = y0 * y0 + a * a;
  j.dX = -iu + iw - c * a / (y0 * Y);
  j.dY = I * iu + I * iw - c * (1.0 / (2.0 * y0) - k / (2.0 * y0 * Y * Y));
  j.dXX = -iu * iu + iw * iw - c / (y0 * Y);
  j.dXY = I * iu * iu + I * iw * iw + c * a / (y0 * Y * Y);
  j.dYY = iu * iu - iw * iw - c * k / (y0 * Y * Y * Y);
  return j;
}

PhaseGradZ phase_grad_z(const HPoint& z, const CPoint& P, double eta) {
  const double c = c_param(eta);
  const double x = z.x(), y = z.y();
  if (P.Y == cplx(0.0)) fail(ErrorKind::Domain, "phase_grad_z: Y(P) = 0");
  const cplx u = z.z() - P.Zt();
  const cplx w = std::conj(z.z()) - P.Z();
  const cplx dx = x - P.X, dy = y - P.Y;
  const cplx Cx = dx / (y * P.Y);
  const cplx Cy = (2.0 * dy * y - (dx * dx + dy * dy)) / (2.0 * y * y * P.Y);
  return {1.0 / u - 1.0 / w - c * Cx, I / u + I / w - c * Cy};
}

MaximizerResult kernel_max(const HPoint& z, double t, double eta, double theta) {
  if (!(t > 0.0 && t < 1.0)) fail(ErrorKind::Domain, "kernel_max: t must lie in (0, 1)");
  check_eta(eta);
  if (std::abs(eta - t) > 0.1 + 1e-15) fail(ErrorKind::Domain, "kernel_max: |eta - t| must be <= 0.1");

  const Slice sl{z, horocycle_frame(theta, t), eta};
  double wx = z.x(), wy = z.y();
  Eigen::Vector2d g;
  Eigen::Matrix2d H;
  double f = sl.value(wx, wy);
  const double scale = 1.0 / z.y();
  int it = 0;
  for (;; ++it) {
    sl.derivs(wx, wy, g, H);
    const double gn = g.norm();
    if (gn <= 1e-14 * scale || (it == 50 && gn <= 1e-10 * scale)) break;
    if (it == 50) fail(ErrorKind::Numerical, "kernel_max: Newton did not converge in 50 iterations");

    Eigen::Vector2d step;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(H);
    if (es.eigenvalues().maxCoeff() < 0.0) {
      step = -H.ldlt().solve(g);
      // predicted gain below the resolution of f: take the step unchecked
      if (0.5 * g.dot(step) <= 1e-15 * (1.0 + std::abs(f)) && wy + step[1] > 0.0) {
        wx += step[0];
        wy += step[1];
        f = sl.value(wx, wy);
        continue;
      }
    } else {
      step = g * (wy * wy);
    }
    double lam = 1.0;
    bool moved = false;
    for (int k = 0; k < 40; ++k, lam *= 0.5) {
      const double nx = wx + lam * step[0], ny = wy + lam * step[1];
      if (!(ny > 0.0)) continue;
      double fn;
      try {
        fn = sl.value(nx, ny);
      } catch (const Error&) {
        continue;
      }
      // accept on ascent, or on first full step once we are close
      if (fn >= f - 1e-14 * std::abs(f)) {
        wx = nx;
        wy = ny;
        f = fn;
        moved = true;
        break;
      }
    }
    if (!moved) {
      if (gn <= 1e-10 * scale) break;  // stagnated at rounding level
      fail(ErrorKind::Numerical, "kernel_max: line search failed");
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(H);
  if (!(es.eigenvalues().maxCoeff() < 0.0)) {
    fail(ErrorKind::Numerical, "kernel_max: Hessian at the critical point is not negative definite");
  }
  const HPoint w(wx, wy);
  return {sl.frame.at(w), w, f, H, it};
}

double phi_max(double t, double eta, double theta) {
  return kernel_max(HPoint(0.0, 1.0), t, eta, theta).phi_max;
}

double phi_diagonal(double t, double theta) {
  const double k = 1.0 + std::cos(theta);
  return 0.5 * std::log((k * (t * t + 2.0 * t) + 2.0) / (k * (t * t - 2.0 * t) + 2.0)) +
         std::log((2.0 - t) / (2.0 + t)) - (4.0 - 2.0 * t * t) / (4.0 * t - t * t * t);
}

double B0(double t, double theta) {
  if (!(t >= 0.0 && t < 1.0)) fail(ErrorKind::Domain, "B0: t must lie in [0, 1)");
  const double k = 1.0 + std::cos(theta);
  return std::log((2.0 + (t * t - 2.0 * t) * k) / (2.0 + (t * t + 2.0 * t) * k));
}

CotangentVector t_map(const HPoint& z, double t, double eta, double theta) {
  const MaximizerResult m = kernel_max(z, t, eta, theta);
  const PhaseGradZ d = phase_grad_z(z, m.Q, eta);
  return {z, d.dx.imag(), d.dy.imag()};
}

EtaTheta theta_eta_inverse(const HPoint& z, double t, const CotangentVector& xi) {
  const double y = z.y();
  const double h = magnetic_hamiltonian(-1.0, CotangentVector{z, xi.xi1, xi.xi2});
  if (std::abs(h - 0.5) > 0.05) fail(ErrorKind::Domain, "theta_eta_inverse: covector too far from {H_-1 = 1/2}");

  Eigen::Vector2d v(t, std::atan2(-y * xi.xi2, -y * xi.xi1 - 1.0));
  const Eigen::Vector2d target(xi.xi1, xi.xi2);
  auto F = [&](const Eigen::Vector2d& p) -> Eigen::Vector2d {
    const CotangentVector r = t_map(z, t, p[0], p[1]);
    return Eigen::Vector2d(r.xi1, r.xi2) - target;
  };
  Eigen::Vector2d r = F(v);
  for (int it = 0; it < 30; ++it) {
    if (r.norm() <= 1e-13 / y) {
      double th = std::fmod(v[1], 2.0 * std::numbers::pi);
      if (th < 0.0) th += 2.0 * std::numbers::pi;
      return {v[0], th};
    }
    Eigen::Matrix2d J;
    for (int k = 0; k < 2; ++k) {
      const double hs = 1e-6;
      Eigen::Vector2d ep = v, em = v;
      ep[k] += hs;
      em[k] -= hs;
      J.col(k) = (F(ep) - F(em)) / (2.0 * hs);
    }
    Eigen::Vector2d step = -J.partialPivLu().solve(r);
    double lam = 1.0;
    bool moved = false;
    for (int k = 0; k < 20; ++k, lam *= 0.5) {
      const Eigen::Vector2d nv = v + lam * step;
      if (std::abs(nv[0] - t) > 0.1) continue;
      Eigen::Vector2d nr;
      try {
        nr = F(nv);
      } catch (const Error&) {
        continue;
      }
      if (nr.norm() < r.norm()) {
        v = nv;
        r = nr;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  if (r.norm() <= 1e-10 / y) {
    double th = std::fmod(v[1], 2.0 * std::numbers::pi);
    if (th < 0.0) th += 2.0 * std::numbers::pi;
    return {v[0], th};
  }
  fail(ErrorKind::Numerical, "theta_eta_inverse: Newton did not converge");
}

CriticalPoint complex_critical_point(double eta) {
  check_eta(eta);
  const HPoint z0(0.0, 1.0);
  CPoint P{cplx(0.05, 0.9 * eta), cplx(1.05, 0.0)};
  for (int it = 0; it <= 50; ++it) {
    const PhaseJet j = phase_jet(z0, P, eta);
    Eigen::Matrix2cd H;
    H << j.dXX, j.dXY, j.dXY, j.dYY;
    const Eigen::Vector2cd g(j.dX, j.dY);
    if (g.norm() <= 1e-12) {
      if (std::abs(H.determinant()) < 1e-10) fail(ErrorKind::Numerical, "critical point is degenerate");
      return {P, H, j.value, it};
    }
    if (std::abs(H.determinant()) < 1e-14) fail(ErrorKind::Numerical, "singular Hessian in critical point search");
    const Eigen::Vector2cd step = H.partialPivLu().solve(g);
    P.X -= step[0];
    P.Y -= step[1];
  }
  fail(ErrorKind::Numerical, "complex_critical_point: no convergence");
}

}  // namespace hyptube
