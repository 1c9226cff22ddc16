#include "hyptube/tube.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "hyptube/error.hpp"

namespace hyptube {

namespace {

constexpr cplx I{0.0, 1.0};

double wrap_angle(double theta) {
  double r = std::fmod(theta, 2.0 * std::numbers::pi);
  if (r < 0.0) r += 2.0 * std::numbers::pi;
  return r;
}

Eigen::Vector4d flatten(const CPoint& P) {
  return {P.X.real(), P.X.imag(), P.Y.real(), P.Y.imag()};
}

Eigen::Vector4d forward(const Eigen::Vector4d& c) {
  return flatten(horocycle_frame(c[3], c[2]).at(HPoint(c[0], c[1])));
}

}  // namespace

std::pair<cplx, cplx> z_tilde_z(const CPoint& P) { return {P.Z(), P.Zt()}; }

cplx cosh_dist_c(const HPoint& z, const CPoint& P) {
  if (P.Y == cplx(0.0, 0.0)) fail(ErrorKind::Domain, "cosh_dist_c: Y(P) = 0 is singular");
  const cplx dx = z.x() - P.X;
  const cplx dy = z.y() - P.Y;
  return 1.0 + (dx * dx + dy * dy) / (2.0 * z.y() * P.Y);
}

CPoint mobius_apply_c(const Isometry& g, const CPoint& P) {
  const cplx cx = g.c() * P.X + g.d();
  const cplx den = cx * cx + (g.c() * P.Y) * (g.c() * P.Y);
  if (std::abs(den) < 1e-300) fail(ErrorKind::Domain, "mobius_apply_c: vanishing denominator");
  const cplx X = ((g.a() * P.X + g.b()) * cx + g.a() * g.c() * P.Y * P.Y) / den;
  return {X, P.Y / den};
}

cplx log_gauge(const HPoint& z, const CPoint& P) {
  const cplx num = z.z() - P.Zt();
  const cplx den = std::conj(z.z()) - P.Z();
  if (!(num.imag() > 0.0) || !(den.imag() < 0.0)) {
    fail(ErrorKind::Branch, "log_gauge: point violates the half-plane conditions of the tube");
  }
  return std::log(num) - std::log(den);
}

HPoint horocycle_point(const HPoint& z, double theta, double t) {
  const Isometry g = Isometry::affine(z.x(), z.y()).compose(Isometry::rotation(theta - std::numbers::pi));
  return mobius_apply(g, HPoint(-t, 1.0));
}

HoroFrame horocycle_frame(double theta, double t) {
  // h_{-it}(i, pi) = (it, 1) has Z = i(1 + t), Z~ = i(t - 1); rotate it to
  // direction theta, then the affine map to the base point is linear.
  const Isometry r = Isometry::rotation(theta - std::numbers::pi);
  const cplx zp = r.act(I * (1.0 + t));
  const cplx zm = r.act(I * (t - 1.0));
  return {0.5 * (zp + zm), (zp - zm) / (2.0 * I)};
}

CPoint horocycle_point_c(const HPoint& z, double theta, double t) {
  if (!(t >= 0.0 && t < 1.0)) fail(ErrorKind::Domain, "horocycle_point_c: t must lie in [0, 1)");
  return horocycle_frame(theta, t).at(z);
}

CPoint m_t_map(const CotangentVector& xi, double t) {
  if (std::abs(magnetic_hamiltonian(1.0, xi) - 0.5) > 1e-9) {
    fail(ErrorKind::Domain, "m_t_map: covector is not on {H_1 = 1/2}");
  }
  const double y = xi.base.y();
  const double theta = std::atan2(y * xi.xi2, y * xi.xi1 - 1.0);
  return horocycle_point_c(xi.base, theta, t);
}

HoroCoords tube_coords_from_point(const CPoint& P) {
  const cplx Z = P.Z();
  const cplx W = std::conj(P.Zt());
  if (!(Z.imag() > 0.0) || !(W.imag() > 0.0)) {
    fail(ErrorKind::NotInTube, "point violates Re Y > |Im X|");
  }
  // Z and W are the images of i(1 + t) and i(1 - t) under one real
  // isometry. In the disk chart centred at W, Z sits at radius t and the
  // base point at radius t / (2 - t) on the same ray.
  const cplx dz = (Z - W) / (Z - std::conj(W));
  const double t = std::abs(dz);
  if (t == 0.0) return {Z.real(), Z.imag(), 0.0, std::nullopt};
  if (!(t < 1.0)) fail(ErrorKind::NotInTube, "tube radius must be below 1");

  const double alpha = std::arg(dz);
  const cplx wb = std::polar(t / (2.0 - t), alpha);
  const cplx base = (W - std::conj(W) * wb) / (1.0 - wb);
  const double theta = wrap_angle(std::numbers::pi + alpha - 2.0 * std::arg(1.0 - wb));
  HoroCoords hc{base.real(), base.imag(), t, theta};

  // Newton polish on the forward map; only accept steps that reduce the
  // residual.
  const Eigen::Vector4d target = flatten(P);
  const double scale = 1.0 + target.norm();
  Eigen::Vector4d c(hc.x, hc.y, hc.t, *hc.theta);
  double res = (forward(c) - target).norm();
  for (int it = 0; it < 5 && res > 1e-15 * scale; ++it) {
    Eigen::Matrix4d J;
    for (int k = 0; k < 4; ++k) {
      const double h = 1e-7 * (k == 1 ? c[1] : 1.0);
      Eigen::Vector4d cp = c, cm = c;
      cp[k] += h;
      cm[k] -= h;
      if (k == 2 && cm[2] < 0.0) cm[2] = c[2];
      J.col(k) = (forward(cp) - forward(cm)) / (cp[k] - cm[k]);
    }
    const Eigen::Vector4d step = J.fullPivLu().solve(target - forward(c));
    const Eigen::Vector4d next = c + step;
    if (!(next[1] > 0.0) || !(next[2] > 0.0) || !(next[2] < 1.0)) break;
    const double r2 = (forward(next) - target).norm();
    if (!(r2 < res)) break;
    c = next;
    res = r2;
  }
  return {c[0], c[1], c[2], wrap_angle(c[3])};
}

bool in_tube(const CPoint& P, double radius) {
  if (!(radius > 0.0 && radius <= 1.0)) fail(ErrorKind::Domain, "in_tube: radius must lie in (0, 1]");
  if (!(P.Y.real() > std::abs(P.X.imag()))) return false;
  try {
    return tube_coords_from_point(P).t < radius;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace hyptube
