#include "hyptube/plane.hpp"

#include <cmath>
#include <string>

#include "hyptube/error.hpp"

namespace hyptube {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Branch: return "branch";
    case ErrorKind::NotInTube: return "not-in-tube";
    case ErrorKind::Numerical: return "numerical";
    case ErrorKind::Accuracy: return "accuracy";
    case ErrorKind::RouteUnavailable: return "route-unavailable";
    case ErrorKind::Partition: return "partition";
  }
  return "unknown";
}

HPoint::HPoint(double x, double y) : x_(x), y_(y) {
  if (!(y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
    fail(ErrorKind::Domain, "HPoint requires finite x and y > 0 (got y = " + std::to_string(y) + ")");
  }
}

Isometry::Isometry(double a, double b, double c, double d) {
  const double det = a * d - b * c;
  if (!(det > 0.0) || !std::isfinite(det)) {
    fail(ErrorKind::Domain, "isometry needs a positive determinant");
  }
  const double k = 1.0 / std::sqrt(det);
  a_ = a * k;
  b_ = b * k;
  c_ = c * k;
  d_ = d * k;
}

Isometry Isometry::rotation(double theta) {
  const double co = std::cos(theta / 2.0);
  const double si = std::sin(theta / 2.0);
  return {co, si, -si, co};
}

Isometry Isometry::affine(double x0, double y0) {
  if (!(y0 > 0.0)) fail(ErrorKind::Domain, "affine isometry needs y0 > 0");
  const double r = std::sqrt(y0);
  return {r, x0 / r, 0.0, 1.0 / r};
}

Isometry Isometry::compose(const Isometry& o) const {
  return {a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_,
          c_ * o.a_ + d_ * o.c_, c_ * o.b_ + d_ * o.d_};
}

SpectralParams::SpectralParams(double tau, double s) : tau_(tau), s_(s) {
  if (!(tau >= 0.0) || !(s >= 0.0) || !std::isfinite(tau) || !std::isfinite(s)) {
    fail(ErrorKind::Domain, "spectral parameters need tau >= 0 and s >= 0");
  }
  sigma_ = std::sqrt(cplx(s * s - 0.25, 0.0));
}

HPoint mobius_apply(const Isometry& iso, const HPoint& z) {
  const cplx w = iso.act(z.z());
  // Im of a real Mobius image is y / |cz+d|^2; recompute it that way so it
  // stays positive under rounding.
  const double den = std::norm(iso.c() * z.z() + iso.d());
  return HPoint(w.real(), z.y() / den);
}

double cosh_dist(const HPoint& z, const HPoint& w) {
  const double dx = z.x() - w.x();
  const double dy = z.y() - w.y();
  return 1.0 + (dx * dx + dy * dy) / (2.0 * z.y() * w.y());
}

double magnetic_hamiltonian(double b, const CotangentVector& p) {
  const double y = p.base.y();
  const double u = y * p.xi1 - b;
  const double v = y * p.xi2;
  return 0.5 * (u * u + v * v);
}

CotangentVector psi1(const TangentVector& v) {
  const double y = v.base.y();
  return {v.base, (v.vx + y) / (y * y), v.vy / (y * y)};
}

TangentVector unit_vector(const HPoint& z, double theta) {
  return {z, z.y() * std::cos(theta), z.y() * std::sin(theta)};
}

cplx apply_D_tau_fd(const ScalarField& u, double tau, const HPoint& z, double h) {
  if (h <= 0.0) h = 1e-4 * z.y();
  if (z.y() - h <= 0.0) {
    fail(ErrorKind::Domain, "finite-difference stencil leaves the upper half-plane");
  }
  const double x = z.x();
  const double y = z.y();
  const cplx c0 = u(z);
  const cplx xp = u(HPoint(x + h, y));
  const cplx xm = u(HPoint(x - h, y));
  const cplx yp = u(HPoint(x, y + h));
  const cplx ym = u(HPoint(x, y - h));
  const cplx uxx = (xp - 2.0 * c0 + xm) / (h * h);
  const cplx uyy = (yp - 2.0 * c0 + ym) / (h * h);
  const cplx ux = (xp - xm) / (2.0 * h);
  return -y * y * (uxx + uyy) + cplx(0.0, 2.0 * tau * y) * ux;
}

}  // namespace hyptube
