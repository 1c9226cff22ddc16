#pragma once

// The complexified plane C x C, horocycles at imaginary time and the
// horocycle Grauert tube.

#include <optional>
#include <utility>

#include "hyptube/plane.hpp"

namespace hyptube {

struct CPoint {
  cplx X;
  cplx Y;

  /// Continuation of z.
  cplx Z() const { return X + cplx(0.0, 1.0) * Y; }
  /// Continuation of conj(z).
  cplx Zt() const { return X - cplx(0.0, 1.0) * Y; }

  static CPoint embed(const HPoint& z) { return {cplx(z.x(), 0.0), cplx(z.y(), 0.0)}; }
};

/// Horocycle coordinates (x, y, t, theta). On the real plane (t = 0) the
/// angle is not defined and `theta` is empty.
struct HoroCoords {
  double x;
  double y;
  double t;
  std::optional<double> theta;

  HPoint base() const { return {x, y}; }
};

std::pair<cplx, cplx> z_tilde_z(const CPoint& P);

/// 1 + ((x - X)^2 + (y - Y)^2) / (2 y Y). Holomorphic in P.
cplx cosh_dist_c(const HPoint& z, const CPoint& P);

CPoint mobius_apply_c(const Isometry& iso, const CPoint& P);

/// Log(z - Z~) - Log(conj z - Z) with principal logarithms; continuous for
/// P in the tube. Outside the two half-plane conditions this is a branch
/// error.
cplx log_gauge(const HPoint& z, const CPoint& P);

/// Right horocycle through z with initial direction theta, at real time t.
HPoint horocycle_point(const HPoint& z, double theta, double t);

/// The same horocycle continued to imaginary time -i t, 0 <= t < 1.
CPoint horocycle_point_c(const HPoint& z, double theta, double t);

/// For fixed (t, theta) the map w -> h_{-it}(w, theta) is affine in the real
/// coordinates of w: X = x + y p, Y = y q.
struct HoroFrame {
  cplx p;
  cplx q;

  CPoint at(const HPoint& w) const { return {w.x() + w.y() * p, w.y() * q}; }
};

HoroFrame horocycle_frame(double theta, double t);

/// Sends the covector ((1 + cos theta) dx + sin theta dy) / y on {H_1 = 1/2}
/// to h_{-it}(z, theta). Covectors off the level set are a domain error.
CPoint m_t_map(const CotangentVector& xi, double t);

/// Inverse of horocycle_point_c. Errors with NotInTube off the tube.
HoroCoords tube_coords_from_point(const CPoint& P);

/// Membership in the tube of the given radius, 0 < radius <= 1.
bool in_tube(const CPoint& P, double radius);

}  // namespace hyptube
