#pragma once

// Real hyperbolic plane in the upper half-plane model.

#include <complex>
#include <functional>

namespace hyptube {

using cplx = std::complex<double>;

/// Point x + iy of the upper half-plane. Construction rejects y <= 0.
class HPoint {
 public:
  HPoint(double x, double y);
  explicit HPoint(cplx z) : HPoint(z.real(), z.imag()) {}

  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }
  cplx z() const noexcept { return {x_, y_}; }

 private:
  double x_;
  double y_;
};

/// Orientation-preserving isometry z -> (az+b)/(cz+d) with ad - bc = 1.
/// Entries are normalized on construction; a non-positive determinant is a
/// domain error.
class Isometry {
 public:
  Isometry(double a, double b, double c, double d);

  static Isometry identity() { return {1.0, 0.0, 0.0, 1.0}; }
  /// Rotation of the plane around i by angle theta.
  static Isometry rotation(double theta);
  /// z -> x0 + y0 z.
  static Isometry affine(double x0, double y0);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double c() const noexcept { return c_; }
  double d() const noexcept { return d_; }

  /// Matrix product this * other, renormalized.
  Isometry compose(const Isometry& other) const;
  Isometry inverse() const { return {d_, -b_, -c_, a_}; }

  /// Complex Mobius action on an arbitrary scalar (used for complexified
  /// points where Z and Z~ are transformed separately).
  cplx act(cplx w) const { return (a_ * w + b_) / (c_ * w + d_); }

 private:
  double a_, b_, c_, d_;
};

struct TangentVector {
  HPoint base;
  double vx;
  double vy;
};

struct CotangentVector {
  HPoint base;
  double xi1;  // coefficient of dx
  double xi2;  // coefficient of dy
};

/// Spectral data of D^tau u = s^2 u. `sigma` is the principal root of
/// s^2 - 1/4, so the model eigenfunction is y^(1/2 + i sigma).
class SpectralParams {
 public:
  SpectralParams(double tau, double s);

  double tau() const noexcept { return tau_; }
  double s() const noexcept { return s_; }
  cplx sigma() const noexcept { return sigma_; }
  /// 1/2 + i sigma; satisfies e (e - 1) = -s^2.
  cplx exponent() const noexcept { return cplx(0.5, 0.0) + cplx(0.0, 1.0) * sigma_; }

 private:
  double tau_;
  double s_;
  cplx sigma_;
};

HPoint mobius_apply(const Isometry& iso, const HPoint& z);

double cosh_dist(const HPoint& z, const HPoint& w);

/// ((y xi1 - b)^2 + (y xi2)^2) / 2.
double magnetic_hamiltonian(double b, const CotangentVector& p);

/// Identification T H -> T* H generated by H_1.
CotangentVector psi1(const TangentVector& v);

/// Unit tangent vector y (cos theta, sin theta) at z.
TangentVector unit_vector(const HPoint& z, double theta);

using ScalarField = std::function<cplx(const HPoint&)>;

/// Second-order centered finite-difference evaluation of
/// (-y^2 (u_xx + u_yy) + 2 i tau y u_x)(z). A non-positive h selects the
/// default step 1e-4 * y.
cplx apply_D_tau_fd(const ScalarField& u, double tau, const HPoint& z, double h = 0.0);

}  // namespace hyptube
