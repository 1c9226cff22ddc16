#pragma once

// Selberg-type transform S(eta, tau, s), continuation of eigenfunctions
// through the kernel, and the weight B(P).

#include <string>

#include "hyptube/quadrature.hpp"
#include "hyptube/tube.hpp"

namespace hyptube {

/// Gauss hypergeometric series 2F1(a, b; c; x), 0 <= x < 1.
cplx hyp2f1(cplx a, cplx b, cplx c, double x);

/// exp(-1 / (1 - u^2)) rescaled to [t1, t2].
class Mollifier {
 public:
  Mollifier(double t1, double t2);

  double t1() const noexcept { return t1_; }
  double t2() const noexcept { return t2_; }
  double operator()(double t) const;

 private:
  double t1_;
  double t2_;
};

enum class SRoute { Quadrature2d, Formula1d, Laplace };

const char* to_string(SRoute r) noexcept;

struct STransformResult {
  cplx value;
  SRoute route;
  double eta;
  double tau;
  double s;
  double error_estimate;
  /// |value| * tau * exp(-tau phi(eta, eta, pi)).
  double b3_estimate;
};

/// Which plane the 2D route integrates over: the real plane (z variable,
/// P = i) or the slice through the critical point (P variable, z = i).
enum class QuadratureContour { Real, Descent, Auto };

STransformResult selberg_S_quadrature(double eta, double tau, double s, const QuadratureSpec& spec = {},
                                      QuadratureContour contour = QuadratureContour::Auto);

/// One-dimensional route through the radial reduction. tau <= 30.
STransformResult selberg_S_formula(double eta, double tau, double s, const QuadratureSpec& spec = {});

/// 2 pi * int_1^inf exp(-k u) (1 - T)^a 2F1(a - tau, a + tau; 1; T) du
/// with T = (u - 1) / (u + 1).
cplx selberg_radial_integral(double k, double tau, cplx a, const QuadratureSpec& spec = {});

/// Leading term of the steepest-descent expansion at the complex critical
/// point.
STransformResult laplace_asymptote_S(double eta, double tau, double s);

/// Formula for tau <= 10, 2D descent quadrature up to tau = 200, Laplace
/// beyond.
STransformResult selberg_S(double eta, double tau, double s, const QuadratureSpec& spec = {});

/// int u(z) K^tau_eta(z, P) dA(z) for P in the tube.
cplx continue_eigenfunction(const ScalarField& u, double eta, double tau, const CPoint& P,
                            const QuadratureSpec& spec = {});

/// g(eta) |S(eta, tau, s)|^2 exp(-2 tau phi(t(P), eta, theta(P))).
double b_weight_integrand(const HoroCoords& hc, const Mollifier& g, double tau, double s, double eta,
                          const QuadratureSpec& spec = {});

/// int g(eta) |S|^2 exp(-2 tau phi(t, eta, theta)) d eta. Needs t(P) in
/// (t1, t2) and the support inside t(P) +- 0.1.
double b_weight(const CPoint& P, const Mollifier& g, double tau, double s, const QuadratureSpec& spec = {});

}  // namespace hyptube
