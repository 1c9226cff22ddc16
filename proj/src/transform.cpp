#include "hyptube/transform.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "hyptube/error.hpp"
#include "hyptube/kernel.hpp"

namespace hyptube {

namespace {

constexpr cplx I{0.0, 1.0};
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_params(double eta, double tau) {
  if (!(eta > 0.0 && eta < 1.0)) fail(ErrorKind::Domain, "eta must lie in (0, 1)");
  if (!(tau >= 0.0) || !std::isfinite(tau)) fail(ErrorKind::Domain, "tau must be finite and >= 0");
}

double b3_of(cplx value, double eta, double tau) {
  return std::abs(value) * tau * std::exp(-tau * phi_diagonal(eta, std::numbers::pi));
}

}  // namespace

const char* to_string(SRoute r) noexcept {
  switch (r) {
    case SRoute::Quadrature2d: return "quadrature2d";
    case SRoute::Formula1d: return "formula1d";
    case SRoute::Laplace: return "laplace";
  }
  return "?";
}

cplx hyp2f1(cplx a, cplx b, cplx c, double x) {
  if (!(x >= 0.0 && x < 1.0)) fail(ErrorKind::Domain, "hyp2f1: x must lie in [0, 1)");
  if (c.imag() == 0.0 && c.real() <= 0.0 && c.real() == std::round(c.real())) {
    fail(ErrorKind::Domain, "hyp2f1: c is a non-positive integer");
  }
  cplx sum = 1.0, term = 1.0;
  if (x == 0.0) return sum;
  const double big = std::abs(a) + std::abs(b);
  for (int n = 0; n < 100000; ++n) {
    term *= (a + double(n)) * (b + double(n)) / ((c + double(n)) * double(n + 1)) * x;
    sum += term;
    if (term == cplx(0.0)) return sum;
    if (n > big && std::abs(term) <= 1e-17 * (1.0 - x) * std::abs(sum)) return sum;
  }
  throw AccuracyError("hyp2f1: series did not converge in 1e5 terms", sum.real(), sum.imag(), std::abs(term));
}

Mollifier::Mollifier(double t1, double t2) : t1_(t1), t2_(t2) {
  if (!(0.0 < t1 && t1 < t2 && t2 < 1.0)) fail(ErrorKind::Domain, "mollifier needs 0 < t1 < t2 < 1");
}

double Mollifier::operator()(double t) const {
  if (!(t > t1_ && t < t2_)) return 0.0;
  const double u = (2.0 * t - t1_ - t2_) / (t2_ - t1_);
  return std::exp(-1.0 / (1.0 - u * u));
}

cplx selberg_radial_integral(double k, double tau, cplx a, const QuadratureSpec& spec) {
  if (!(k > 0.0)) fail(ErrorKind::Domain, "radial integral needs a positive decay rate");
  const cplx A = a - tau, B = a + tau;
  // exp(-k u) = exp(-k) exp(-k (u - 1)); the first factor is applied last
  auto g = [&](double u) -> cplx {
    const double w = std::exp(-k * (u - 1.0));
    if (w < 1e-300) return 0.0;
    const double T = (u - 1.0) / (u + 1.0);
    return w * std::exp(a * std::log(2.0 / (u + 1.0))) * hyp2f1(A, B, 1.0, T);
  };
  const QuadratureResult r = integrate_radial(g, k, spec);
  return kTwoPi * std::exp(-k) * r.value;
}

STransformResult selberg_S_formula(double eta, double tau, double s, const QuadratureSpec& spec) {
  check_params(eta, tau);
  if (tau > 30.0) fail(ErrorKind::RouteUnavailable, "series route is limited to tau <= 30");
  if (!(tau > 0.0)) fail(ErrorKind::Domain, "S diverges at tau = 0");
  const SpectralParams sp(tau, s);
  const cplx v = std::exp(I * std::numbers::pi * tau) *
                 selberg_radial_integral(tau * c_param(eta), tau, sp.exponent(), spec);
  return {v, SRoute::Formula1d, eta, tau, s, spec.rel_tol * std::abs(v), b3_of(v, eta, tau)};
}

STransformResult selberg_S_quadrature(double eta, double tau, double s, const QuadratureSpec& spec,
                                      QuadratureContour contour) {
  check_params(eta, tau);
  if (!(tau > 0.0)) fail(ErrorKind::Domain, "S diverges at tau = 0");
  const SpectralParams sp(tau, s);
  const cplx a = sp.exponent();
  const double c = c_param(eta);
  if (contour == QuadratureContour::Auto) contour = tau <= 10.0 ? QuadratureContour::Real : QuadratureContour::Descent;

  const HPoint i(0.0, 1.0);
  QuadratureResult r;
  if (contour == QuadratureContour::Real) {
    const CPoint Pi = CPoint::embed(i);
    auto f = [&](const HPoint& z) -> cplx {
      return std::exp(a * std::log(z.y()) + tau * log_kernel(z, Pi, eta).phi);
    };
    r = integrate_hyperbolic(f, i, tau * c, spec);
  } else {
    const HoroFrame fr = horocycle_frame(std::numbers::pi, eta);
    auto f = [&](const HPoint& w) -> cplx {
      const CPoint P = fr.at(w);
      return std::exp(a * std::log(P.Y) + tau * log_kernel(i, P, eta).phi);
    };
    r = integrate_hyperbolic(f, i, tau * c * (1.0 - eta * eta), spec);
  }
  return {r.value, SRoute::Quadrature2d, eta, tau, s, r.error_estimate, b3_of(r.value, eta, tau)};
}

STransformResult laplace_asymptote_S(double eta, double tau, double s) {
  check_params(eta, tau);
  if (!(tau > 0.0)) fail(ErrorKind::Domain, "Laplace route needs tau > 0");
  const SpectralParams sp(tau, s);
  const CriticalPoint cp = complex_critical_point(eta);
  const double det = std::abs(cp.hessian.determinant());
  const cplx v = (kTwoPi / tau) / std::sqrt(det) * std::exp(tau * cp.phi + (sp.exponent() - 2.0) * std::log(cp.P.Y));
  // relative size of the first neglected term is O(1/tau)
  return {v, SRoute::Laplace, eta, tau, s, std::abs(v) / tau, b3_of(v, eta, tau)};
}

STransformResult selberg_S(double eta, double tau, double s, const QuadratureSpec& spec) {
  if (tau <= 10.0) return selberg_S_formula(eta, tau, s, spec);
  if (tau <= 200.0) return selberg_S_quadrature(eta, tau, s, spec, QuadratureContour::Descent);
  return laplace_asymptote_S(eta, tau, s);
}

cplx continue_eigenfunction(const ScalarField& u, double eta, double tau, const CPoint& P, const QuadratureSpec& spec) {
  check_params(eta, tau);
  if (!(tau > 0.0)) fail(ErrorKind::Domain, "continuation needs tau > 0");
  if (!in_tube(P, 1.0)) fail(ErrorKind::Domain, "continue_eigenfunction: P is outside the tube");
  const HoroCoords hc = tube_coords_from_point(P);
  const double k = tau * c_param(eta) * (1.0 - hc.t * hc.t);
  auto f = [&](const HPoint& z) -> cplx { return u(z) * std::exp(tau * log_kernel(z, P, eta).phi); };
  return integrate_hyperbolic(f, hc.base(), k, spec).value;
}

double b_weight_integrand(const HoroCoords& hc, const Mollifier& g, double tau, double s, double eta,
                          const QuadratureSpec& spec) {
  const double ge = g(eta);
  if (ge == 0.0) return 0.0;
  const double theta = hc.theta.value_or(std::numbers::pi);
  const double S = std::abs(selberg_S(eta, tau, s, spec).value);
  const double ph = phi_max(hc.t, eta, theta);
  // |S| and exp(-tau phi) are far apart in size; combine in logs
  return ge * std::exp(2.0 * (std::log(S) - tau * ph));
}

double b_weight(const CPoint& P, const Mollifier& g, double tau, double s, const QuadratureSpec& spec) {
  const HoroCoords hc = tube_coords_from_point(P);
  if (!(hc.t > g.t1() && hc.t < g.t2())) fail(ErrorKind::Domain, "b_weight: t(P) must lie inside the mollifier support");
  if (g.t1() < hc.t - 0.1 || g.t2() > hc.t + 0.1) {
    fail(ErrorKind::Domain, "b_weight: mollifier support must stay within t(P) +- 0.1");
  }
  QuadratureSpec inner = spec;
  inner.rel_tol = std::max(spec.rel_tol, 1e-9);
  QuadratureSpec outer = spec;
  outer.rel_tol = std::max(spec.rel_tol, 1e-7);
  auto f = [&](double eta) -> cplx { return b_weight_integrand(hc, g, tau, s, eta, inner); };
  return integrate_1d(f, g.t1(), g.t2(), outer).value.real();
}

}  // namespace hyptube
