#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hyptube/eigenlab.hpp"
#include "hyptube/error.hpp"
#include "hyptube/kernel.hpp"
#include "hyptube/transform.hpp"

using namespace hyptube;
constexpr double pi = std::numbers::pi;
constexpr cplx I{0, 1};

static double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

TEST_CASE("hypergeometric series") {
  CHECK(hyp2f1(0.3, 2.0, 1.5, 0.0) == cplx(1.0));
  CHECK(hyp2f1(1, 1, 2, 0.5).real() == doctest::Approx(2 * std::log(2.0)).epsilon(1e-14));
  CHECK(hyp2f1(1, 1, 2, 0.5).real() == doctest::Approx(1.3862944).epsilon(1e-7));
  const cplx a(0.5, 2.0), b(-1.0, 0.7);
  CHECK(rel(hyp2f1(a, b, 1.0, 0.6), hyp2f1(b, a, 1.0, 0.6)) < 1e-12);
  // terminating series
  CHECK(std::abs(hyp2f1(-2.0, 3.0, 1.0, 0.5) - (1.0 - 3.0 + 1.5)) < 1e-14);
  CHECK_THROWS_AS(hyp2f1(1, 1, -2.0, 0.5), Error);
  CHECK_THROWS_AS(hyp2f1(1, 1, 1, 1.0), Error);
}

TEST_CASE("S against an independent high-precision evaluation") {
  struct Row {
    double eta, tau, s, re, im;
  };
  const Row rows[] = {{0.5, 5, 0.5, -4.3774629198380622e-6, 0.0},
                      {0.5, 2.3, 1.0, 0.0031170292617670471, 0.0042902227214757675},
                      {0.4, 10, 1.0, 1.715309474786538e-13, 0.0},
                      {0.6, 2, 0.5, 0.026556687629569527, 0.0}};
  for (const Row& r : rows) {
    const cplx want(r.re, r.im);
    CHECK(rel(selberg_S_formula(r.eta, r.tau, r.s).value, want) < 1e-9);
    CHECK(rel(selberg_S_quadrature(r.eta, r.tau, r.s).value, want) < 1e-8);
  }
}

TEST_CASE("S on the 18-point grid") {
  for (double eta : {0.4, 0.5, 0.6})
    for (double tau : {2.0, 5.0, 10.0})
      for (double s : {0.5, 1.0}) {
        const STransformResult q = selberg_S_quadrature(eta, tau, s), f = selberg_S_formula(eta, tau, s);
        CHECK(rel(q.value, f.value) < 1e-6);
        CHECK(std::abs(q.value) > 0);
        CHECK(q.error_estimate >= 0);
        CHECK(q.route == SRoute::Quadrature2d);
        CHECK(f.route == SRoute::Formula1d);
        // real exponent: the radial integral is real
        const cplx radial = f.value * std::exp(-I * pi * tau);
        CHECK(std::abs(radial.imag()) <= 1e-10 * std::abs(radial));
      }
}

TEST_CASE("radial integral at tau = 0") {
  const double c = c_param(0.5);
  const cplx v = selberg_radial_integral(c, 0.0, 0.0);
  CHECK(v.real() == doctest::Approx(2 * pi * std::exp(-c) / c).epsilon(1e-12));
  CHECK(v.real() == doctest::Approx(0.34883998116328511).epsilon(1e-12));
}

TEST_CASE("route guards") {
  CHECK_THROWS_AS(selberg_S_formula(0.5, 31, 0.5), Error);
  try {
    selberg_S_formula(0.5, 40, 0.5);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RouteUnavailable);
  }
  CHECK_THROWS_AS(selberg_S_formula(1.2, 5, 0.5), Error);
  CHECK(selberg_S(0.5, 5, 0.5).route == SRoute::Formula1d);
  CHECK(selberg_S(0.5, 50, 0.5).route == SRoute::Quadrature2d);
  CHECK(selberg_S(0.5, 500, 0.5).route == SRoute::Laplace);
}

TEST_CASE("Laplace asymptote") {
  for (double eta : {0.4, 0.5, 0.6}) {
    double prev = 1e300;
    for (double tau : {20.0, 40.0, 80.0}) {
      const double q = std::abs(selberg_S_quadrature(eta, tau, 0.5).value);
      const STransformResult l = laplace_asymptote_S(eta, tau, 0.5);
      const double r = std::abs(l.value) / q;
      if (tau == 40.0) {
        CHECK(r >= 0.8);
        CHECK(r <= 1.25);
      }
      CHECK(std::abs(r - 1) < prev);
      prev = std::abs(r - 1);
      CHECK(l.b3_estimate > 0);
    }
  }
}

TEST_CASE("descent contour values") {
  // frozen |S| at tau = 80, s = 1/2
  const double want[][2] = {{0.4, 1.512242902e-99}, {0.5, 1.017992815e-84}, {0.6, 1.029270427e-75}};
  for (const auto& w : want) CHECK(std::abs(selberg_S_quadrature(w[0], 80, 0.5).value) == doctest::Approx(w[1]).epsilon(1e-8));
}

TEST_CASE("continuation of the model eigenfunction") {
  const SpectralParams sp(5.0, 0.5);
  const cplx a = sp.exponent();
  const ScalarField u = [a](const HPoint& z) { return std::exp(a * std::log(z.y())); };
  const cplx S = selberg_S(0.5, 5.0, 0.5).value;
  const HPoint z(0.3, 1.2);
  CHECK(rel(continue_eigenfunction(u, 0.5, 5.0, CPoint::embed(z)), S * u(z)) < 1e-6);
  const CPoint P = horocycle_point_c(z, 2.0, 0.3);
  CHECK(rel(continue_eigenfunction(u, 0.5, 5.0, P), S * std::exp(a * std::log(P.Y))) < 1e-5);
  CHECK_THROWS_AS(continue_eigenfunction(u, 0.5, 5.0, CPoint{cplx(0, 2), 1.0}), Error);
}

TEST_CASE("continuation of a gauge translate") {
  EigenSpec es(SpectralParams(4.0, 1.0));
  es.add(cplx(0.5, -0.2), Isometry(1.1, 0.3, -0.2, (1 + 0.3 * -0.2) / 1.1));
  const ScalarField u = [&](const HPoint& z) { return eval_eigen(es, z); };
  const CPoint P = horocycle_point_c(HPoint(-0.2, 0.9), 0.7, 0.25);
  CHECK(rel(continue_eigenfunction(u, 0.45, 4.0, P), selberg_S(0.45, 4.0, 1.0).value * eval_eigen_c(es, P)) < 1e-4);
}

TEST_CASE("mollifier") {
  const Mollifier g(0.3, 0.5);
  CHECK(g(0.3) == 0.0);
  CHECK(g(0.5) == 0.0);
  CHECK(g(0.2) == 0.0);
  CHECK(g(0.4) == doctest::Approx(std::exp(-1.0)));
  CHECK(g(0.3 + 1e-4) < 1e-200);
  CHECK_THROWS_AS(Mollifier(0.5, 0.3), Error);
}

TEST_CASE("B weight") {
  const CPoint P = horocycle_point_c(HPoint(0, 1), 1.2, 0.4);
  const HoroCoords hc = tube_coords_from_point(P);
  const Mollifier g(0.32, 0.48);
  CHECK(b_weight_integrand(hc, g, 10, 0.5, 0.31) == 0.0);
  CHECK(b_weight_integrand(hc, g, 10, 0.5, 0.49) == 0.0);
  CHECK(b_weight(P, g, 10, 0.5) > 0);
  CHECK_THROWS_AS(b_weight(P, Mollifier(0.1, 0.35), 10, 0.5), Error);
  CHECK_THROWS_AS(b_weight(P, Mollifier(0.2, 0.7), 10, 0.5), Error);

  // frozen gap (1/tau) log B - B0 at t = 0.4, support t +- 0.08
  const Mollifier h(0.32, 0.48);
  const double want[][2] = {{10, -0.60875}, {20, -0.37446}};
  for (const auto& w : want) {
    const double gap = std::log(b_weight(P, h, w[0], 0.5)) / w[0] - B0(hc.t, *hc.theta);
    CHECK(gap == doctest::Approx(w[1]).epsilon(2e-4));
  }
}

TEST_CASE("B integrand peaks near t") {
  const CPoint P = horocycle_point_c(HPoint(0.2, 1.1), 2.5, 0.4);
  const HoroCoords hc = tube_coords_from_point(P);
  const Mollifier g(0.32, 0.48);
  double best = -1, arg = 0;
  for (int k = 1; k < 160; ++k) {
    const double eta = 0.32 + 0.16 * k / 160;
    const double v = b_weight_integrand(hc, g, 40, 0.5, eta);
    if (v > best) best = v, arg = eta;
  }
  CHECK(std::abs(arg - hc.t) <= 0.02);
}
