#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "hyptube/error.hpp"
#include "hyptube/kernel.hpp"

using namespace hyptube;
constexpr double pi = std::numbers::pi;
constexpr cplx I{0, 1};

static double dist(const CPoint& a, const CPoint& b) { return std::sqrt(std::norm(a.X - b.X) + std::norm(a.Y - b.Y)); }

TEST_CASE("c_t") {
  CHECK(c_param(0.5) == doctest::Approx(32.0 / 15.0).epsilon(1e-15));
  CHECK(c_param(1 - 1e-9) == doctest::Approx(4.0 / 3.0).epsilon(1e-8));
  CHECK(c_param(0.01) > 99);
  CHECK(c_param(0.3) > c_param(0.31));
  CHECK_THROWS_AS(c_param(0.0), Error);
  CHECK_THROWS_AS(c_param(1.0), Error);
}

TEST_CASE("log kernel values") {
  const HPoint i(0, 1);
  const double t = 0.5;
  const KernelEval k = log_kernel(i, {I * t, 1.0}, t);
  const cplx want = std::log((2 - t) / (2 + t)) + I * pi - c_param(t) * (1 - t * t / 2);
  CHECK(std::abs(k.phi - want) < 1e-14);
  CHECK(k.phi.real() == doctest::Approx(-2.377492290433).epsilon(1e-12));
  CHECK(std::abs(k.phi.real() - phi_diagonal(t, pi)) < 1e-14);
  const HPoint z(0.3, 0.7), w(-0.2, 1.4);
  CHECK(log_kernel(z, CPoint::embed(w), 0.4).phi.real() == doctest::Approx(-c_param(0.4) * cosh_dist(z, w)));
}

TEST_CASE("|K| is invariant on real points") {
  const Isometry g(0.8, 0.5, -0.3, (1 + 0.5 * -0.3) / 0.8);
  const HPoint z(0.1, 0.9), w(0.6, 1.3);
  const double a = log_kernel(z, CPoint::embed(w), 0.5).phi.real();
  const double b = log_kernel(mobius_apply(g, z), CPoint::embed(mobius_apply(g, w)), 0.5).phi.real();
  CHECK(std::abs(a - b) < 1e-13);
}

TEST_CASE("maximizer") {
  const HPoint z(0.3, 1.4);
  for (double th : {0.4, 2.0, pi, 5.5}) {
    const MaximizerResult m = kernel_max(z, 0.6, 0.6, th);
    CHECK(dist(m.Q, horocycle_point_c(z, th, 0.6)) < 1e-8);
    CHECK(std::abs(m.basepoint.x() - z.x()) < 1e-8);
    CHECK(m.phi_max == doctest::Approx(phi_diagonal(0.6, th)).epsilon(1e-10));
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(m.hessian);
    CHECK(es.eigenvalues().maxCoeff() < 0);
  }
  for (double eta : {0.42, 0.5, 0.58}) CHECK(std::abs(kernel_max(HPoint(0, 1), 0.5, eta, pi).basepoint.x()) < 1e-10);
  CHECK_THROWS_AS(kernel_max(z, 0.5, 0.7, 1.0), Error);
}

TEST_CASE("phi and B0 closed forms") {
  CHECK(phi_max(0.5, 0.5, pi) == doctest::Approx(std::log(0.6) - 3.5 / 1.875).epsilon(1e-10));
  CHECK(B0(0.5, 0.0) == doctest::Approx(std::log(1.0 / 9.0)).epsilon(1e-14));
  CHECK(B0(0.5, 0.0) == doctest::Approx(-2.1972246).epsilon(1e-7));
  for (double t : {0.0, 0.3, 0.9}) CHECK(B0(t, pi) == 0.0);
  for (double th : {0.0, 1.0, 3.0}) CHECK(B0(0.0, th) == 0.0);
  for (double th : {0.0, 1.0, 2.0, 4.0}) CHECK(B0(0.6, th) < 0.0);
  const double a = phi_max(0.5, 0.47, 1.1) - phi_max(0.5, 0.47, 2.9);
  CHECK(a == doctest::Approx(-(B0(0.5, 1.1) - B0(0.5, 2.9)) / 2).epsilon(1e-9));
}

TEST_CASE("f' and f'' at the diagonal") {
  // oracle values of (3t^2 - 4) / (t (t^4 - 3t^2 + 4))
  const double want[] = {-3.326110412598201, -1.9622641509433962, -1.3047491838871212};
  const double ts[] = {0.3, 0.5, 0.7};
  for (int k = 0; k < 3; ++k) {
    const double t = ts[k];
    auto f = [t](double e) { return phi_max(e, e, pi) - phi_max(t, e, pi); };
    auto d2 = [&](double h) { return (f(t + h) - 2 * f(t) + f(t - h)) / (h * h); };
    const double h = 1e-4;
    CHECK(std::abs((f(t + h) - f(t - h)) / (2 * h)) < 1e-6);
    CHECK(std::abs((4 * d2(1e-3) - d2(2e-3)) / 3 - want[k]) < 1e-4);
  }
}

TEST_CASE("dy/deta") {
  const double want[] = {-0.14967497, -0.24528302, -0.31966355};
  const double ts[] = {0.3, 0.5, 0.7};
  for (int k = 0; k < 3; ++k) {
    const double t = ts[k], h = 1e-4;
    auto y = [t](double e) { return kernel_max(HPoint(0, 1), t, e, pi).basepoint.y(); };
    CHECK(std::abs((y(t + h) - y(t - h)) / (2 * h) - want[k]) < 1e-4);
  }
}

TEST_CASE("t_map and its inverse") {
  const HPoint i(0, 1);
  for (double th : {0.5, 2.0, 4.4}) {
    const CotangentVector xi = t_map(i, 0.4, 0.4, th);
    CHECK(std::abs(xi.xi1 + 1 + std::cos(th)) < 1e-10);
    CHECK(std::abs(xi.xi2 + std::sin(th)) < 1e-10);
    const EtaTheta r = theta_eta_inverse(i, 0.4, xi);
    CHECK(std::abs(r.eta - 0.4) < 1e-8);
    CHECK(std::abs(r.theta - th) < 1e-8);
  }
  const CotangentVector z0 = t_map(i, 0.4, 0.4, pi);
  CHECK(std::abs(z0.xi1) < 1e-12);
  CHECK(std::abs(z0.xi2) < 1e-12);
  const CotangentVector a = t_map(i, 0.5, 0.52, 1.3), b = t_map(HPoint(0, 2), 0.5, 0.52, 1.3);
  CHECK(std::abs(b.xi1 - a.xi1 / 2) < 1e-10);
  CHECK(std::abs(b.xi2 - a.xi2 / 2) < 1e-10);
  const EtaTheta r = theta_eta_inverse(i, 0.5, a);
  CHECK(std::abs(r.eta - 0.52) < 1e-8);
  CHECK(std::abs(r.theta - 1.3) < 1e-8);
  // H_{-1} = 0.7
  const double rho = std::sqrt(1.4);
  CHECK_THROWS_AS(theta_eta_inverse(i, 0.5, {i, -1 + rho, 0.0}), Error);
}

TEST_CASE("complex critical point") {
  // |det Hessian| frozen from an independent evaluation
  const double dets[][2] = {{0.2, 24.742373227}, {0.5, 3.697777778}, {0.8, 1.151502268}};
  for (const auto& d : dets) {
    const CriticalPoint cp = complex_critical_point(d[0]);
    CHECK(dist(cp.P, {I * d[0], 1.0}) < 1e-8);
    CHECK(std::abs(cp.hessian.determinant()) == doctest::Approx(d[1]).epsilon(1e-8));
    const PhaseJet j = phase_jet(HPoint(0, 1), {I * d[0], 1.0}, d[0]);
    CHECK(std::abs(j.dX) < 1e-10);
    CHECK(std::abs(j.dY) < 1e-10);
  }
}

TEST_CASE("maximizer with flat top at large t") {
  // full Newton steps below the resolution of the value
  const MaximizerResult m = kernel_max(HPoint(0, 0.863), 0.783881, 0.773881, 0.318288);
  const MaximizerResult a = kernel_max(HPoint(0, 0.863), 0.783881, 0.768881, 0.318288);
  const MaximizerResult b = kernel_max(HPoint(0, 0.863), 0.783881, 0.778881, 0.318288);
  CHECK(std::abs(m.basepoint.y() - 0.5 * (a.basepoint.y() + b.basepoint.y())) < 1e-4);
  for (double th : {0.24, 0.32, 0.57, 5.64, 5.75, 5.92}) CHECK_NOTHROW(kernel_max(HPoint(0.3, 1.1), 0.9, 0.87, th));
}
