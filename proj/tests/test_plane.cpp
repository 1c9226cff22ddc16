#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hyptube/error.hpp"
#include "hyptube/plane.hpp"

using namespace hyptube;
constexpr double pi = std::numbers::pi;

TEST_CASE("points reject the boundary") {
  CHECK_THROWS_AS(HPoint(0.0, 0.0), Error);
  CHECK_THROWS_AS(HPoint(1.0, -2.0), Error);
  CHECK_NOTHROW(HPoint(1.0, 1e-300));
}

TEST_CASE("mobius action") {
  const HPoint i(0, 1);
  CHECK(mobius_apply(Isometry::identity(), i).z() == cplx(0, 1));
  const HPoint w = mobius_apply(Isometry(1, 1, 0, 1), i);
  CHECK(w.x() == doctest::Approx(1.0));
  CHECK(w.y() == doctest::Approx(1.0));
  for (double th : {0.3, 1.7, pi, 5.0}) {
    const HPoint r = mobius_apply(Isometry::rotation(th), i);
    CHECK(std::abs(r.z() - cplx(0, 1)) < 1e-15);
  }
}

TEST_CASE("isometries are normalized") {
  const Isometry g(2, 1, 1, 3);  // det 5
  CHECK(std::abs(g.a() * g.d() - g.b() * g.c() - 1.0) < 1e-12);
  CHECK_THROWS_AS(Isometry(1, 2, 2, 1), Error);
  const Isometry h = g.compose(g.inverse());
  CHECK(std::abs(h.a() - 1) < 1e-12);
  CHECK(std::abs(h.b()) < 1e-12);
}

TEST_CASE("cosh distance") {
  const HPoint i(0, 1);
  CHECK(cosh_dist(i, i) == 1.0);
  CHECK(cosh_dist(i, HPoint(0, 2)) == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(cosh_dist(i, HPoint(1, 1)) == doctest::Approx(1.5).epsilon(1e-15));
  const HPoint a(0.3, 0.7), b(-1.2, 2.4);
  CHECK(cosh_dist(a, b) == cosh_dist(b, a));
}

TEST_CASE("magnetic hamiltonian and psi1") {
  const HPoint z(0.4, 1.7);
  for (double th = 0; th < 2 * pi; th += 0.37) {
    CHECK(magnetic_hamiltonian(1, {z, (1 + std::cos(th)) / z.y(), std::sin(th) / z.y()}) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(magnetic_hamiltonian(-1, {z, (-1 - std::cos(th)) / z.y(), -std::sin(th) / z.y()}) ==
          doctest::Approx(0.5).epsilon(1e-14));
    const CotangentVector xi = psi1(unit_vector(z, th));
    CHECK(std::abs(magnetic_hamiltonian(1, xi) - 0.5) < 1e-14);
  }
  CHECK(magnetic_hamiltonian(0, {HPoint(0, 1), 1, 0}) == 0.5);
  const CotangentVector v0 = psi1({HPoint(0, 1), 0, 0});
  CHECK(v0.xi1 == 1.0);
  CHECK(v0.xi2 == 0.0);
  const CotangentVector vpi = psi1({HPoint(0, 1), -1, 0});
  CHECK(vpi.xi1 == 0.0);
  CHECK(vpi.xi2 == 0.0);
}

TEST_CASE("spectral parameters") {
  for (double s : {0.0, 0.2, 0.5, 1.0, 3.0}) {
    const SpectralParams sp(1.0, s);
    const cplx e = sp.exponent();
    CHECK(std::abs(e * (e - 1.0) + s * s) < 1e-12);
  }
  CHECK(SpectralParams(0, 1.0).sigma().imag() == 0.0);
  CHECK(SpectralParams(0, 0.3).sigma().imag() > 0.0);
  CHECK_THROWS_AS(SpectralParams(-1, 0.5), Error);
}

TEST_CASE("finite-difference D^tau") {
  const HPoint z(0.2, 1.3);
  const ScalarField one = [](const HPoint&) { return cplx(1.0); };
  CHECK(std::abs(apply_D_tau_fd(one, 0.0, z)) < 1e-12);
  const ScalarField y = [](const HPoint& w) { return cplx(w.y()); };
  CHECK(std::abs(apply_D_tau_fd(y, 3.0, z)) < 1e-6);
  const SpectralParams sp(4.0, 1.2);
  const cplx a = sp.exponent();
  const ScalarField u = [a](const HPoint& w) { return std::exp(a * std::log(w.y())); };
  CHECK(std::abs(apply_D_tau_fd(u, 4.0, z) - 1.44 * u(z)) < 1e-6);
  CHECK_THROWS_AS(apply_D_tau_fd(u, 1.0, HPoint(0, 1e-3), 2e-3), Error);
}
