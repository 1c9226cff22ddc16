#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hyptube/eigenlab.hpp"
#include "hyptube/error.hpp"
#include "hyptube/kernel.hpp"
#include "hyptube/verify.hpp"

using namespace hyptube;
constexpr double pi = std::numbers::pi;
constexpr cplx I{0, 1};

static Isometry iso(double a, double b, double c) { return Isometry(a, b, c, (1 + b * c) / a); }

TEST_CASE("model eigenfunction") {
  EigenSpec es(SpectralParams(3.0, 0.8));
  es.add(1.0, Isometry::identity());
  CHECK(std::abs(eval_eigen(es, HPoint(0.7, 1.0)) - 1.0) < 1e-15);
  const cplx a = es.params.exponent();
  const HPoint z(0.1, 2.3);
  CHECK(std::abs(eval_eigen(es, z) - std::exp(a * std::log(2.3))) < 1e-14);
}

TEST_CASE("gauge translates") {
  const Isometry g = iso(1.3, 0.2, -0.7);
  EigenSpec t(SpectralParams(6.0, 1.1)), m(SpectralParams(6.0, 1.1));
  t.add(1.0, g);
  m.add(1.0, Isometry::identity());
  for (const HPoint z : {HPoint(0, 1), HPoint(0.4, 0.5), HPoint(-1, 3)}) {
    CHECK(std::abs(eval_eigen(t, z)) == doctest::Approx(std::abs(eval_eigen(m, mobius_apply(g, z)))).epsilon(1e-13));
  }
}

TEST_CASE("eigen residual") {
  Rng rng(3);
  for (int k = 0; k < 20; ++k) {
    const SpectralParams sp(rng.uniform(0, 8), rng.uniform(0, 2));
    EigenSpec es(sp);
    es.add(cplx(rng.uniform(-1, 1), rng.uniform(-1, 1)), iso(rng.uniform(0.5, 1.5), rng.uniform(-1, 1), rng.uniform(-1, 1)));
    es.add(1.0, iso(rng.uniform(0.5, 1.5), rng.uniform(-1, 1), rng.uniform(-1, 1)));
    const ScalarField u = [&](const HPoint& z) { return eval_eigen(es, z); };
    const HPoint z(rng.uniform(-1, 1), rng.uniform(0.5, 2));
    const cplx r = apply_D_tau_fd(u, sp.tau(), z) - sp.s() * sp.s() * u(z);
    CHECK(std::abs(r) <= 1e-4 * std::max(std::abs(sp.s() * sp.s() * u(z)), std::abs(u(z))));
  }
}

TEST_CASE("complexification") {
  EigenSpec es(SpectralParams(2.5, 0.6));
  es.add(1.0, Isometry::identity());
  for (double t : {0.1, 0.5, 0.9}) CHECK(std::abs(eval_eigen_c(es, {I * t, 1.0}) - 1.0) < 1e-14);
  es.add(cplx(0.3, 0.4), iso(0.9, 0.5, 0.2));
  const HPoint z(0.25, 0.75);
  CHECK(std::abs(eval_eigen_c(es, CPoint::embed(z)) - eval_eigen(es, z)) < 1e-12 * std::abs(eval_eigen(es, z)));
}

TEST_CASE("growth table") {
  EigenSpec es(SpectralParams(10, 0.7));
  es.add(1.0, Isometry::identity());
  const auto pi_rows = growth_profile(es, theta_slice(HPoint(0, 1), 0.05, 0.8, pi, pi, 8, 1));
  REQUIRE(pi_rows.size() == 8);
  for (const GrowthRow& r : pi_rows) CHECK(r.b0 == 0.0);

  const auto rows = growth_profile(es, theta_slice(HPoint(0.3, 1.1), 1e-4, 0.6, 0.0, 2 * pi, 6, 7));
  REQUIRE(rows.size() == 42);
  for (const GrowthRow& r : rows) {
    CHECK(r.b0 <= 0.0);
    CHECK(r.abs_u_sq > 0);
    CHECK(r.normalized == doctest::Approx(std::sqrt(10.0) * r.abs_u_sq * std::exp(10 * r.b0)));
    CHECK(r.rate_gap == doctest::Approx(std::log(r.abs_u_sq) / 10 + r.b0));
    if (r.t < 1e-3) CHECK(std::abs(r.b0) < 1e-3);
  }
  // one eigenstate: (1/tau) log|u|^2 tends to zero as tau grows
  double prev = 1e300;
  for (double tau : {10.0, 40.0, 160.0}) {
    EigenSpec m(SpectralParams(tau, 0.7));
    m.add(1.0, Isometry::identity());
    const auto g = growth_profile(m, theta_slice(HPoint(0, 1.5), 0.3, 0.3, 1.0, 1.0, 1, 1));
    const double v = std::abs(std::log(g[0].abs_u_sq) / tau);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("slice validation") {
  SliceSpec bad = line_slice({I * 0.25, 1.0}, {I, 0.0}, -1, 1, -1, 1, 8);
  CHECK_THROWS_AS(bad.validate(), Error);
  try {
    bad.validate();
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotInTube);
  }
  CHECK_NOTHROW(line_slice({I * 0.25, 1.0}, {I * 0.1, 0.15}, -1.5, 1.5, -1.2, 1.2, 8).validate());
}

TEST_CASE("zero counting on model functions") {
  NodalReport r = nodal_slice_zeros([](cplx w) { return w * w * w - w; }, -2, 2, -2, 2);
  CHECK(r.total_count == 3);
  REQUIRE(r.zeros.size() == 3);
  const double want[] = {-1, 0, 1};
  for (int k = 0; k < 3; ++k) {
    CHECK(std::abs(r.zeros[k].w - want[k]) < 1e-10);
    CHECK(r.zeros[k].multiplicity == 1);
  }
  r = nodal_slice_zeros([](cplx w) { return (w - 0.3) * (w - 0.3); }, -2, 2, -2, 2);
  REQUIRE(r.zeros.size() == 1);
  CHECK(r.zeros[0].multiplicity == 2);
  CHECK(std::abs(r.zeros[0].w - 0.3) < 1e-7);
  r = nodal_slice_zeros([](cplx w) { return std::exp(w); }, -2, 2, -2, 2);
  CHECK(r.total_count == 0);
  CHECK(r.zeros.empty());
  CHECK(r.area == doctest::Approx(16));
}

TEST_CASE("polynomial corpus") {
  Rng rng(99);
  for (int k = 0; k < 50; ++k) {
    const int deg = 1 + k % 6;
    std::vector<cplx> roots;
    std::vector<int> mult;
    for (int d = 0; d < deg;) {
      const int m = (rng.next() % 3 == 0 && d + 2 <= deg) ? 2 : 1;
      roots.push_back({rng.uniform(-1.8, 1.8), rng.uniform(-1.8, 1.8)});
      mult.push_back(m);
      d += m;
    }
    const AnalyticFn f = [&](cplx w) {
      cplx p = 1;
      for (std::size_t i = 0; i < roots.size(); ++i)
        for (int j = 0; j < mult[i]; ++j) p *= w - roots[i];
      return p;
    };
    const NodalReport r = nodal_slice_zeros(f, -2, 2, -2, 2);
    CHECK(r.total_count == deg);
    REQUIRE(r.zeros.size() == roots.size());
    for (std::size_t i = 0; i < roots.size(); ++i) {
      int hits = 0;
      for (const NodalZero& z : r.zeros) hits += std::abs(z.w - roots[i]) < 1e-6 && z.multiplicity == mult[i];
      CHECK(hits == 1);
    }
  }
}

TEST_CASE("B0 density by two discretizations") {
  const SliceSpec sl = line_slice(horocycle_point_c(HPoint(0, 1), pi, 0.35), {cplx(0.1, 0.05), cplx(0.08, 0.01)}, -1, 1, -1, 1, 16);
  const double a = b0_density_flux(sl), b = b0_density_grid(sl, 64);
  CHECK(std::abs(a - b) < 1e-4);
  CHECK(std::isfinite(a));
  CHECK_THROWS_AS(b0_density_grid(sl, 7), Error);
  CHECK_THROWS_AS(b0_density_flux(theta_slice(HPoint(0, 1), 0.1, 0.2, 0, 1, 4, 4)), Error);
}

TEST_CASE("eigen slice counts") {
  const SliceSpec sl = line_slice({I * 0.25, 1.0}, {I * 0.1, 0.15}, -1.5, 1.5, -1.2, 1.2, 16);
  EigenSpec one(SpectralParams(20, 0.4));
  one.add(1.0, Isometry::identity());
  // a single term never vanishes
  CHECK(nodal_density_vs_b0(one, sl).total_count == 0);

  EigenSpec two(SpectralParams(20, 0.4));
  two.add(1.0, iso(1.1, 0.2, 0.3)).add(-0.8, iso(0.9, -0.3, 0.2));
  NodalSpec a, b;
  a.grid = 256;
  b.grid = 512;
  const NodalReport ra = nodal_density_vs_b0(two, sl, a), rb = nodal_density_vs_b0(two, sl, b);
  CHECK(ra.total_count == rb.total_count);
  CHECK(ra.zeros.size() == rb.zeros.size());
  CHECK(ra.b0_density_integral == rb.b0_density_integral);
}

TEST_CASE("conjugate pairs") {
  EigenSpec es(SpectralParams(20, 0.4));
  es.add(1.0, iso(1.2, 0.3, -0.4)).add(1.0, iso(1.2, -0.3, 0.4));
  es.add(-0.6, iso(0.85, -0.2, 0.1)).add(-0.6, iso(0.85, 0.2, -0.1));
  const SliceSpec sl = line_slice({I * 0.25, 1.0}, {I * 0.1, 0.15}, -1.5, 1.5, -1.2, 1.2, 16);
  NodalSpec ns;
  ns.grid = 128;
  const NodalReport r = nodal_density_vs_b0(es, sl, ns);
  for (const NodalZero& z : r.zeros) {
    double best = 1e300;
    for (const NodalZero& o : r.zeros) best = std::min(best, std::abs(o.w - std::conj(z.w)));
    CHECK(best < 1e-8);
  }
}

static NodalReport roots_report(const std::vector<cplx>& r, const std::vector<int>& m, int grid = 64) {
  const AnalyticFn f = [&](cplx w) {
    cplx p = 1.0;
    for (std::size_t i = 0; i < r.size(); ++i)
      for (int j = 0; j < m[i]; ++j) p *= w - r[i];
    return p;
  };
  NodalSpec ns;
  ns.grid = grid;
  return nodal_slice_zeros(f, -2, 2, -2, 2, ns);
}

TEST_CASE("zero cluster next to a grid edge") {
  // three zeros within 0.02 of one another, just below y = -1.1875
  const NodalReport r = roots_report({{-0.914229, 1.505481}, {-0.253081, 0.075135}, {0.960294, -1.205641},
                                      {0.973639, -1.206243}, {0.641099, -0.868466}},
                                     {1, 1, 2, 1, 1});
  CHECK(r.total_count == 6);
  REQUIRE(r.zeros.size() == 5);
  int doubles = 0;
  for (const NodalZero& z : r.zeros) doubles += z.multiplicity == 2;
  CHECK(doubles == 1);
}

TEST_CASE("double zero just off a grid line") {
  // 9e-4 above y = 0.6875 and 3e-4 above y = -0.375
  CHECK(roots_report({{0.810340, -0.308818}, {1.177939, 0.688436}}, {1, 2}).total_count == 3);
  const NodalReport r = roots_report({{0.244422, -0.374704}, {0.580129, -0.357363}, {0.613216, -0.078439},
                                      {0.036734, -0.919104}},
                                     {2, 1, 1, 2});
  CHECK(r.total_count == 6);
  CHECK(r.zeros.size() == 4);
}
