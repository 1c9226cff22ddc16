#pragma once

#include <functional>
#include <limits>

#include "hyptube/plane.hpp"

namespace hyptube {

struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-300;
  int max_subdivisions = 20000;
  double truncation_margin = 40.0;  // e-foldings of the tail that are dropped

  void validate() const;
};

struct QuadratureResult {
  cplx value;
  double error_estimate = 0.0;
  long evaluations = 0;
  double truncation_radius = 0.0;
};

using RealIntegrand = std::function<cplx(double)>;

/// Adaptive Gauss-Kronrod (7/15) with a global panel queue. `b` may be
/// +infinity, in which case x = a + s / (1 - s) is used.
QuadratureResult integrate_1d(const RealIntegrand& f, double a, double b, const QuadratureSpec& spec = {});

/// Integral of f over H against dx dy / y^2, assuming
/// |f(z)| <~ exp(-decay_rate * cosh d(z, center)). Geodesic polar panels
/// around `center`, truncated at the radius where the tail model falls
/// below exp(-truncation_margin) of the peak mass.
QuadratureResult integrate_hyperbolic(const ScalarField& f, const HPoint& center, double decay_rate,
                                      const QuadratureSpec& spec = {});

/// Integral of g(u) over u in [1, inf), g decaying like exp(-c_decay u).
QuadratureResult integrate_radial(const RealIntegrand& g, double c_decay, const QuadratureSpec& spec = {});

}  // namespace hyptube
