#pragma once

// Test eigenfunctions of D^tau, their exact continuation to the tube,
// growth tables and zero counting on complex lines.

#include <functional>
#include <optional>
#include <vector>

#include "hyptube/tube.hpp"

namespace hyptube {

struct EigenTerm {
  cplx coeff;
  Isometry iso;
};

/// u(z) = sum_k coeff_k ((c z̄ + d) / (c z + d))^tau (Im g_k z)^(1/2 + i sigma).
struct EigenSpec {
  std::vector<EigenTerm> terms;
  SpectralParams params;

  EigenSpec(SpectralParams p) : params(p) {}
  EigenSpec& add(cplx coeff, const Isometry& iso);
};

cplx eval_eigen(const EigenSpec& spec, const HPoint& z);
cplx eval_eigen_c(const EigenSpec& spec, const CPoint& P);

struct SliceSpec {
  enum class Kind { Theta, Line };
  Kind kind = Kind::Theta;

  // Theta slice: P = h_{-it}(base, theta) on a t x theta grid.
  HPoint base{0.0, 1.0};
  double t_min = 0.05, t_max = 0.5;
  double theta_min = 0.0, theta_max = 6.283185307179586;

  // Line slice: P = P0 + w V for w in the rectangle below.
  CPoint P0{};
  CPoint V{};
  double re_min = -1.0, re_max = 1.0, im_min = -1.0, im_max = 1.0;

  int n1 = 16;  // t or Re w
  int n2 = 16;  // theta or Im w

  CPoint line_point(cplx w) const { return {P0.X + w * V.X, P0.Y + w * V.Y}; }
  /// Samples the slice and checks tube membership; throws NotInTube.
  void validate() const;
};

inline SliceSpec theta_slice(const HPoint& base, double t_min, double t_max, double theta_min, double theta_max,
                             int nt, int ntheta) {
  SliceSpec s;
  s.kind = SliceSpec::Kind::Theta;
  s.base = base;
  s.t_min = t_min;
  s.t_max = t_max;
  s.theta_min = theta_min;
  s.theta_max = theta_max;
  s.n1 = nt;
  s.n2 = ntheta;
  return s;
}

inline SliceSpec line_slice(const CPoint& P0, const CPoint& V, double re_min, double re_max, double im_min,
                            double im_max, int resolution) {
  SliceSpec s;
  s.kind = SliceSpec::Kind::Line;
  s.P0 = P0;
  s.V = V;
  s.re_min = re_min;
  s.re_max = re_max;
  s.im_min = im_min;
  s.im_max = im_max;
  s.n1 = s.n2 = resolution;
  return s;
}

struct GrowthRow {
  CPoint P;
  double t;
  double theta;
  double abs_u_sq;
  double b0;
  double normalized;  // tau^(1/2) |u|^2 exp(tau B0)
  double rate_gap;    // log|u|^2 / tau + B0
};

std::vector<GrowthRow> growth_profile(const EigenSpec& spec, const SliceSpec& slice);

struct NodalZero {
  cplx w;
  int multiplicity;
};

struct NodalReport {
  std::vector<NodalZero> zeros;
  int total_count = 0;
  double area = 0.0;
  double b0_density_integral = 0.0;
};

struct NodalSpec {
  int grid = 64;
  double graze_rel = 1e-10;  // |f/f'| below this times the region size counts as a hit
  int max_depth = 40;
  int max_jitter = 6;
};

using AnalyticFn = std::function<cplx(cplx)>;

/// Zeros in [re_min, re_max] x [im_min, im_max] by cell winding numbers on
/// a grid, located by subdivision and Newton.
NodalReport nodal_slice_zeros(const AnalyticFn& f, double re_min, double re_max, double im_min, double im_max,
                              const NodalSpec& spec = {});

/// (1 / 2 pi) int Laplacian_w (-B0 / 2 at P0 + w V) dA(w), via the boundary
/// flux.
double b0_density_flux(const SliceSpec& slice);
/// The same integral by a 2D difference Laplacian and Simpson's rule.
double b0_density_grid(const SliceSpec& slice, int n);

/// Zero count of eval_eigen_c along a line slice, next to the B0 density.
NodalReport nodal_density_vs_b0(const EigenSpec& spec, const SliceSpec& slice, const NodalSpec& nspec = {});

}  // namespace hyptube
