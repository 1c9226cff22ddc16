#pragma once

// Automorphic kernel phase, its maximizer on horocycle slices, and the
// diffeomorphism (eta, theta) -> covector built from it.

#include <Eigen/Core>

#include "hyptube/tube.hpp"

namespace hyptube {

/// 4 / (4t - t^3), 0 < t < 1.
double c_param(double t);

struct KernelEval {
  cplx phi;
  double eta;
  HPoint z;
  CPoint P;
};

/// phi = log_gauge(z, P) - c_eta * cosh_dist_c(z, P).
KernelEval log_kernel(const HPoint& z, const CPoint& P, double eta);

/// Value and holomorphic derivatives of P -> Phi_eta(z, P) up to order two.
struct PhaseJet {
  cplx value;
  cplx dX, dY;
  cplx dXX, dXY, dYY;
};

PhaseJet phase_jet(const HPoint& z, const CPoint& P, double eta);

/// d/dx and d/dy of Phi_eta(z, P) in the real coordinates of z.
struct PhaseGradZ {
  cplx dx;
  cplx dy;
};

PhaseGradZ phase_grad_z(const HPoint& z, const CPoint& P, double eta);

struct MaximizerResult {
  CPoint Q;
  HPoint basepoint;
  double phi_max;
  Eigen::Matrix2d hessian;  // of Re Phi in the basepoint coordinates
  int iterations;
};

/// Maximum of Re Phi_eta(z, .) over the slice {h_{-it}(w, theta) : w in H}.
/// Requires 0 < t < 1 and |eta - t| <= 0.1.
MaximizerResult kernel_max(const HPoint& z, double t, double eta, double theta);

/// phi(t, eta, theta), evaluated at z = i.
double phi_max(double t, double eta, double theta);

/// Closed form of phi(t, t, theta).
double phi_diagonal(double t, double theta);

double B0(double t, double theta);

/// Im d_z Phi_eta(z, Q(z, t, eta, theta)).
CotangentVector t_map(const HPoint& z, double t, double eta, double theta);

struct EtaTheta {
  double eta;
  double theta;
};

/// Inverse of t_map in (eta, theta) for covectors near {H_{-1} = 1/2}.
EtaTheta theta_eta_inverse(const HPoint& z, double t, const CotangentVector& xi);

struct CriticalPoint {
  CPoint P;
  Eigen::Matrix2cd hessian;
  cplx phi;
  int iterations;
};

/// Stationary point of P -> Phi_eta(i, P) near (i eta, 1).
CriticalPoint complex_critical_point(double eta);

}  // namespace hyptube
