#include "hyptube/hyptube.h"

#include <Eigen/Dense>
#include <cmath>
#include <new>
#include <string>
#include <vector>

#include "hyptube/eigenlab.hpp"
#include "hyptube/error.hpp"
#include "hyptube/kernel.hpp"
#include "hyptube/transform.hpp"
#include "hyptube/verify.hpp"

using namespace hyptube;

struct ht_eigen_spec {
  EigenSpec spec;
};
struct ht_growth_table {
  std::vector<GrowthRow> rows;
};
struct ht_nodal_report {
  NodalReport report;
};
struct ht_verify_report {
  std::vector<CheckRow> rows;
};

namespace {

thread_local std::string g_last_error;

ht_status status_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::Domain: return HT_ERR_DOMAIN;
    case ErrorKind::Branch: return HT_ERR_BRANCH;
    case ErrorKind::NotInTube: return HT_ERR_NOT_IN_TUBE;
    case ErrorKind::Numerical: return HT_ERR_NUMERICAL;
    case ErrorKind::Accuracy: return HT_ERR_ACCURACY;
    case ErrorKind::RouteUnavailable: return HT_ERR_ROUTE_UNAVAILABLE;
    case ErrorKind::Partition: return HT_ERR_PARTITION;
  }
  return HT_ERR_INTERNAL;
}

ht_status bad_arg(const char* what) {
  g_last_error = what;
  return HT_ERR_INVALID_ARGUMENT;
}

template <class F>
ht_status guard(F&& f) {
  try {
    f();
    g_last_error.clear();
    return HT_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return HT_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return HT_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown exception";
    return HT_ERR_INTERNAL;
  }
}

cplx in(ht_complex c) { return {c.re, c.im}; }
ht_complex out(cplx c) { return {c.real(), c.imag()}; }
HPoint in(ht_hpoint z) { return HPoint(z.x, z.y); }
ht_hpoint out(const HPoint& z) { return {z.x(), z.y()}; }
CPoint in(ht_cpoint P) { return {in(P.X), in(P.Y)}; }
ht_cpoint out(const CPoint& P) { return {out(P.X), out(P.Y)}; }
Isometry in(ht_isometry g) { return Isometry(g.a, g.b, g.c, g.d); }

QuadratureSpec in(const ht_quad_spec* s) {
  QuadratureSpec q;
  if (s) {
    q.rel_tol = s->rel_tol;
    q.abs_tol = s->abs_tol;
    q.max_subdivisions = s->max_subdivisions;
    q.truncation_margin = s->truncation_margin;
  }
  q.validate();
  return q;
}

NodalSpec in(const ht_nodal_spec* s) {
  NodalSpec n;
  if (s) {
    n.grid = s->grid;
    n.graze_rel = s->graze_rel;
    n.max_depth = s->max_depth;
    n.max_jitter = s->max_jitter;
  }
  return n;
}

SliceSpec in(const ht_slice& s) {
  SliceSpec r;
  r.kind = s.kind == HT_SLICE_LINE ? SliceSpec::Kind::Line : SliceSpec::Kind::Theta;
  r.base = in(s.base);
  r.t_min = s.t_min;
  r.t_max = s.t_max;
  r.theta_min = s.theta_min;
  r.theta_max = s.theta_max;
  r.P0 = in(s.P0);
  r.V = in(s.V);
  r.re_min = s.re_min;
  r.re_max = s.re_max;
  r.im_min = s.im_min;
  r.im_max = s.im_max;
  r.n1 = s.n1;
  r.n2 = s.n2;
  return r;
}

ht_route route_of(SRoute r) {
  switch (r) {
    case SRoute::Quadrature2d: return HT_ROUTE_QUADRATURE2D;
    case SRoute::Formula1d: return HT_ROUTE_FORMULA1D;
    case SRoute::Laplace: return HT_ROUTE_LAPLACE;
  }
  return HT_ROUTE_AUTO;
}

}  // namespace

extern "C" {

const char* ht_version(void) { return "0.1.0"; }

const char* ht_status_string(ht_status s) {
  switch (s) {
    case HT_OK: return "ok";
    case HT_ERR_DOMAIN: return "domain error";
    case HT_ERR_BRANCH: return "branch error";
    case HT_ERR_NOT_IN_TUBE: return "point not in tube";
    case HT_ERR_NUMERICAL: return "numerical failure";
    case HT_ERR_ACCURACY: return "accuracy not reached";
    case HT_ERR_ROUTE_UNAVAILABLE: return "route unavailable";
    case HT_ERR_PARTITION: return "partition failure";
    case HT_ERR_INVALID_ARGUMENT: return "invalid argument";
    case HT_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* ht_last_error_message(void) { return g_last_error.c_str(); }

void ht_quad_spec_default(ht_quad_spec* spec) {
  if (!spec) return;
  const QuadratureSpec q;
  *spec = {q.rel_tol, q.abs_tol, q.max_subdivisions, q.truncation_margin};
}

ht_status ht_horocycle_point(ht_hpoint z, double theta, double t, ht_hpoint* o) {
  if (!o) return bad_arg("null output");
  return guard([&] { *o = out(horocycle_point(in(z), theta, t)); });
}

ht_status ht_horocycle_point_c(ht_hpoint z, double theta, double t, ht_cpoint* o) {
  if (!o) return bad_arg("null output");
  return guard([&] { *o = out(horocycle_point_c(in(z), theta, t)); });
}

ht_status ht_tube_coords(ht_cpoint P, ht_horo* o) {
  if (!o) return bad_arg("null output");
  return guard([&] {
    const HoroCoords h = tube_coords_from_point(in(P));
    *o = {h.x, h.y, h.t, h.theta.value_or(0.0), h.theta ? 1 : 0};
  });
}

ht_status ht_in_tube(ht_cpoint P, double radius, int* o) {
  if (!o) return bad_arg("null output");
  return guard([&] { *o = in_tube(in(P), radius) ? 1 : 0; });
}

ht_status ht_mobius_apply_c(ht_isometry g, ht_cpoint P, ht_cpoint* o) {
  if (!o) return bad_arg("null output");
  return guard([&] { *o = out(mobius_apply_c(in(g), in(P))); });
}

ht_status ht_c_param(double t, double* o) {
  if (!o) return bad_arg("null output");
  return guard([&] { *o = c_param(t); });
}

ht_status ht_log_kernel(ht_hpoint z, ht_cpoint P, double eta, ht_complex* o) {
  if (!o) return bad_arg("null output");
  return guard([&] { *o = out(log_kernel(in(z), in(P), eta).phi); });
}

ht_status ht_phi_max(double t, double eta, double theta, double* o) {
  if (!o) return bad_arg("null output");
  return guard([&] { *o = phi_max(t, eta, theta); });
}

ht_status ht_phi_diagonal(double t, double theta, double* o) {
  if (!o) return bad_arg("null output");
  return guard([&] { *o = phi_diagonal(t, theta); });
}

ht_status ht_b0(double t, double theta, double* o) {
  if (!o) return bad_arg("null output");
  return guard([&] { *o = B0(t, theta); });
}

ht_status ht_critical_point(double eta, ht_cpoint* P, double* det_abs) {
  if (!P) return bad_arg("null output");
  return guard([&] {
    const CriticalPoint cp = complex_critical_point(eta);
    *P = out(cp.P);
    if (det_abs) *det_abs = std::abs(cp.hessian.determinant());
  });
}

const char* ht_route_name(ht_route r) {
  switch (r) {
    case HT_ROUTE_QUADRATURE2D: return to_string(SRoute::Quadrature2d);
    case HT_ROUTE_FORMULA1D: return to_string(SRoute::Formula1d);
    case HT_ROUTE_LAPLACE: return to_string(SRoute::Laplace);
    case HT_ROUTE_AUTO: return "auto";
  }
  return "?";
}

ht_status ht_selberg_S(double eta, double tau, double s, ht_route route, const ht_quad_spec* spec, ht_s_result* o) {
  if (!o) return bad_arg("null output");
  return guard([&] {
    const QuadratureSpec q = in(spec);
    STransformResult r = [&] {
      switch (route) {
        case HT_ROUTE_QUADRATURE2D: return selberg_S_quadrature(eta, tau, s, q);
        case HT_ROUTE_FORMULA1D: return selberg_S_formula(eta, tau, s, q);
        case HT_ROUTE_LAPLACE: return laplace_asymptote_S(eta, tau, s);
        case HT_ROUTE_AUTO: break;
      }
      return selberg_S(eta, tau, s, q);
    }();
    *o = {out(r.value), route_of(r.route), r.error_estimate, r.b3_estimate};
  });
}

ht_status ht_hyp2f1(ht_complex a, ht_complex b, ht_complex c, double x, ht_complex* o) {
  if (!o) return bad_arg("null output");
  return guard([&] { *o = out(hyp2f1(in(a), in(b), in(c), x)); });
}

ht_status ht_b_weight(ht_cpoint P, double t1, double t2, double tau, double s, const ht_quad_spec* spec, double* o) {
  if (!o) return bad_arg("null output");
  return guard([&] { *o = b_weight(in(P), Mollifier(t1, t2), tau, s, in(spec)); });
}

ht_status ht_eigen_spec_create(double tau, double s, ht_eigen_spec** o) {
  if (!o) return bad_arg("null output");
  *o = nullptr;
  return guard([&] { *o = new ht_eigen_spec{EigenSpec(SpectralParams(tau, s))}; });
}

void ht_eigen_spec_destroy(ht_eigen_spec* spec) { delete spec; }

ht_status ht_eigen_spec_add(ht_eigen_spec* spec, ht_complex coeff, ht_isometry iso) {
  if (!spec) return bad_arg("null spec");
  return guard([&] { spec->spec.add(in(coeff), in(iso)); });
}

ht_status ht_eigen_eval(const ht_eigen_spec* spec, ht_hpoint z, ht_complex* o) {
  if (!spec || !o) return bad_arg("null argument");
  return guard([&] { *o = out(eval_eigen(spec->spec, in(z))); });
}

ht_status ht_eigen_eval_c(const ht_eigen_spec* spec, ht_cpoint P, ht_complex* o) {
  if (!spec || !o) return bad_arg("null argument");
  return guard([&] { *o = out(eval_eigen_c(spec->spec, in(P))); });
}

ht_status ht_continue_eigen(const ht_eigen_spec* spec, double eta, ht_cpoint P, const ht_quad_spec* qspec,
                            ht_complex* o) {
  if (!spec || !o) return bad_arg("null argument");
  return guard([&] {
    const EigenSpec& es = spec->spec;
    if (es.terms.empty()) fail(ErrorKind::Domain, "eigen spec has no terms");
    const ScalarField u = [&es](const HPoint& z) { return eval_eigen(es, z); };
    *o = out(continue_eigenfunction(u, eta, es.params.tau(), in(P), in(qspec)));
  });
}

void ht_slice_default(ht_slice* slice) {
  if (!slice) return;
  const SliceSpec d;
  *slice = {};
  slice->kind = HT_SLICE_THETA;
  slice->base = out(d.base);
  slice->t_min = d.t_min;
  slice->t_max = d.t_max;
  slice->theta_min = d.theta_min;
  slice->theta_max = d.theta_max;
  slice->P0 = out(d.P0);
  slice->V = out(d.V);
  slice->re_min = d.re_min;
  slice->re_max = d.re_max;
  slice->im_min = d.im_min;
  slice->im_max = d.im_max;
  slice->n1 = d.n1;
  slice->n2 = d.n2;
}

ht_status ht_growth_profile(const ht_eigen_spec* spec, const ht_slice* slice, ht_growth_table** o) {
  if (!spec || !slice || !o) return bad_arg("null argument");
  *o = nullptr;
  return guard([&] {
    if (spec->spec.terms.empty()) fail(ErrorKind::Domain, "eigen spec has no terms");
    *o = new ht_growth_table{growth_profile(spec->spec, in(*slice))};
  });
}

size_t ht_growth_table_size(const ht_growth_table* t) { return t ? t->rows.size() : 0; }

ht_status ht_growth_table_row(const ht_growth_table* t, size_t i, ht_growth_row* o) {
  if (!t || !o) return bad_arg("null argument");
  if (i >= t->rows.size()) return bad_arg("row index out of range");
  const GrowthRow& r = t->rows[i];
  *o = {out(r.P), r.t, r.theta, r.abs_u_sq, r.b0, r.normalized, r.rate_gap};
  return HT_OK;
}

void ht_growth_table_destroy(ht_growth_table* t) { delete t; }

void ht_nodal_spec_default(ht_nodal_spec* spec) {
  if (!spec) return;
  const NodalSpec n;
  *spec = {n.grid, n.graze_rel, n.max_depth, n.max_jitter};
}

ht_status ht_nodal_roots(const ht_complex* roots, const int* mult, size_t n, double re_min, double re_max,
                         double im_min, double im_max, const ht_nodal_spec* spec, ht_nodal_report** o) {
  if (!o || (n > 0 && (!roots || !mult))) return bad_arg("null argument");
  *o = nullptr;
  for (size_t k = 0; k < n; ++k)
    if (mult[k] < 1) return bad_arg("multiplicities must be positive");
  return guard([&] {
    std::vector<cplx> r(n);
    for (size_t k = 0; k < n; ++k) r[k] = in(roots[k]);
    const AnalyticFn f = [&](cplx w) {
      cplx p = 1.0;
      for (size_t k = 0; k < n; ++k)
        for (int j = 0; j < mult[k]; ++j) p *= w - r[k];
      return p;
    };
    *o = new ht_nodal_report{nodal_slice_zeros(f, re_min, re_max, im_min, im_max, in(spec))};
  });
}

ht_status ht_nodal_polynomial(const ht_complex* coeffs, size_t n, double re_min, double re_max, double im_min,
                              double im_max, const ht_nodal_spec* spec, ht_nodal_report** o) {
  if (!o || !coeffs || n == 0) return bad_arg("null or empty argument");
  *o = nullptr;
  return guard([&] {
    std::vector<cplx> c(n);
    for (size_t k = 0; k < n; ++k) c[k] = in(coeffs[k]);
    const AnalyticFn f = [&](cplx w) {
      cplx p = 0.0;
      for (size_t k = n; k-- > 0;) p = p * w + c[k];
      return p;
    };
    *o = new ht_nodal_report{nodal_slice_zeros(f, re_min, re_max, im_min, im_max, in(spec))};
  });
}

ht_status ht_nodal_eigen(const ht_eigen_spec* spec, const ht_slice* slice, const ht_nodal_spec* nspec,
                         ht_nodal_report** o) {
  if (!spec || !slice || !o) return bad_arg("null argument");
  *o = nullptr;
  return guard([&] {
    if (spec->spec.terms.empty()) fail(ErrorKind::Domain, "eigen spec has no terms");
    *o = new ht_nodal_report{nodal_density_vs_b0(spec->spec, in(*slice), in(nspec))};
  });
}

size_t ht_nodal_report_size(const ht_nodal_report* r) { return r ? r->report.zeros.size() : 0; }

ht_status ht_nodal_report_zero(const ht_nodal_report* r, size_t i, ht_complex* w, int* multiplicity) {
  if (!r || !w || !multiplicity) return bad_arg("null argument");
  if (i >= r->report.zeros.size()) return bad_arg("zero index out of range");
  *w = out(r->report.zeros[i].w);
  *multiplicity = r->report.zeros[i].multiplicity;
  return HT_OK;
}

ht_status ht_nodal_report_summary(const ht_nodal_report* r, int* total_count, double* area,
                                  double* b0_density_integral) {
  if (!r) return bad_arg("null report");
  if (total_count) *total_count = r->report.total_count;
  if (area) *area = r->report.area;
  if (b0_density_integral) *b0_density_integral = r->report.b0_density_integral;
  return HT_OK;
}

void ht_nodal_report_destroy(ht_nodal_report* r) { delete r; }

ht_status ht_verify_run(uint64_t seed, double tol_scale, double tolerance_override, ht_verify_report** o) {
  if (!o) return bad_arg("null output");
  *o = nullptr;
  if (!(tol_scale > 0.0) || !std::isfinite(tol_scale)) return bad_arg("tol_scale must be positive");
  return guard([&] {
    VerifyOptions opt;
    opt.seed = seed;
    opt.tol_scale = tol_scale;
    if (tolerance_override > 0.0) opt.tolerance_override = tolerance_override;
    *o = new ht_verify_report{run_verify(opt)};
  });
}

size_t ht_verify_report_size(const ht_verify_report* r) { return r ? r->rows.size() : 0; }

ht_status ht_verify_report_row(const ht_verify_report* r, size_t i, ht_verify_row* o) {
  if (!r || !o) return bad_arg("null argument");
  if (i >= r->rows.size()) return bad_arg("row index out of range");
  const CheckRow& c = r->rows[i];
  *o = {c.check_id.c_str(), c.samples, c.max_error, c.tolerance, c.pass ? 1 : 0};
  return HT_OK;
}

void ht_verify_report_destroy(ht_verify_report* r) { delete r; }

}  // extern "C"
