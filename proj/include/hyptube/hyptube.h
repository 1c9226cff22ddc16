#ifndef HYPTUBE_H
#define HYPTUBE_H

/* C interface of the hyptube library. All functions return an ht_status;
 * on failure ht_last_error_message() describes the error for the calling
 * thread. Handles are opaque and owned by the caller. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define HT_API __declspec(dllexport)
#elif defined(__GNUC__)
#define HT_API __attribute__((visibility("default")))
#else
#define HT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  HT_OK = 0,
  HT_ERR_DOMAIN = 1,
  HT_ERR_BRANCH = 2,
  HT_ERR_NOT_IN_TUBE = 3,
  HT_ERR_NUMERICAL = 4,
  HT_ERR_ACCURACY = 5,
  HT_ERR_ROUTE_UNAVAILABLE = 6,
  HT_ERR_PARTITION = 7,
  HT_ERR_INVALID_ARGUMENT = 8,
  HT_ERR_INTERNAL = 9
} ht_status;

typedef struct { double re, im; } ht_complex;
typedef struct { double x, y; } ht_hpoint;
/* point (X, Y) of C^2 */
typedef struct { ht_complex X, Y; } ht_cpoint;
/* z -> (az + b) / (cz + d), ad - bc > 0 */
typedef struct { double a, b, c, d; } ht_isometry;
/* horocycle coordinates; theta is meaningful only when has_theta != 0 */
typedef struct { double x, y, t, theta; int has_theta; } ht_horo;

typedef struct {
  double rel_tol;
  double abs_tol;
  int max_subdivisions;
  double truncation_margin;
} ht_quad_spec;

HT_API const char* ht_version(void);
HT_API const char* ht_status_string(ht_status s);
HT_API const char* ht_last_error_message(void);
HT_API void ht_quad_spec_default(ht_quad_spec* spec);

/* geometry */
HT_API ht_status ht_horocycle_point(ht_hpoint z, double theta, double t, ht_hpoint* out);
HT_API ht_status ht_horocycle_point_c(ht_hpoint z, double theta, double t, ht_cpoint* out);
HT_API ht_status ht_tube_coords(ht_cpoint P, ht_horo* out);
HT_API ht_status ht_in_tube(ht_cpoint P, double radius, int* out);
HT_API ht_status ht_mobius_apply_c(ht_isometry g, ht_cpoint P, ht_cpoint* out);

/* kernel */
HT_API ht_status ht_c_param(double t, double* out);
HT_API ht_status ht_log_kernel(ht_hpoint z, ht_cpoint P, double eta, ht_complex* out);
HT_API ht_status ht_phi_max(double t, double eta, double theta, double* out);
HT_API ht_status ht_phi_diagonal(double t, double theta, double* out);
HT_API ht_status ht_b0(double t, double theta, double* out);
/* stationary point near (i eta, 1); det_abs receives |det Hessian| */
HT_API ht_status ht_critical_point(double eta, ht_cpoint* P, double* det_abs);

/* transform */
typedef enum {
  HT_ROUTE_QUADRATURE2D = 0,
  HT_ROUTE_FORMULA1D = 1,
  HT_ROUTE_LAPLACE = 2,
  HT_ROUTE_AUTO = 3
} ht_route;

typedef struct {
  ht_complex value;
  ht_route route;
  double error_estimate;
  double b3_estimate;
} ht_s_result;

HT_API const char* ht_route_name(ht_route r);
/* spec may be NULL for defaults */
HT_API ht_status ht_selberg_S(double eta, double tau, double s, ht_route route, const ht_quad_spec* spec,
                              ht_s_result* out);
HT_API ht_status ht_hyp2f1(ht_complex a, ht_complex b, ht_complex c, double x, ht_complex* out);
HT_API ht_status ht_b_weight(ht_cpoint P, double t1, double t2, double tau, double s, const ht_quad_spec* spec,
                             double* out);

/* test eigenfunctions */
typedef struct ht_eigen_spec ht_eigen_spec;

HT_API ht_status ht_eigen_spec_create(double tau, double s, ht_eigen_spec** out);
HT_API void ht_eigen_spec_destroy(ht_eigen_spec* spec);
HT_API ht_status ht_eigen_spec_add(ht_eigen_spec* spec, ht_complex coeff, ht_isometry iso);
HT_API ht_status ht_eigen_eval(const ht_eigen_spec* spec, ht_hpoint z, ht_complex* out);
HT_API ht_status ht_eigen_eval_c(const ht_eigen_spec* spec, ht_cpoint P, ht_complex* out);
/* numerical continuation of the spec's eigenfunction through the kernel at
 * parameter eta; the result carries the factor S(eta, tau, s) */
HT_API ht_status ht_continue_eigen(const ht_eigen_spec* spec, double eta, ht_cpoint P, const ht_quad_spec* qspec,
                                   ht_complex* out);

typedef enum { HT_SLICE_THETA = 0, HT_SLICE_LINE = 1 } ht_slice_kind;

typedef struct {
  ht_slice_kind kind;
  ht_hpoint base;
  double t_min, t_max, theta_min, theta_max;
  ht_cpoint P0, V;
  double re_min, re_max, im_min, im_max;
  int n1, n2;
} ht_slice;

HT_API void ht_slice_default(ht_slice* slice);

typedef struct {
  ht_cpoint P;
  double t, theta, abs_u_sq, b0, normalized, rate_gap;
} ht_growth_row;

typedef struct ht_growth_table ht_growth_table;

HT_API ht_status ht_growth_profile(const ht_eigen_spec* spec, const ht_slice* slice, ht_growth_table** out);
HT_API size_t ht_growth_table_size(const ht_growth_table* table);
HT_API ht_status ht_growth_table_row(const ht_growth_table* table, size_t i, ht_growth_row* out);
HT_API void ht_growth_table_destroy(ht_growth_table* table);

/* zero counting */
typedef struct {
  int grid;
  double graze_rel;
  int max_depth;
  int max_jitter;
} ht_nodal_spec;

typedef struct ht_nodal_report ht_nodal_report;

HT_API void ht_nodal_spec_default(ht_nodal_spec* spec);
/* prod_k (w - roots[k])^mult[k] on the rectangle */
HT_API ht_status ht_nodal_roots(const ht_complex* roots, const int* mult, size_t n, double re_min, double re_max,
                                double im_min, double im_max, const ht_nodal_spec* spec, ht_nodal_report** out);
/* sum_k coeffs[k] w^k on the rectangle */
HT_API ht_status ht_nodal_polynomial(const ht_complex* coeffs, size_t n, double re_min, double re_max, double im_min,
                                     double im_max, const ht_nodal_spec* spec, ht_nodal_report** out);
/* zeros of the continued eigenfunction on a line slice, with the B0 density */
HT_API ht_status ht_nodal_eigen(const ht_eigen_spec* spec, const ht_slice* slice, const ht_nodal_spec* nspec,
                                ht_nodal_report** out);
HT_API size_t ht_nodal_report_size(const ht_nodal_report* r);
HT_API ht_status ht_nodal_report_zero(const ht_nodal_report* r, size_t i, ht_complex* w, int* multiplicity);
HT_API ht_status ht_nodal_report_summary(const ht_nodal_report* r, int* total_count, double* area,
                                         double* b0_density_integral);
HT_API void ht_nodal_report_destroy(ht_nodal_report* r);

/* identity and oracle checks */
typedef struct ht_verify_report ht_verify_report;

typedef struct {
  const char* check_id; /* valid while the report lives */
  long samples;
  double max_error;
  double tolerance;
  int pass;
} ht_verify_row;

/* tolerance_override <= 0 keeps the built-in tolerances (scaled) */
HT_API ht_status ht_verify_run(uint64_t seed, double tol_scale, double tolerance_override, ht_verify_report** out);
HT_API size_t ht_verify_report_size(const ht_verify_report* r);
HT_API ht_status ht_verify_report_row(const ht_verify_report* r, size_t i, ht_verify_row* out);
HT_API void ht_verify_report_destroy(ht_verify_report* r);

#ifdef __cplusplus
}
#endif

#endif
