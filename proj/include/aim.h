/* C interface to the asymptotic-iteration eigenvalue library.
 *
 * All fallible entry points return an aim_status; outputs travel through
 * pointers. A human-readable message for the most recent failure on the
 * calling thread is available from aim_last_error(). Problems are opaque
 * handles created by the aim_problem_create_* family and released with
 * aim_problem_free().
 */
#ifndef AIM_H
#define AIM_H

#include <stddef.h>

#if defined(_WIN32)
#define AIM_API __declspec(dllexport)
#else
#define AIM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum aim_status {
  AIM_OK = 0,
  AIM_ERR_USAGE = 1,          /* API contract violation */
  AIM_ERR_DOMAIN = 2,         /* input outside the mathematical domain */
  AIM_ERR_OVERFLOW = 3,       /* iteration left the finite range */
  AIM_ERR_DEGENERATE = 4,     /* denominator collapsed; move x */
  AIM_ERR_NO_CONVERGENCE = 5, /* series/iteration budget exhausted */
  AIM_ERR_NO_BRACKET = 6,     /* no sign change found */
  AIM_ERR_PARSE = 7,          /* bad potential text; see last_error_offset */
  AIM_ERR_BUFFER = 8,         /* caller buffer too small */
  AIM_ERR_INTERNAL = 99
} aim_status;

typedef struct aim_problem aim_problem; /* opaque */

typedef enum aim_x0_policy {
  AIM_X0_AUTO = 0,
  AIM_X0_FIXED = 1,
  AIM_X0_POTENTIAL_MIN = 2,
  AIM_X0_S0_ZERO = 3,
  AIM_X0_ZERO = 4
} aim_x0_policy;

typedef struct aim_solver_options {
  int x0_policy;    /* aim_x0_policy */
  double x0_value;  /* used by AIM_X0_FIXED */
  int max_iter;     /* iteration depth for delta roots */
  int jet_order;    /* <= 0 selects 2*max_iter + 8 */
  double e_min;     /* energy scan window */
  double e_max;
  double e_step;
  int stab_window;  /* consecutive depths that must agree on a root */
  double root_tol;  /* absolute bisection tolerance in E */
  int max_threads;  /* <= 0: AIM_MAX_THREADS env, then hardware */
} aim_solver_options;

/* Fills defaults: auto x0, 12 iterations, window [0, 50] step 0.25,
 * stabilization window 3, root tolerance 1e-10. */
AIM_API void aim_solver_options_init(aim_solver_options* opts);

typedef struct aim_eigenvalue {
  double energy;
  int n_used;
  double delta_residual;
  double x0_used;
  int stabilized; /* 0/1 */
} aim_eigenvalue;

/* ---- problem handles ---------------------------------------------- */

AIM_API aim_status aim_problem_create_hermite(int k, aim_problem** out);
AIM_API aim_status aim_problem_create_harmonic1d(aim_problem** out);
AIM_API aim_status aim_problem_create_gk(double gamma, aim_problem** out);
AIM_API aim_status aim_problem_create_spiked(double gamma, double coupling,
                                             double alpha_exp,
                                             aim_problem** out);
AIM_API aim_status aim_problem_create_spiked_ndim(int n_dim, int l,
                                                  double coupling,
                                                  double alpha_exp,
                                                  aim_problem** out);
AIM_API aim_status aim_problem_create_quartic(double coupling,
                                              aim_problem** out);
/* Parses a potential expression such as "x^2 + 0.1*x^4". Expressions
 * matching the spiked pattern are promoted to the spiked problem. */
AIM_API aim_status aim_problem_create_custom(const char* potential_text,
                                             aim_problem** out);
AIM_API void aim_problem_free(aim_problem* p);

AIM_API aim_status aim_problem_name(const aim_problem* p, char* buf,
                                    size_t cap);
AIM_API aim_status aim_problem_param_json(const aim_problem* p, char* buf,
                                          size_t cap);
AIM_API int aim_problem_is_eigenproblem(const aim_problem* p);
AIM_API int aim_problem_is_half_line(const aim_problem* p);
AIM_API aim_status aim_problem_potential(const aim_problem* p, double x,
                                         double* out);
AIM_API aim_status aim_problem_envelope(const aim_problem* p, double x,
                                        double* out);

/* Closed-form energy of the given level when the problem has one;
 * *has_exact is set to 0/1. */
AIM_API aim_status aim_exact_energy(const aim_problem* p, int level,
                                    int* has_exact, double* out);

/* ---- solver -------------------------------------------------------- */

/* x0 under the configured policy (E_guess feeds the s0_zero policy). */
AIM_API aim_status aim_resolve_x0(const aim_problem* p,
                                  const aim_solver_options* opts,
                                  double e_guess, double* out);

/* Termination functional delta_depth(E) evaluated at x0; eigenvalues are
 * its zeros in E. order <= 0 selects 2*depth + 8. */
AIM_API aim_status aim_delta(const aim_problem* p, double energy, double x0,
                             int depth, int order, double* out);

/* Lowest `count` eigenvalues by scan + bisection. `results` must hold
 * `count` entries; *found reports how many were located in the window. */
AIM_API aim_status aim_solve_spectrum(const aim_problem* p,
                                      const aim_solver_options* opts,
                                      int count, aim_eigenvalue* results,
                                      int* found);

/* Sign-change brackets of delta over the scan window. lo/hi must hold
 * `cap` entries. *skipped counts grid points dropped by overflow or
 * domain errors. */
AIM_API aim_status aim_scan_brackets(const aim_problem* p,
                                     const aim_solver_options* opts,
                                     double* lo, double* hi, int cap,
                                     int* found, int* skipped);

/* ---- independent reference ----------------------------------------- */

/* Finite-difference spectrum (no shared code with the iteration).
 * r_max <= 0 and m <= 0 select the defaults (12, 4000). */
AIM_API aim_status aim_oracle_spectrum(const aim_problem* p, int count,
                                       double r_max, int m, double* out);

/* ---- solution reconstruction --------------------------------------- */

/* Samples the general solution y and psi = envelope * y for one level on
 * a uniform grid of n_points covering [x_lo, x_hi]. y_out/psi_out must
 * hold n_points entries each; either may be NULL. For the hermite kind
 * `level` is ignored (the polynomial index k is part of the problem). */
AIM_API aim_status aim_reconstruct(const aim_problem* p, int level,
                                   const aim_solver_options* opts,
                                   double x_lo, double x_hi, int n_points,
                                   double c1, double c2, double* y_out,
                                   double* psi_out);

/* ---- potential text ------------------------------------------------- */

/* Parses and re-serializes a potential to canonical text. */
AIM_API aim_status aim_potential_canonical(const char* text, char* buf,
                                           size_t cap);

/* ---- diagnostics ---------------------------------------------------- */

/* Message for the last failure on this thread ("" if none). */
AIM_API const char* aim_last_error(void);
/* Byte offset for AIM_ERR_PARSE failures, else -1. */
AIM_API long aim_last_error_offset(void);
AIM_API const char* aim_version(void);

#ifdef __cplusplus
}
#endif

#endif /* AIM_H */
