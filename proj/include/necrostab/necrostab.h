#ifndef NECROSTAB_H
#define NECROSTAB_H

/* C interface to the necrotic tumor stability toolkit.
 *
 * Every function returns an nst_status. On failure nst_last_error() returns a
 * message for the calling thread, valid until that thread's next call.
 * Handles are opaque, immutable after creation and safe to read from several
 * threads at once. */

#include <stddef.h>

#if defined(NECROSTAB_BUILDING_LIBRARY)
#define NST_API __attribute__((visibility("default")))
#else
#define NST_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nst_status {
  NST_OK = 0,
  NST_ERR_INVALID_ARGUMENT = 1, /* null pointer, bad size */
  NST_ERR_CONFIG = 2,           /* model parameters violate their constraints */
  NST_ERR_DOMAIN = 3,           /* argument outside an operation's domain */
  NST_ERR_SOLVER = 4,           /* root finder, shooting or integrator failure */
  NST_ERR_CONSISTENCY = 5,      /* two independent computations disagree */
  NST_ERR_IO = 6,
  NST_ERR_INTERNAL = 7
} nst_status;

typedef enum nst_stability {
  NST_STABLE_MODULO_TRANSLATIONS = 0,
  NST_UNSTABLE = 1,
  NST_CRITICAL = 2
} nst_stability;

typedef struct nst_model nst_model;
typedef struct nst_spectrum nst_spectrum;
typedef struct nst_trace nst_trace;
typedef struct nst_verify nst_verify;

typedef struct nst_stationary_info {
  double a, b, sigma_hat, sigma_tilde, g1;
  double r_star, r_s, k_s;
  double c_const, d_const;
  double dsigma_at_rs; /* sigma_s'(R_s) */
} nst_stationary_info;

typedef struct nst_spectrum_info {
  double gamma;
  double gamma_star;
  int argmax_k;
  int kmax;
  int certified;
  double tail_bound;
  nst_stability classification;
  int kernel_degree_count;
} nst_spectrum_info;

typedef struct nst_check_info {
  const char* name;  /* owned by the nst_verify handle */
  const char* group;
  const char* detail;
  double measured;
  double tolerance;
  int pass;
} nst_check_info;

NST_API const char* nst_version(void);
NST_API const char* nst_last_error(void);
NST_API const char* nst_status_name(nst_status status);
NST_API const char* nst_stability_name(nst_stability s);

/* Model: validated parameters plus the solved stationary ball. */
NST_API nst_status nst_model_create(double a, double b, double sigma_hat, nst_model** out);
NST_API void nst_model_destroy(nst_model* model);
NST_API nst_status nst_model_info(const nst_model* model, nst_stationary_info* out);
NST_API nst_status nst_model_profile(const nst_model* model, double r, double* sigma, double* dsigma, double* pi0,
                                     double* dpi0);
NST_API nst_status nst_model_write_profile_csv(const nst_model* model, int intervals, const char* path);
/* r, u_k, z_k for one degree on [K_s, R_s]. */
NST_API nst_status nst_model_write_mode_csv(const nst_model* model, int k, int intervals, const char* path);
NST_API nst_status nst_radial_velocity(double a, double b, double sigma_hat, double R, double* out);

/* Spectrum a_k(gamma), gamma_k and the certified threshold gamma*. */
NST_API nst_status nst_spectrum_compute(const nst_model* model, double gamma, int kmax, nst_spectrum** out);
NST_API void nst_spectrum_destroy(nst_spectrum* spectrum);
NST_API nst_status nst_spectrum_info_get(const nst_spectrum* spectrum, nst_spectrum_info* out);
NST_API nst_status nst_spectrum_a(const nst_spectrum* spectrum, int k, double* out);
NST_API nst_status nst_spectrum_gamma_k(const nst_spectrum* spectrum, int k, double* out);
NST_API nst_status nst_spectrum_kernel_degree(const nst_spectrum* spectrum, int index, int* out);
NST_API nst_status nst_spectrum_write_json(const nst_spectrum* spectrum, const char* path);
NST_API nst_status nst_spectrum_write_csv(const nst_spectrum* spectrum, const char* path);

/* Traces: radius R(t), or harmonic amplitudes under the linearized flow. */
NST_API nst_status nst_evolve_radius(const nst_model* model, double r0, double t_end, size_t samples,
                                     nst_trace** out);
NST_API nst_status nst_evolve_modes(const nst_model* model, double gamma, const int* k, const int* l, const double* c,
                                    size_t terms, const double* times, size_t n_times, nst_trace** out);
NST_API void nst_trace_destroy(nst_trace* trace);
NST_API nst_status nst_trace_shape(const nst_trace* trace, size_t* samples, size_t* width);
/* Harmonic index of a mode-trace column. */
NST_API nst_status nst_trace_index(const nst_trace* trace, size_t column, int* k, int* l);
NST_API nst_status nst_trace_value(const nst_trace* trace, size_t sample, size_t column, double* t, double* value);
/* Decay rate of |R - R_s| fitted on relative offsets in [1e-6, 1e-3]. */
NST_API nst_status nst_trace_decay_rate(const nst_trace* trace, double* out);
NST_API nst_status nst_trace_write_csv(const nst_trace* trace, const char* path);
NST_API nst_status nst_trace_write_shape_csv(const nst_trace* trace, size_t sample, int n_theta, int n_phi,
                                             const char* path);

/* Hele-Shaw multipliers, annulus multiplier and the planar toy flow. */
NST_API nst_status nst_heleshaw_mu(int k, int n, long long* numerator, long long* denominator);
NST_API nst_status nst_heleshaw_kernel_dim(int n, int kmax, long long* out);
NST_API nst_status nst_heleshaw_write_csv(int n, int kmax, const char* path);
NST_API nst_status nst_dn_annulus_multiplier(int k, double K, double R, double* out);
NST_API nst_status nst_toy_flow(double x0, double y0, double t, double* x, double* y, int* on_stable_manifold);

/* Property suite. */
NST_API nst_status nst_verify_run(double a, double b, double sigma_hat, int kmax, nst_verify** out);
NST_API void nst_verify_destroy(nst_verify* report);
NST_API nst_status nst_verify_count(const nst_verify* report, size_t* out);
NST_API nst_status nst_verify_check(const nst_verify* report, size_t index, nst_check_info* out);
NST_API nst_status nst_verify_all_pass(const nst_verify* report, int* out);
NST_API nst_status nst_verify_write_csv(const nst_verify* report, const char* path);

#ifdef __cplusplus
}
#endif

#endif
