/* schwinger.h - C API for the schwinger propagator library.
 *
 * Builds Feynman propagators of one-dimensional quadratic Hamiltonians in
 * momentum or position representation, evolves grid wavefunctions with an
 * independent split-step oracle, and runs the verification suite.
 *
 * Conventions:
 *   - Every function returns a sw_status; SW_OK is 0.
 *   - Objects are opaque handles released with the matching *_free call.
 *   - Strings returned through char** are owned by the caller and released
 *     with sw_string_free.
 *   - On failure, sw_last_error_message() returns a thread-local description
 *     of the most recent error.
 */

#ifndef SCHWINGER_H
#define SCHWINGER_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sw_status {
  SW_OK = 0,
  SW_ERR_NULL_POINTER = 1,
  SW_ERR_INVALID_ARGUMENT = 2,
  SW_ERR_DEGENERATE = 3,   /* conserved variable / distributional kernel */
  SW_ERR_CAUSTIC = 4,      /* time at or past an inversion zero */
  SW_ERR_BRANCH = 5,       /* complex square-root branch crossing */
  SW_ERR_REP_MISMATCH = 6, /* kernel/state representations disagree */
  SW_ERR_GRID = 7,         /* grid too small / bad grid parameters */
  SW_ERR_STEP_COUNT = 8,   /* evolution step guard violated */
  SW_ERR_UNSUPPORTED = 9,  /* operation undefined for this Hamiltonian */
  SW_ERR_BAD_FORMAT = 10,  /* malformed JSON input */
  SW_ERR_INTERNAL = 11
} sw_status;

typedef enum sw_rep { SW_REP_MOMENTUM = 0, SW_REP_POSITION = 1 } sw_rep;

typedef struct sw_hamiltonian sw_hamiltonian;
typedef struct sw_kernel sw_kernel;
typedef struct sw_grid sw_grid;
typedef struct sw_report sw_report;

const char* sw_version(void);

/* Thread-local message for the most recent failing call on this thread. */
const char* sw_last_error_message(void);

void sw_string_free(char* s);

/* --- Hamiltonians --------------------------------------------------- */

/* H = kinetic P^2 + potential X^2 + cross (XP+PX)/2 + linear_p P
 *   + linear_x X.  Requires kinetic > 0, hbar > 0, all finite. */
sw_status sw_hamiltonian_create(double kinetic, double potential, double cross,
                                double linear_p, double linear_x, double hbar,
                                sw_hamiltonian** out);
sw_status sw_hamiltonian_oscillator(double mass, double omega, double hbar,
                                    sw_hamiltonian** out);
sw_status sw_hamiltonian_free_particle(double mass, double hbar,
                                       sw_hamiltonian** out);
void sw_hamiltonian_free(sw_hamiltonian* h);

/* --- Kernels --------------------------------------------------------- */

sw_status sw_kernel_build(const sw_hamiltonian* h, double t, sw_rep rep,
                          sw_kernel** out);
void sw_kernel_free(sw_kernel* k);

/* 1 if the kernel is delta(q'-q) times a phase, else 0. */
int sw_kernel_is_degenerate(const sw_kernel* k);

/* Amplitude at (q_end, q_start); SW_ERR_DEGENERATE for delta kernels. */
sw_status sw_kernel_eval(const sw_kernel* k, double q_end, double q_start,
                         double* out_re, double* out_im);

/* Phase multiplying delta(q'-q); SW_ERR_INVALID_ARGUMENT unless degenerate. */
sw_status sw_kernel_delta_phase(const sw_kernel* k, double q, double* out_re,
                                double* out_im);

typedef enum sw_kernel_coeff {
  SW_COEFF_A_TT = 0,
  SW_COEFF_A_00 = 1,
  SW_COEFF_A_T0 = 2,
  SW_COEFF_B_T = 3,
  SW_COEFF_B_0 = 4,
  SW_COEFF_S = 5,
  SW_COEFF_LOG_NORM = 6
} sw_kernel_coeff;

sw_status sw_kernel_coefficient(const sw_kernel* k, sw_kernel_coeff which,
                                double* out_re, double* out_im);
sw_status sw_kernel_time(const sw_kernel* k, double* out);
sw_status sw_kernel_rep(const sw_kernel* k, sw_rep* out);

sw_status sw_kernel_to_json(const sw_kernel* k, char** out);
sw_status sw_kernel_from_json(const char* text, sw_kernel** out);

/* --- Grid states ------------------------------------------------------ */

/* Normalized Gaussian packet on n samples of [q_min, q_max); n must be a
 * power of two in [256, 65536]. center/width are in the grid variable,
 * conj_center in its conjugate. */
sw_status sw_grid_gaussian(double q_min, double q_max, int n, sw_rep rep,
                           double hbar, double center, double conj_center,
                           double width, sw_grid** out);
void sw_grid_free(sw_grid* g);

sw_status sw_grid_size(const sw_grid* g, int* out);
sw_status sw_grid_norm(const sw_grid* g, double* out);
/* |<a|b>| and L2 distance between two states on identical grids. */
sw_status sw_grid_fidelity(const sw_grid* a, const sw_grid* b, double* out);
sw_status sw_grid_l2_distance(const sw_grid* a, const sw_grid* b, double* out);

/* Smallest step count satisfying the evolution phase guards for this
 * state, Hamiltonian and time. */
sw_status sw_grid_suggested_steps(const sw_grid* g, const sw_hamiltonian* h,
                                  double t, int* out);

/* Split-step Strang evolution under h for time t. steps <= 0 selects the
 * guard-derived default. */
sw_status sw_grid_evolve(const sw_grid* g, const sw_hamiltonian* h, double t,
                         int steps, sw_grid** out);

/* phi(q') = int K(q', q) psi(q) dq (trapezoid); degenerate kernels multiply
 * by the delta phase. */
sw_status sw_grid_apply_kernel(const sw_grid* g, const sw_kernel* k,
                               sw_grid** out);

/* Unitary transform to the conjugate representation (centered dual grid). */
sw_status sw_grid_transform(const sw_grid* g, sw_grid** out);

sw_status sw_grid_to_json(const sw_grid* g, char** out);
sw_status sw_grid_from_json(const char* text, sw_grid** out);

/* --- Verification ------------------------------------------------------ */

/* config_json may be NULL or "{}" for defaults; recognized keys:
 * "rep" ("momentum"|"position"), "times" [..], "delta_times" [..],
 * "seed" (integer), "grid_n", "grid_half_width", "evolve_steps",
 * "timings" (bool), "kernel" (a kernel object to vet). */
sw_status sw_verify_run(const sw_hamiltonian* h, const char* config_json,
                        sw_report** out);
void sw_report_free(sw_report* r);

/* 1 when every entry passed, else 0. */
int sw_report_overall(const sw_report* r);
sw_status sw_report_entry_count(const sw_report* r, int* out);
sw_status sw_report_to_json(const sw_report* r, char** out);

#ifdef __cplusplus
}
#endif

#endif /* SCHWINGER_H */
