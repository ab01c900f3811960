#ifndef OTFS_CDRT_H
#define OTFS_CDRT_H

/*
 * C API of the OTFS-NOMA CDRT link simulator and outage engine.
 *
 * The heavy entry points work through an opaque session holding a loaded
 * sweep configuration. All functions return otfs_status; string results stay
 * owned by the session and are valid until the next call on it.
 */

#include <stddef.h>

#if defined(_WIN32)
#define OTFS_CDRT_API __declspec(dllexport)
#else
#define OTFS_CDRT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum otfs_status {
    OTFS_OK = 0,
    OTFS_ERR_INVALID_ARG = 1,
    OTFS_ERR_PARSE = 2,      /* config/CSV malformed */
    OTFS_ERR_VALIDATION = 3, /* a tolerance check failed */
    OTFS_ERR_IO = 4,
    OTFS_ERR_INTERNAL = 5
} otfs_status;

typedef struct otfs_session otfs_session;

OTFS_CDRT_API const char* otfs_version(void);
OTFS_CDRT_API const char* otfs_status_str(otfs_status status);

/* config_path may be NULL to use the built-in defaults. */
OTFS_CDRT_API otfs_status otfs_session_open(const char* config_path, otfs_session** out);
OTFS_CDRT_API void otfs_session_close(otfs_session* session);

/* Message for the most recent failing call on this session ("" if none). */
OTFS_CDRT_API const char* otfs_session_last_error(const otfs_session* session);

/* Runs the configured SNR sweep and writes one CSV row per
 * (snr_db, scheme, signal) with analytic and Monte Carlo outage columns. */
OTFS_CDRT_API otfs_status otfs_sweep_outage(otfs_session* session, const char* csv_path);

/* As above with sum-rate columns per (snr_db, scheme). */
OTFS_CDRT_API otfs_status otfs_sweep_sumrate(otfs_session* session, const char* csv_path);

/* Runs the characteristic-function/CDF regression checks; the text report is
 * available from otfs_session_report() afterwards. samples <= 0 selects the
 * default budget. Returns OTFS_ERR_VALIDATION when any tolerance is breached. */
OTFS_CDRT_API otfs_status otfs_validate_cf(otfs_session* session, long long samples);
OTFS_CDRT_API const char* otfs_session_report(const otfs_session* session);

/* Renders a sweep CSV (either schema) into SVG charts under out_dir. */
OTFS_CDRT_API otfs_status otfs_plot(const char* csv_path, const char* out_dir,
                                    int* files_written);

/* ---- stateless numeric surface ---- */

/* K1(re + j*im) on the right half-plane. */
OTFS_CDRT_API otfs_status otfs_bessel_k1(double re, double im, double* out_re, double* out_im);

/* Characteristic-function kernel psi(t, omega). */
OTFS_CDRT_API otfs_status otfs_cf_psi(double t, double omega, double* out_re, double* out_im);

/* CDF of Theta at z under the independent-group model described by the
 * multiplicities array (n_groups entries) and per-eigenvalue power omega. */
OTFS_CDRT_API otfs_status otfs_cdf_theta(double z, const int* multiplicities, int n_groups,
                                         double omega, double* out_cdf);

/* Single-group closed-form outage probabilities of the proposed scheme. */
OTFS_CDRT_API otfs_status otfs_outage_special(double alpha_c, double alpha_e, double rho_s,
                                              double rho_r, int nm, double r_xc, double r_xe,
                                              double r_xbarc, double omega_sc1, double omega_sr1,
                                              double omega_sc2, double omega_re2, double* p_xc,
                                              double* p_xe, double* p_xbarc);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* OTFS_CDRT_H */
