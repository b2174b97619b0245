#ifndef KFERMION_KFERMION_H
#define KFERMION_KFERMION_H

/* C interface to the k-fermion verification library.
 *
 * Every function returns a kf_status. On failure kf_last_error() describes
 * the problem (thread-local, valid until the next call on that thread).
 * Strings returned through char** are owned by the caller and released
 * with kf_string_free. */

#include <stddef.h>

#if defined(_WIN32)
#define KF_API __declspec(dllexport)
#elif defined(__GNUC__)
#define KF_API __attribute__((visibility("default")))
#else
#define KF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum kf_status {
  KF_OK = 0,
  KF_ERR_INVALID_ARGUMENT = 1,
  KF_ERR_DOMAIN = 2,
  KF_ERR_IO = 3,
  KF_ERR_INTERNAL = 4,
  KF_ERR_BUFFER_TOO_SMALL = 5
} kf_status;

typedef struct kf_params kf_params;
typedef struct kf_rep kf_rep;
typedef struct kf_report kf_report;

KF_API const char* kf_last_error(void);
KF_API void kf_string_free(char* s);

/* Deformation parameters: q = exp(2 pi i / k). tol <= 0 selects the default. */
KF_API kf_status kf_params_create(int k, double tol, kf_params** out);
KF_API void kf_params_destroy(kf_params* p);
/* [x]_q at the primitive root. */
KF_API kf_status kf_qnum(const kf_params* p, double x, double* re, double* im);

/* The k-dimensional Fock representation. */
KF_API kf_status kf_rep_create(const kf_params* p, kf_rep** out);
KF_API void kf_rep_destroy(kf_rep* r);
KF_API int kf_rep_dim(const kf_rep* r);
/* name: a_minus, a_plus, a_plus_dag, a_minus_dag, number.
 * Row-major, interleaved (re, im); len counts doubles and must be >= 2 k^2. */
KF_API kf_status kf_rep_matrix(const kf_rep* r, const char* name, double* buf, size_t len);

/* Runs the suites described by a JSON config ("{}" for defaults). */
KF_API kf_status kf_run_verify(const char* config_json, kf_report** out);
KF_API void kf_report_destroy(kf_report* r);
KF_API size_t kf_report_total(const kf_report* r);
KF_API size_t kf_report_passed(const kf_report* r);
KF_API int kf_report_all_passed(const kf_report* r);
/* format: "json", "csv" or "text". NULL uses the config's format. */
KF_API kf_status kf_report_render(const kf_report* r, const char* format, char** out);

/* kind: "coherence", "limits" or "residuals". */
KF_API kf_status kf_emit_table(const char* kind, const char* config_json, char** out);
KF_API kf_status kf_export_matrices(int k, double theta0, char** out);

/* Writes text to path, creating parent directories. */
KF_API kf_status kf_write_file(const char* path, const char* text);
/* KFERMION_OUT_DIR, or NULL when unset. Caller frees. */
KF_API kf_status kf_default_output_dir(char** out);

#ifdef __cplusplus
}
#endif

#endif
