#ifndef QFLAB_QFLAB_H
#define QFLAB_QFLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(QFLAB_BUILDING_LIBRARY)
#define QFLAB_API __attribute__((visibility("default")))
#else
#define QFLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Every function returns a status; 0 means success. The message of the most
   recent failure on the calling thread is available from qflab_last_error. */
typedef enum qflab_status {
  QFLAB_OK = 0,
  QFLAB_E_ARGUMENT = 1,
  QFLAB_E_RANGE = 2,
  QFLAB_E_DOMAIN = 3,
  QFLAB_E_CONSISTENCY = 4,
  QFLAB_E_NUMERIC = 5,
  QFLAB_E_UNSUPPORTED = 6,
  QFLAB_E_DEGENERATE = 7,
  QFLAB_E_IO = 8,
  QFLAB_E_NULL = 9,
  QFLAB_E_INTERNAL = 10
} qflab_status;

QFLAB_API const char* qflab_version(void);
QFLAB_API const char* qflab_status_name(int status);
QFLAB_API const char* qflab_last_error(void);

/* ---- arithmetic ---- */

/* 0 = squarefree D = 1 mod 4, 1 = that plus -4, 2 = the usual fundamental discriminants */
typedef enum qflab_convention {
  QFLAB_CONV_SQUAREFREE_1MOD4 = 0,
  QFLAB_CONV_WITH_MINUS4 = 1,
  QFLAB_CONV_STANDARD = 2
} qflab_convention;

QFLAB_API int qflab_kronecker(int64_t D, int64_t n, int* out);
QFLAB_API int qflab_is_fundamental(int64_t D, int convention, int* out);
QFLAB_API int qflab_r_total(uint64_t n, int64_t D, uint64_t* out);
QFLAB_API int qflab_L1(int64_t D, double* out);
QFLAB_API int qflab_L1_character_sum(int64_t D, uint64_t terms, double* out);

/* ---- class groups ---- */

typedef struct qflab_classes qflab_classes;

QFLAB_API int qflab_classes_create(int64_t D, qflab_classes** out);
QFLAB_API void qflab_classes_destroy(qflab_classes* t);
QFLAB_API int qflab_classes_count(const qflab_classes* t, size_t* h);
QFLAB_API int qflab_classes_form(const qflab_classes* t, size_t i, int64_t* A, int64_t* B, int64_t* C,
                                 int* aut_weight);
QFLAB_API int qflab_least_prime(const qflab_classes* t, size_t i, uint64_t bound, uint64_t* prime,
                                int64_t* x, int64_t* y);

/* ---- densities ---- */

/* Writes the exact value as "num/den" (or "num") into buf. */
QFLAB_API int qflab_sigma_p(uint64_t p, int alpha, int beta, int chi, char* buf, size_t size);
QFLAB_API int qflab_sigma_p_bruteforce(uint64_t p, int t, int64_t m, int64_t k, char* buf, size_t size);
QFLAB_API int qflab_global_sigma_product(int64_t m, int64_t k, int64_t D, double* out);
QFLAB_API int qflab_archimedean_I(double a, double sharpness, double* value, double* error_estimate);

typedef struct qflab_count {
  int64_t D;
  int64_t v0;
  double direct_count;
  double sigma_inf;
  double sigma_product;
  double main_term;
  double relative_error;
  size_t points;
} qflab_count;

QFLAB_API int qflab_count_A(int64_t m, int64_t X, int64_t d1, int64_t d2, qflab_count* out);

typedef struct qflab_sieve {
  double sifted;
  double sifted_separate;
  double bound;
  double bound_incex;
  double bound_squares;
  double A1;
} qflab_sieve;

QFLAB_API int qflab_sieve_bound(int64_t D, int64_t v0, uint64_t Y, int64_t X, qflab_sieve* out);

/* ---- experiments ---- */

typedef struct qflab_config qflab_config;
typedef struct qflab_report qflab_report;

QFLAB_API size_t qflab_command_count(void);
QFLAB_API const char* qflab_command_name(size_t i);

QFLAB_API int qflab_config_create(qflab_config** out);
QFLAB_API void qflab_config_destroy(qflab_config* c);
/* Keys match the config file; '-' and '_' are interchangeable. */
QFLAB_API int qflab_config_set(qflab_config* c, const char* key, const char* value);
QFLAB_API int qflab_config_load(qflab_config* c, const char* path);
QFLAB_API int qflab_config_validate(const qflab_config* c);
/* Pointer stays valid until the next call on the same config. */
QFLAB_API int qflab_config_get(qflab_config* c, const char* key, const char** value);

/* Fails with QFLAB_E_ARGUMENT for an invalid config. An internal failure
   during the run still yields a report; see qflab_report_error. */
QFLAB_API int qflab_run(const qflab_config* c, qflab_report** out);
QFLAB_API void qflab_report_destroy(qflab_report* r);

QFLAB_API int qflab_report_passed(const qflab_report* r, int* passed);
/* NULL when the run finished. */
QFLAB_API const char* qflab_report_error(const qflab_report* r);
QFLAB_API int qflab_report_rows(const qflab_report* r, size_t* rows, size_t* columns);
QFLAB_API int qflab_report_assertion_count(const qflab_report* r, size_t* n);
QFLAB_API int qflab_report_assertion(const qflab_report* r, size_t i, const char** name, int* passed,
                                     const char** detail);
QFLAB_API int qflab_report_summary_count(const qflab_report* r, size_t* n);
QFLAB_API int qflab_report_summary(const qflab_report* r, size_t i, const char** name, double* value);
QFLAB_API int qflab_report_wall_clock(const qflab_report* r, double* seconds);

/* Rendered text is owned by the report. */
QFLAB_API int qflab_report_csv(qflab_report* r, const char** text);
QFLAB_API int qflab_report_json(qflab_report* r, int include_timing, const char** text);
QFLAB_API int qflab_report_svg(qflab_report* r, const char** text);

/* Writes <name>.csv, plus .json and .svg when applicable, into dir. */
QFLAB_API int qflab_report_write(qflab_report* r, const char* dir, const char** csv_path);

#ifdef __cplusplus
}
#endif

#endif
