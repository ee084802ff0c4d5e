#ifndef CBOP_CBOP_H
#define CBOP_CBOP_H

#include <stddef.h>

#if defined(_WIN32)
#define CBOP_API __declspec(dllexport)
#else
#define CBOP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct cbop_problem cbop_problem;

/* The first four values double as process exit codes. */
typedef enum {
  CBOP_OK = 0,
  CBOP_CHECK_FAILED = 1,
  CBOP_INPUT_ERROR = 2,
  CBOP_THEORY_VIOLATION = 3,
  CBOP_DEGENERATE = 4,
  CBOP_PRECISION_EXHAUSTED = 5,
  CBOP_NUMERIC_ERROR = 6,
  CBOP_INTERNAL_ERROR = 7
} cbop_status;

typedef enum { CBOP_MODE_AUTO = 0, CBOP_MODE_EXACT = 1, CBOP_MODE_FLOAT = 2 } cbop_mode;

typedef struct {
  size_t order;      /* truncation order N */
  long degree;       /* -1: command default */
  long kmax;         /* -1: command default */
  cbop_mode mode;
  const char* suite; /* NULL: "all" */
  const char* point; /* NULL: command default; decimal or p/q */
  double eps;        /* <= 0: default decades 1e-4, 1e-5, 1e-6 */
  int csv;           /* nonzero: CSV instead of JSON */
} cbop_options;

CBOP_API void cbop_options_init(cbop_options* opts);

/* Parses a measure-pair document. On failure *out is NULL. */
CBOP_API cbop_status cbop_problem_from_json(const char* json, cbop_problem** out);
CBOP_API void cbop_problem_free(cbop_problem* problem);
/* Nonzero when both measures are discrete. */
CBOP_API int cbop_problem_is_discrete(const cbop_problem* problem);

/* Each command writes its report to *out (release with cbop_string_free) and
   returns CBOP_OK, CBOP_CHECK_FAILED or CBOP_THEORY_VIOLATION. On any other
   status *out is NULL and cbop_last_error() describes the failure. */
CBOP_API cbop_status cbop_cmd_bimoments(const cbop_problem* p, const cbop_options* opts, char** out);
CBOP_API cbop_status cbop_cmd_verify(const cbop_problem* p, const cbop_options* opts, char** out);
CBOP_API cbop_status cbop_cmd_zeros(const cbop_problem* p, const cbop_options* opts, char** out);
CBOP_API cbop_status cbop_cmd_bop(const cbop_problem* p, const cbop_options* opts, char** out);
CBOP_API cbop_status cbop_cmd_recurrence(const cbop_problem* p, const cbop_options* opts, char** out);
CBOP_API cbop_status cbop_cmd_rhp(const cbop_problem* p, const cbop_options* opts, char** out);

/* Warnings raised by the last command on this thread, newline separated. */
CBOP_API const char* cbop_last_warnings(void);
CBOP_API const char* cbop_last_error(void);
CBOP_API void cbop_string_free(char* s);

/* 0 pass, 1 check failure, 2 usage or input error, 3 theory violation. */
CBOP_API int cbop_exit_code(cbop_status status);

/* Bit budget for exact intermediates; exceeding it gives CBOP_PRECISION_EXHAUSTED. */
CBOP_API void cbop_set_rational_bit_limit(size_t bits);
CBOP_API const char* cbop_version(void);

#ifdef __cplusplus
}
#endif

#endif
