/* C interface to the rectangular Stokes-complex solver library.
 *
 * All entry points return rs_status; failures leave a human-readable
 * message retrievable through rs_last_error().  Studies are returned as
 * opaque handles and must be released with rs_study_destroy().
 */
#ifndef RECTSTOKES_H
#define RECTSTOKES_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rs_status {
  RS_OK = 0,
  RS_ERR_INVALID_ARGUMENT = 1,
  RS_ERR_SOLVER = 2,
  RS_ERR_VERIFICATION = 3,
  RS_ERR_INTERNAL = 4
} rs_status;

typedef enum rs_element {
  RS_ELEMENT_PLATE12 = 0,
  RS_ELEMENT_ADINI = 1
} rs_element;

typedef enum rs_format { RS_FORMAT_CSV = 0, RS_FORMAT_TABLE = 1 } rs_format;

typedef struct rs_options {
  double x_min, x_max, y_min, y_max; /* rectangular domain */
  const int* levels;                 /* n values, strictly increasing */
  int level_count;                   /* 0 keeps the default 4,8,16,32,64 */
  rs_element element;                /* plate discretization choice */
  double tol;                        /* solver residual tolerance */
  int quad_assembly;                 /* Gauss points per axis, forms */
  int quad_error;                    /* Gauss points per axis, loads/errors */
} rs_options;

/* Fills in the defaults: domain [0,2]x[0,1], levels 4..64, plate12,
 * tol 1e-10, 5/10 quadrature points. */
void rs_options_init(rs_options* opts);

typedef struct rs_study rs_study;

/* Clamped plate refinement study (biharmonic problem) with the built-in
 * manufactured solution. */
rs_status rs_run_biharmonic(const rs_options* opts, rs_study** out);

/* Stokes refinement study including postprocessed pressure errors. */
rs_status rs_run_stokes(const rs_options* opts, rs_study** out);

/* Structural checks of the discrete complex per level.  Returns RS_OK
 * even when checks fail; inspect rs_study_passed. */
rs_status rs_run_complex_check(const rs_options* opts, rs_study** out);

void rs_study_destroy(rs_study* study);

int rs_study_row_count(const rs_study* study);
int rs_study_column_count(const rs_study* study);
const char* rs_study_column_name(const rs_study* study, int col);

/* Returns 1 and writes the value if the cell is defined, else 0. */
int rs_study_value(const rs_study* study, int row, int col, double* out);

/* 1 when every per-row check passed (always 1 for error studies). */
int rs_study_passed(const rs_study* study);

/* Renders into buf (NUL-terminated, truncated to cap) and returns the
 * full untruncated length; call with buf == NULL to size the buffer. */
size_t rs_study_render(const rs_study* study, rs_format format, char* buf,
                       size_t cap);

const char* rs_status_message(rs_status status);
const char* rs_last_error(void);
const char* rs_version(void);

#ifdef __cplusplus
}
#endif

#endif /* RECTSTOKES_H */
