#ifndef LIPSAT_LIPSAT_H
#define LIPSAT_LIPSAT_H

/*
 * C interface to the lipsat library: Lipschitz saturation of affine
 * semigroups in N^d with smooth normalization.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_destroy function. Every call returns a lipsat_status; on
 * failure lipsat_last_error() describes the problem for the calling thread.
 * Strings handed out through char** parameters are heap allocated and must
 * be released with lipsat_string_free. Results are UTF-8 JSON documents
 * (see README.md for their layout) except for the SVG plot.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(LIPSAT_BUILDING)
#    define LIPSAT_API __declspec(dllexport)
#  else
#    define LIPSAT_API __declspec(dllimport)
#  endif
#else
#  define LIPSAT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lipsat_status {
  LIPSAT_OK = 0,
  LIPSAT_ERROR_INVALID_ARGUMENT = 1,
  LIPSAT_ERROR_DIMENSION = 2,
  LIPSAT_ERROR_NOT_SMOOTH = 3,
  LIPSAT_ERROR_PARSE = 4,
  LIPSAT_ERROR_INTERNAL = 5
} lipsat_status;

typedef struct lipsat_semigroup lipsat_semigroup;

LIPSAT_API const char *lipsat_version(void);
LIPSAT_API const char *lipsat_status_string(lipsat_status status);
/* Message of the last failed call on this thread ("" when none). */
LIPSAT_API const char *lipsat_last_error(void);
LIPSAT_API void lipsat_string_free(char *s);

/* `entries` holds `count` generators of length `dim`, row-major. */
LIPSAT_API lipsat_status lipsat_semigroup_create(size_t dim, const int64_t *entries, size_t count,
                                                 lipsat_semigroup **out);
/* JSON document {dim, generators, name?} or one generator per line. */
LIPSAT_API lipsat_status lipsat_semigroup_parse(const char *text, size_t length,
                                                lipsat_semigroup **out);
LIPSAT_API void lipsat_semigroup_destroy(lipsat_semigroup *s);

LIPSAT_API size_t lipsat_semigroup_dim(const lipsat_semigroup *s);
LIPSAT_API size_t lipsat_semigroup_count(const lipsat_semigroup *s);
/* Borrowed pointer, valid for the lifetime of the handle. */
LIPSAT_API const char *lipsat_semigroup_name(const lipsat_semigroup *s);
LIPSAT_API lipsat_status lipsat_semigroup_to_json(const lipsat_semigroup *s, char **json);

/* *smooth is 1 when the normalization is N^d; diagnostics is a JSON object. */
LIPSAT_API lipsat_status lipsat_check_smooth(const lipsat_semigroup *s, int *smooth,
                                             char **diagnostics);

/* Each output array must hold dim entries. Fails with NOT_SMOOTH. */
LIPSAT_API lipsat_status lipsat_bounds(const lipsat_semigroup *s, int64_t *b, int64_t *c,
                                       int64_t *box);

/* Membership of `point` (length dim) with its certificate. */
LIPSAT_API lipsat_status lipsat_check(const lipsat_semigroup *s, const int64_t *point, size_t dim,
                                      int *member, char **verdict);

/* `box` may be NULL for the default bound box; otherwise it holds dim
 * positive entries. `jobs` threads evaluate points in parallel. */
LIPSAT_API lipsat_status lipsat_saturate(const lipsat_semigroup *s, const int64_t *box,
                                         unsigned jobs, int with_certificates, char **result);
LIPSAT_API lipsat_status lipsat_campillo(const lipsat_semigroup *s, const int64_t *box,
                                         char **result);
LIPSAT_API lipsat_status lipsat_diff(const lipsat_semigroup *s, const int64_t *box, unsigned jobs,
                                     int with_certificates, char **result);
LIPSAT_API lipsat_status lipsat_plot_svg(const lipsat_semigroup *s, const int64_t *box,
                                         unsigned jobs, char **svg);

/* Re-checks every certificate embedded in a report. *all_valid is 1 when
 * every certificate holds; details lists the failing verdict positions. */
LIPSAT_API lipsat_status lipsat_verify_report(const char *report, size_t length, int *all_valid,
                                              char **details);

#ifdef __cplusplus
}
#endif

#endif /* LIPSAT_LIPSAT_H */
