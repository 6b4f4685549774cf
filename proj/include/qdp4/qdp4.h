#ifndef QDP4_QDP4_H
#define QDP4_QDP4_H

/* C interface to libqdp4. Results are JSON documents returned as
 * heap-allocated strings; release them with qdp4_string_free. On any status
 * other than QDP4_OK or QDP4_FALSE, qdp4_last_error() describes the failure
 * (per thread). */

#include <stddef.h>

#if defined(_WIN32)
#define QDP4_API __declspec(dllexport)
#else
#define QDP4_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qdp4_status {
  QDP4_OK = 0,
  QDP4_FALSE = 1,      /* a negative verdict: not isomorphic, not separable */
  QDP4_PARSE = 2,
  QDP4_NOT_SMOOTH = 3, /* singular or degenerate pencil */
  QDP4_FIELD = 4,      /* unsupported or mismatched field */
  QDP4_RESOURCE = 5,
  QDP4_INVALID = 6,
  QDP4_INTERNAL = 7
} qdp4_status;

typedef struct qdp4_pencil qdp4_pencil;

QDP4_API const char* qdp4_version(void);
QDP4_API const char* qdp4_last_error(void);
QDP4_API void qdp4_string_free(char* s);

QDP4_API qdp4_status qdp4_pencil_from_json(const char* json, qdp4_pencil** out);
QDP4_API void qdp4_pencil_free(qdp4_pencil* p);
QDP4_API qdp4_status qdp4_pencil_to_json(const qdp4_pencil* p, char** out);

QDP4_API qdp4_status qdp4_analyze(const qdp4_pencil* p, char** report);
/* QDP4_OK when isomorphic, QDP4_FALSE when not; the report is set in both cases. */
QDP4_API qdp4_status qdp4_isomorphic(const qdp4_pencil* a, const qdp4_pencil* b, char** report);
QDP4_API qdp4_status qdp4_aut(const qdp4_pencil* p, char** report);
QDP4_API qdp4_status qdp4_minimal(const qdp4_pencil* p, char** report);
QDP4_API qdp4_status qdp4_count_points(const qdp4_pencil* p, unsigned k, char** report);
/* lambda and mu are scalar strings in the field given as JSON (NULL for Q). */
QDP4_API qdp4_status qdp4_reconstruct(const char* field_json, const char* lambda, const char* mu,
                                      qdp4_pencil** out);

QDP4_API qdp4_status qdp4_kgroups_ranks(const char* input_json, char** report);
/* QDP4_FALSE when the functor is not heavily separable. */
QDP4_API qdp4_status qdp4_groupoid_verify(const char* input_json, char** report);
/* suites: comma-separated names, NULL or "" for all. QDP4_FALSE on any failure. */
QDP4_API qdp4_status qdp4_selftest(const char* suites, char** report);

#ifdef __cplusplus
}
#endif

#endif
