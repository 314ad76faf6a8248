#ifndef EQSMOOTH_H
#define EQSMOOTH_H

/*
 * C interface to the eqsmooth library.
 *
 * Objects are opaque handles released with the matching *_free function.
 * Every fallible call returns an eqs_status; on failure a description is
 * available from eqs_last_error() on the calling thread until the next call.
 * Strings handed out through char** parameters are NUL-terminated, owned by
 * the caller, and released with eqs_string_free().
 */

#include <stdint.h>

#if defined(_WIN32)
#if defined(EQSMOOTH_BUILDING)
#define EQS_API __declspec(dllexport)
#else
#define EQS_API __declspec(dllimport)
#endif
#else
#define EQS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct eqs_scenario eqs_scenario;
typedef struct eqs_report eqs_report;

typedef enum eqs_status {
  EQS_OK = 0,
  EQS_ERR_ARGUMENT = 1,   /* null pointer, bad enum value, bad range */
  EQS_ERR_PARSE = 2,      /* ill-formed scenario document or sweep spec */
  EQS_ERR_VALIDATION = 3, /* scenario violates a construction rule */
  EQS_ERR_DOMAIN = 4,     /* hypothesis of a formula fails (e.g. fixed vector) */
  EQS_ERR_INTERNAL = 5
} eqs_status;

typedef enum eqs_format { EQS_FORMAT_TEXT = 0, EQS_FORMAT_STRUCTURED = 1 } eqs_format;

typedef enum eqs_verdict { EQS_NONSMOOTHABLE = 0, EQS_NO_OBSTRUCTION = 1 } eqs_verdict;

EQS_API const char* eqs_version(void);
EQS_API const char* eqs_last_error(void);
EQS_API void eqs_string_free(char* s);

/* Scenarios */
EQS_API eqs_status eqs_scenario_parse(const char* json_text, eqs_scenario** out);
EQS_API eqs_status eqs_scenario_z2_template(int l, int k, eqs_scenario** out);
EQS_API eqs_status eqs_scenario_klein_template(int l1, int l2, int k, eqs_scenario** out);
EQS_API eqs_status eqs_scenario_serialize(const eqs_scenario* s, char** out);
/* Writes the violation list (possibly empty) and returns EQS_OK, or
 * EQS_ERR_VALIDATION when at least one violation exists. */
EQS_API eqs_status eqs_scenario_validate(const eqs_scenario* s, eqs_format format, char** out);
EQS_API void eqs_scenario_free(eqs_scenario* s);

/* Obstruction checks */
EQS_API eqs_status eqs_check(const eqs_scenario* s, eqs_report** out);
EQS_API int eqs_report_hypotheses_hold(const eqs_report* r);
EQS_API eqs_verdict eqs_report_verdict(const eqs_report* r);
/* b and k as exact values; k is written as numerator/denominator. */
EQS_API eqs_status eqs_report_bound(const eqs_report* r, int64_t* b, int64_t* k_num,
                                    int64_t* k_den);
EQS_API eqs_status eqs_report_render(const eqs_report* r, eqs_format format, char** out);
EQS_API void eqs_report_free(eqs_report* r);

EQS_API eqs_status eqs_invariants(const eqs_scenario* s, eqs_format format, char** out);

/* Representation ring of Z/4: multiplicities of C_0..C_3. */
EQS_API eqs_status eqs_repring_tomdieck(const int64_t w_perp[4], const int64_t v_perp[4],
                                        int64_t degree, int element, eqs_format format,
                                        char** out);
EQS_API eqs_status eqs_repring_spaces(int64_t m, int64_t n, int64_t b, int64_t k,
                                      eqs_format format, char** out);

/* Template sweeps: family "z2" or "klein", ranges like "l=3..9,k=0..3". */
EQS_API eqs_status eqs_enumerate(const char* family, const char* ranges, unsigned jobs,
                                 eqs_format format, char** out);

#ifdef __cplusplus
}
#endif

#endif /* EQSMOOTH_H */
