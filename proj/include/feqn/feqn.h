/* Copyright (c) feqn contributors.
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the feqn engines. Every entry point returns a status code; on failure the
 * message is available from feqn_last_error() on the calling thread until the next call.
 */
#ifndef FEQN_FEQN_H
#define FEQN_FEQN_H

#include <stdint.h>

#if defined(_WIN32)
#  if defined(FEQN_BUILDING_LIBRARY)
#    define FEQN_API __declspec(dllexport)
#  else
#    define FEQN_API __declspec(dllimport)
#  endif
#else
#  define FEQN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum feqn_status {
    FEQN_OK = 0,
    FEQN_E_INVALID_ARGUMENT = 1,
    FEQN_E_PARSE = 2,
    FEQN_E_PRECONDITION = 3,
    FEQN_E_INCONSISTENT = 4,
    FEQN_E_MISSING_DATA = 5,
    FEQN_E_SIZE_GUARD = 6,
    FEQN_E_INTERNAL = 7,
    FEQN_E_UNKNOWN_COMMAND = 8
} feqn_status;

/* Opaque result of one command run. */
typedef struct feqn_report feqn_report;

FEQN_API const char* feqn_version(void);
FEQN_API const char* feqn_status_name(feqn_status status);
FEQN_API const char* feqn_last_error(void);

/* Runs `command` on the problem document `spec_json`. `command` may be NULL when the document
 * carries a "command" field. `seed` may be NULL to use the document's seed or the default. */
FEQN_API feqn_status feqn_run(const char* command, const char* spec_json, const uint64_t* seed,
                              feqn_report** out);

/* Machine-readable report (schema "1"); identical bytes for identical spec and seed. */
FEQN_API const char* feqn_report_json(const feqn_report* report);
/* Human-readable rendering of the same values, plus timing. */
FEQN_API const char* feqn_report_text(const feqn_report* report);
/* The report's "verdict" field rendered as a string. */
FEQN_API const char* feqn_report_verdict(const feqn_report* report);
FEQN_API double feqn_report_elapsed_ms(const feqn_report* report);
FEQN_API void feqn_report_free(feqn_report* report);

/* Parses and validates a problem document and writes its canonical rendering to *canonical,
 * to be released with feqn_string_free. */
FEQN_API feqn_status feqn_normalize_spec(const char* command, const char* spec_json, char** canonical);
FEQN_API void feqn_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* FEQN_FEQN_H */
