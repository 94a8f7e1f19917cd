/*
 * Copyright 2026 cumulantcalc developers
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the cumulantcalc shared library. All rich inputs and
 * outputs travel as JSON (or plain-text) strings; handles are opaque.
 *
 * Return-code contract, shared with the CLI exit codes:
 *   CC_OK       (0)  success / characterized / null hypothesis retained
 *   CC_ERROR    (1)  operational error; cc_last_error() has the message
 *   CC_VIOLATED (2)  principled negative: violation certificate or
 *                    invariance rejection
 *
 * Output strings are allocated by the library and must be released with
 * cc_string_free(). A context is not thread-safe; use one per thread.
 */
#ifndef CUMULANTCALC_H
#define CUMULANTCALC_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct cc_context cc_context;

enum {
    CC_OK = 0,
    CC_ERROR = 1,
    CC_VIOLATED = 2
};

cc_context* cc_context_new(void);
void cc_context_free(cc_context* ctx);

/* Message of the most recent CC_ERROR on this context; empty string if none.
 * The pointer stays valid until the next call on the same context. */
const char* cc_last_error(const cc_context* ctx);

const char* cc_version(void);

void cc_string_free(char* s);

/* Moment <-> cumulant conversion of a comma-separated rational sequence
 * ("0,1,0,3"). `from` is "moments" or "cumulants"; the output sequence is
 * written to *out in the same format. */
int cc_convert(cc_context* ctx, const char* from, const char* sequence, char** out);

/* Symbolic characterization of a scenario document (JSON text). `mode` is
 * "prop1", "prop2" or "vector"; `order` <= 12 bounds the cumulant orders
 * tested (pass 0 to use the document's own order). *report receives the
 * report envelope JSON. Returns CC_VIOLATED when the verdict is Violated. */
int cc_characterize(cc_context* ctx, const char* scenario_json, const char* mode,
                    int order, char** report);

/* Monte-Carlo invariance test. `request_json` carries left/right generator
 * specs, radius, angles, n, seed and alpha; see the README for the schema.
 * Returns CC_VIOLATED when the rejection count exceeds the H0 band. */
int cc_simulate(cc_context* ctx, const char* request_json, char** report);

/* Quadratic-reduction residual check: `coeffs` is a comma-separated list,
 * `csv` the sample table text. Returns CC_VIOLATED when the maximum
 * residual is >= 1e-12. */
int cc_reduce(cc_context* ctx, const char* coeffs, const char* csv, char** report);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CUMULANTCALC_H */
