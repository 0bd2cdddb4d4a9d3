/* C API for the gentle-algebra toolkit: opaque handles, error codes, JSON
 * payloads.  Every function returns a gentle_status; on failure the message
 * is available through gentle_last_error() until the next failing call on
 * the same thread.  Strings returned through char** are heap-allocated and
 * must be released with gentle_string_free(). */
#ifndef GENTLE_H
#define GENTLE_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    GENTLE_OK = 0,
    GENTLE_ERR_DOMAIN = 1, /* invalid input or unsupported request */
    GENTLE_ERR_USAGE = 2,  /* bad arguments to the call itself */
    GENTLE_ERR_INTERNAL = 3
} gentle_status;

/* A working context: ground field, datum, and the algebras built from it.
 * field_spec is "Q" or "Fp:<p>"; datum_json follows
 * {"m":[3,3],"relations":[[[1,1],[2,1]],...]}.  The seed drives every
 * randomized trial and is recorded in each output; pretty toggles indented
 * JSON. */
typedef struct gentle_ctx gentle_ctx;
typedef struct gentle_complex gentle_complex;

gentle_status gentle_ctx_new(const char* field_spec, const char* datum_json, uint64_t seed,
                             int pretty, gentle_ctx** out);
void gentle_ctx_free(gentle_ctx* ctx);

const char* gentle_last_error(void);
void gentle_string_free(char* s);

/* ---- datum ---- */
gentle_status gentle_datum_validate(const char* datum_json, uint64_t seed, int pretty,
                                    char** out_json);
gentle_status gentle_datum_sets(gentle_ctx* ctx, char** out_json);
gentle_status gentle_datum_cycles(gentle_ctx* ctx, char** out_json);

/* ---- algebra ---- */
gentle_status gentle_algebra_info(gentle_ctx* ctx, char** out_json);
gentle_status gentle_quiver_dot(gentle_ctx* ctx, char** out_dot);

/* ---- words ---- */
gentle_status gentle_word_check(gentle_ctx* ctx, const char* word_json, char** out_json);
gentle_status gentle_word_build(gentle_ctx* ctx, const char* word_json, gentle_complex** out);
gentle_status gentle_word_equiv(gentle_ctx* ctx, const char* word_a, const char* word_b,
                                char** out_json);
gentle_status gentle_word_enumerate(gentle_ctx* ctx, int max_segments, int window_lo,
                                    int window_hi, int bands, char** out_json);
gentle_status gentle_word_gluing_dot(gentle_ctx* ctx, const char* word_json, char** out_dot);

/* ---- complexes ---- */
gentle_status gentle_complex_parse(gentle_ctx* ctx, const char* complex_json,
                                   gentle_complex** out);
void gentle_complex_free(gentle_complex* X);
gentle_status gentle_complex_to_json(gentle_ctx* ctx, const gentle_complex* X, char** out_json);
gentle_status gentle_complex_check(gentle_ctx* ctx, const gentle_complex* X, char** out_json);
gentle_status gentle_complex_cohomology(gentle_ctx* ctx, const gentle_complex* X,
                                        char** out_json);
gentle_status gentle_complex_decompose(gentle_ctx* ctx, const gentle_complex* X,
                                       char** out_json);
gentle_status gentle_complex_iso(gentle_ctx* ctx, const gentle_complex* X,
                                 const gentle_complex* Y, char** out_json);

/* ---- bunch of chains ---- */
gentle_status gentle_bunch_show(gentle_ctx* ctx, int window_lo, int window_hi, char** out_json);

/* ---- generation certificates ---- */
gentle_status gentle_rouquier_certify(gentle_ctx* ctx, const gentle_complex* X,
                                      char** out_json);
gentle_status gentle_rouquier_fatpoint(const char* field_spec, int n, uint64_t seed, int pretty,
                                       char** out_json);

/* ---- acceptance suite ----
 * corpus is "small" or "full"; the report has one line per criterion.
 * failures receives the number of failing criteria. */
gentle_status gentle_suite_run(const char* corpus, uint64_t seed, char** out_report,
                               int* failures);

#ifdef __cplusplus
}
#endif

#endif /* GENTLE_H */
