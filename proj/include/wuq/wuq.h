/* C interface to the wuq library. Every operation takes and returns records
 * in the library's text format. Functions return a status:
 *
 *   WUQ_OK        success, or a positive verdict
 *   WUQ_NEGATIVE  a certified negative outcome; the output holds its certificate
 *   WUQ_ERROR     invalid input or a failed precondition; see wuq_last_error()
 *
 * Output handles are owned by the caller and released with wuq_text_free.
 */
#ifndef WUQ_H
#define WUQ_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(WUQ_BUILDING_LIBRARY)
#define WUQ_API __attribute__((visibility("default")))
#else
#define WUQ_API
#endif

enum { WUQ_OK = 0, WUQ_NEGATIVE = 1, WUQ_ERROR = 2 };

typedef struct wuq_text wuq_text;
typedef struct wuq_model wuq_model;

WUQ_API const char* wuq_version(void);

/* Message of the last WUQ_ERROR on this thread; empty when none. */
WUQ_API const char* wuq_last_error(void);
/* Error category name of the last WUQ_ERROR ("ParseError", ...). */
WUQ_API const char* wuq_last_error_code(void);

WUQ_API const char* wuq_text_data(const wuq_text* text);
WUQ_API size_t wuq_text_size(const wuq_text* text);
WUQ_API void wuq_text_free(wuq_text* text);

/* Seed for all sampled checks made by later calls on this thread. */
WUQ_API void wuq_set_seed(uint64_t seed);

/* Parses any document and returns its canonical text. */
WUQ_API int wuq_canonicalize(const char* document, wuq_text** out);

/* Norm of a `vector` record in a coordinate norm ("sup", "sum",
 * "schreier:<n>"); the output is a norm certificate. */
WUQ_API int wuq_norm(const char* vector, const char* space, wuq_text** out);

/* Builds the default schedule of the given length (tail_kind NULL) or one
 * from a tail descriptor, validates it and returns a schedule certificate.
 * WUQ_NEGATIVE when a clause fails. */
WUQ_API int wuq_schedule_build(size_t length, const char* tail_kind, const char* c, const char* r, wuq_text** out);
/* Validates a `schedule` record. */
WUQ_API int wuq_schedule_validate(const char* schedule, wuq_text** out);

/* Quotient models. */
WUQ_API int wuq_model_create(const char* model, wuq_model** out);
WUQ_API void wuq_model_free(wuq_model* model);
WUQ_API int wuq_model_describe(const wuq_model* model, wuq_text** out);
WUQ_API int wuq_quotient_norm(const wuq_model* model, const char* vector, wuq_text** out);
/* slack: rational >= 1 as text, NULL for 1. */
WUQ_API int wuq_min_norm_preimage(const wuq_model* model, const char* vector, const char* slack, wuq_text** out);
WUQ_API int wuq_covering_constant(const wuq_model* model, wuq_text** out);

/* Unconditionality extraction on a `scene` record. coefficients is an
 * optional `coefficients { a ... }` record; NULL selects the defaults. */
WUQ_API int wuq_extract(const char* scene, const char* coefficients, wuq_text** out);

/* Replays a certificate or scene. lemmas is a comma-separated list of lemma
 * ids for scenes, NULL for all applicable. WUQ_NEGATIVE when a claim fails. */
WUQ_API int wuq_verify(const char* document, const char* lemmas, wuq_text** out);

/* Saturation witness search on a `model` record and a `ys { vector ... }`
 * record; threshold NULL for 2. */
WUQ_API int wuq_saturate(const char* model, const char* ys, size_t budget, const char* threshold, wuq_text** out);
/* Consistent counting-argument trace for even m, as a certificate. */
WUQ_API int wuq_synthetic_trace(size_t m, wuq_text** out);

/* Spreading probe over a `ys` record; starts is a comma-separated list. */
WUQ_API int wuq_probe_spreading(const char* ys, const char* space, size_t k, const char* starts, wuq_text** out);
/* c0 fixing probe on a `scene`; depths comma-separated or NULL for all. */
WUQ_API int wuq_probe_c0_fix(const char* scene, const char* depths, wuq_text** out);

#ifdef __cplusplus
}
#endif

#endif
