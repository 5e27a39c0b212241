#ifndef CARC_H
#define CARC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CarcStatus {
  CARC_STATUS_OK = 0,
  /*
   The call succeeded with a negative verdict.
   */
  CARC_STATUS_NEGATIVE = 1,
  CARC_STATUS_NULL_ARGUMENT = 2,
  CARC_STATUS_PARSE = 3,
  /*
   The input violates the operation's precondition.
   */
  CARC_STATUS_PRECONDITION = 4,
  CARC_STATUS_INTERNAL = 5,
} CarcStatus;

typedef enum CarcClass {
  CARC_CLASS_NHCA = 0,
  CARC_CLASS_PHCA_FROM_NHCA = 1,
  CARC_CLASS_PHCA_FROM_PCA = 2,
  CARC_CLASS_UHCA = 3,
} CarcClass;

typedef struct CarcCertificate CarcCertificate;

typedef struct CarcModel CarcModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failure on this thread, or null. Valid until the
 next failing call on the same thread.
 */
const char *carc_last_error(void);

/*
 Parses `.cam` text into a new model handle.

 # Safety
 `text` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum CarcStatus carc_model_parse(const char *text, struct CarcModel **out);

/*
 # Safety
 `model` must come from this library and not be freed twice.
 */
void carc_model_free(struct CarcModel *model);

/*
 Number of arcs, or 0 for a null handle.

 # Safety
 `model` must be null or a live handle.
 */
size_t carc_model_arc_count(const struct CarcModel *model);

/*
 The model as `.cam` text; free with [`carc_string_free`].

 # Safety
 `model` must be null or a live handle.
 */
char *carc_model_to_string(const struct CarcModel *model);

/*
 # Safety
 `s` must come from this library and not be freed twice.
 */
void carc_string_free(char *s);

/*
 Checks that no two or three arcs cover the circle. On a negative verdict
 the covering arcs are written to `arcs` (room for 3) and their count to `len`.

 # Safety
 `model` must be a live handle; `arcs` must hold 3 values; `len` must be valid.
 */
enum CarcStatus carc_authenticate_nhca(const struct CarcModel *model, size_t *arcs, size_t *len);

/*
 Runs a recognizer and stores its certificate in `out`. Returns `Ok` for a
 positive and `Negative` for a negative certificate.

 # Safety
 `model` must be a live handle and `out` a valid pointer.
 */
enum CarcStatus carc_recognize(const struct CarcModel *model,
                               enum CarcClass class_,
                               struct CarcCertificate **out);

/*
 # Safety
 `cert` must be null or a live handle.
 */
bool carc_certificate_is_positive(const struct CarcCertificate *cert);

/*
 Copies the model of a positive certificate into a new handle.

 # Safety
 `cert` must be a live handle and `out` a valid pointer.
 */
enum CarcStatus carc_certificate_model(const struct CarcCertificate *cert, struct CarcModel **out);

/*
 Re-checks a negative certificate against the model it was computed for.

 # Safety
 Both handles must be null or live.
 */
bool carc_certificate_verify(const struct CarcCertificate *cert, const struct CarcModel *input);

/*
 The `key=value` report; free with [`carc_string_free`].

 # Safety
 `cert` must be null or a live handle.
 */
char *carc_certificate_to_string(const struct CarcCertificate *cert);

/*
 # Safety
 `cert` must come from this library and not be freed twice.
 */
void carc_certificate_free(struct CarcCertificate *cert);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CARC_H */
