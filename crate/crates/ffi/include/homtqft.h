/* C interface of the homtqft library. */

#ifndef HOMTQFT_H
#define HOMTQFT_H

/* Generated by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Status code of every fallible call.
 */
typedef enum HtqStatus {
  /*
   success
   */
  HTQ_STATUS_OK = 0,
  /*
   a required pointer argument was null
   */
  HTQ_STATUS_NULL_POINTER = 1,
  /*
   an input string was not valid UTF-8
   */
  HTQ_STATUS_UTF8 = 2,
  /*
   the input failed to parse or violated its schema
   */
  HTQ_STATUS_PARSE = 3,
  /*
   the computation rejected the input (domain error)
   */
  HTQ_STATUS_DOMAIN = 4,
  /*
   a dual-route or exactness verification failed
   */
  HTQ_STATUS_MISMATCH = 5,
  /*
   an internal invariant was violated
   */
  HTQ_STATUS_INTERNAL = 6,
} HtqStatus;

/*
 Opaque parsed cobordism word.
 */
typedef struct HtqWord HtqWord;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Last error message of the current thread; the pointer stays valid
 until the next failing call on the same thread.
 */
const char *htq_last_error_message(void);

/*
 ABI version of this header; bumped on any breaking change.
 */
uint32_t htq_abi_version(void);

/*
 Frees a string returned by any of the `*_json` functions.

 # Safety
 `s` must be a pointer previously returned by this library (or null).
 */
void htq_string_free(char *s);

/*
 Parses a cobordism word from its JSON form
 `{"start_g": g, "ops": [{"mcg": [[..]]} | "add_handle" | "remove_handle", ..]}`.

 # Safety
 `json` must be a NUL-terminated string; `out` must be a valid
 pointer. On success the handle must be released with
 [`htq_word_free`].
 */
enum HtqStatus htq_word_parse(const char *json, struct HtqWord **out);

/*
 Releases a word handle.

 # Safety
 `word` must come from [`htq_word_parse`] (or be null) and must not
 be used afterwards.
 */
void htq_word_free(struct HtqWord *word);

/*
 Alexander polynomial of the word as `{"poly": {"coeffs": {..}}}`.

 # Safety
 `word` must be a live handle; `out_json` must be valid.
 */
enum HtqStatus htq_word_alexander(const struct HtqWord *word, char **out_json);

/*
 Fundamental torsion weights of the word as `{"weights": {..}}`.

 # Safety
 `word` must be a live handle; `out_json` must be valid.
 */
enum HtqStatus htq_word_weights(const struct HtqWord *word, char **out_json);

/*
 Lescop invariant of the word's closed manifold as
 `{"value": "a/b", "sign_certain": bool}`.

 # Safety
 `word` must be a live handle; `out_json` must be valid.
 */
enum HtqStatus htq_word_lescop(const struct HtqWord *word, char **out_json);

/*
 p-modular weights and both mod-p Alexander routes of the word.

 # Safety
 `word` must be a live handle; `out_json` must be valid.
 */
enum HtqStatus htq_word_pmod(const struct HtqWord *word, uint32_t p, char **out_json);

/*
 Lescop invariant of a polynomial given as
 `{"coeffs": {"<exp>": int, ..}}`.

 # Safety
 `poly_json` must be NUL-terminated; `out_json` must be valid.
 */
enum HtqStatus htq_lescop_from_polynomial(const char *poly_json, char **out_json);

/*
 Twist value of a bounding curve given as
 `{"g": g, "h": h, "u": [[..]], "v": [[..]]}`.

 # Safety
 `curve_json` must be NUL-terminated; `out_twist` must be valid.
 */
enum HtqStatus htq_casson_twist(const char *curve_json, int64_t *out_twist);

/*
 Cut-number certificate report for `{"monodromy": [[..]]}` or
 `{"poly": {..}, "b1": n}`.

 # Safety
 `input_json` must be NUL-terminated; `out_json` must be valid.
 */
enum HtqStatus htq_cut_report(const char *input_json, char **out_json);

/*
 Coefficient and dimension tables as JSON.

 # Safety
 `out_json` must be valid.
 */
enum HtqStatus htq_tables(char **out_json);

/*
 Runs a named check suite; `Mismatch` when any check fails, with the
 full report still written.

 # Safety
 `suite` must be NUL-terminated; `out_json` must be valid.
 */
enum HtqStatus htq_check_suite(const char *suite,
                               uint32_t gmax,
                               uint32_t p,
                               uint64_t seed,
                               char **out_json);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* HOMTQFT_H */
