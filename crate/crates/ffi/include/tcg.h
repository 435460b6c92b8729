#ifndef TCG_H
#define TCG_H

/* Generated with cbindgen:0.29.4 */

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TcgStatus {
  TCG_STATUS_OK = 0,
  TCG_STATUS_NULL_POINTER = 1,
  TCG_STATUS_INVALID_UTF8 = 2,
  TCG_STATUS_SYNTAX = 3,
  TCG_STATUS_SYMBOL = 4,
  TCG_STATUS_INVALID_ARGUMENT = 5,
  TCG_STATUS_INVALID_GRAMMAR = 6,
  TCG_STATUS_FORMAT = 7,
  TCG_STATUS_RESOURCE_LIMIT = 8,
  TCG_STATUS_IO = 9,
  TCG_STATUS_PANIC = 10,
} TcgStatus;

/**
 * A minimal complete DFA.
 */
typedef struct TcgDfa TcgDfa;

/**
 * A validated tree-controlled grammar.
 */
typedef struct TcgTcGrammar TcgTcGrammar;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *tcg_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void tcg_string_free(char *s);

/**
 * Compiles `expr` over the whitespace-separated `alphabet`.
 *
 * # Safety
 * `expr` and `alphabet` must be valid C strings; `out_dfa` must be writable.
 */
enum TcgStatus tcg_dfa_from_regex(const char *expr, const char *alphabet, struct TcgDfa **out_dfa);

/**
 * Reads any regular-language document (dfa, nfa, rlg, regex, slt).
 *
 * # Safety
 * `toml` must be a valid C string; `out_dfa` must be writable.
 */
enum TcgStatus tcg_dfa_from_document(const char *toml, struct TcgDfa **out_dfa);

/**
 * # Safety
 * `dfa` must be null or a handle from this library, not yet freed.
 */
void tcg_dfa_free(struct TcgDfa *dfa);

/**
 * # Safety
 * `dfa` must be a live handle; `out_states` must be writable.
 */
enum TcgStatus tcg_dfa_state_complexity(const struct TcgDfa *dfa, size_t *out_states);

/**
 * Membership of a whitespace-separated word (single-character symbols may
 * be glued).
 *
 * # Safety
 * `dfa` must be a live handle, `word` a valid C string, `out_member` writable.
 */
enum TcgStatus tcg_dfa_accepts(const struct TcgDfa *dfa, const char *word, bool *out_member);

/**
 * # Safety
 * `a` and `b` must be live handles; `out_equal` must be writable.
 */
enum TcgStatus tcg_dfa_equivalent(const struct TcgDfa *a, const struct TcgDfa *b, bool *out_equal);

/**
 * # Safety
 * `dfa` must be a live handle; `out_member` must be writable.
 */
enum TcgStatus tcg_dfa_is_slt(const struct TcgDfa *dfa, size_t k, bool *out_member);

/**
 * Serializes the automaton as a `dfa` document.
 *
 * # Safety
 * `dfa` must be a live handle; `out_toml` must be writable.
 */
enum TcgStatus tcg_dfa_to_document(const struct TcgDfa *dfa, char **out_toml);

/**
 * Reads and validates a `tc` document.
 *
 * # Safety
 * `toml` must be a valid C string; `out_grammar` must be writable.
 */
enum TcgStatus tcg_tc_from_document(const char *toml, struct TcgTcGrammar **out_grammar);

/**
 * # Safety
 * `grammar` must be null or a handle from this library, not yet freed.
 */
void tcg_tc_free(struct TcgTcGrammar *grammar);

/**
 * Words of length at most `max_len` in shortlex order, one per line.
 *
 * # Safety
 * `grammar` must be a live handle; `out_words` and `out_count` writable.
 */
enum TcgStatus tcg_tc_enumerate(const struct TcgTcGrammar *grammar,
                                size_t max_len,
                                char **out_words,
                                size_t *out_count);

/**
 * Library version as a static string.
 */
const char *tcg_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TCG_H */
