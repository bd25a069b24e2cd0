/* C interface for the antiflag library: construction and exact verification
 * of directed strongly regular graphs on antiflags of tactical
 * configurations, with canonical certificates and automorphism groups.
 *
 * Digraphs are opaque AfDigraph handles. Constructors return NULL on
 * failure; status-returning calls give AF_OK (0) on success. The last error
 * message is kept per thread and read with af_last_error_message.
 */

#ifndef ANTIFLAG_H
#define ANTIFLAG_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct AfDigraph AfDigraph;

typedef enum AfStatus {
  AF_OK = 0,
  AF_NULL_POINTER = 1,
  AF_INVALID_ARGUMENT = 2,
  AF_NOT_DSRG = 3,
  AF_NOT_SRG = 4,
  AF_BUFFER_TOO_SMALL = 5,
  AF_CONSTRUCTION_FAILED = 6,
} AfStatus;

/* Parameters (v, k, t, lambda, mu) of a verified directed strongly regular
 * graph. */
typedef struct AfDsrgParams {
  uint64_t v;
  uint64_t k;
  uint64_t t;
  uint64_t lambda;
  uint64_t mu;
} AfDsrgParams;

/* Parameters (v, k, lambda, mu) of a verified strongly regular graph. */
typedef struct AfSrgParams {
  uint64_t v;
  uint64_t k;
  uint64_t lambda;
  uint64_t mu;
} AfSrgParams;

/* Static version string. */
const char *af_version(void);

/* Copy the calling thread's last error (NUL-terminated) into buf; returns
 * the full length including the terminator, or 0 when no error is set.
 * Pass buf = NULL to query the length. */
size_t af_last_error_message(char *buf, size_t cap);

/* --- handles ---------------------------------------------------------- */

/* Build from a row-major 0/1 byte matrix with n*n entries. */
AfDigraph *af_digraph_from_matrix(size_t n, const uint8_t *entries);

/* Parse the digraph01 text format (first line the order, then one row of
 * contiguous 0/1 characters per vertex). */
AfDigraph *af_digraph_parse01(const char *text);

void af_digraph_free(AfDigraph *graph);

size_t af_digraph_order(const AfDigraph *graph);

/* Copy the row-major adjacency matrix (order^2 bytes) into buf. */
AfStatus af_digraph_matrix(const AfDigraph *graph, uint8_t *buf, size_t cap);

AfDigraph *af_digraph_transpose(const AfDigraph *graph);
AfDigraph *af_digraph_complement(const AfDigraph *graph);
AfDigraph *af_digraph_symmetrize(const AfDigraph *graph);

/* --- constructions ---------------------------------------------------- */

/* Construction I with the deterministic default grouped design;
 * requires r >= 2, q >= 2 and q - 1 = a*b. */
AfDigraph *af_construct_c1_general(size_t r, size_t q, size_t a, size_t b);

/* Construction I, b = 1 specialization, strict pairing. */
AfDigraph *af_construct_c1_b1(size_t r, size_t q);

/* Construction I, a = 1 specialization, default part map. */
AfDigraph *af_construct_c1_a1(size_t r, size_t q);

/* Construction II on the chunked family with per-point parameters
 * (n-1, s, l, d); variant 0 = D1, 1 = D2; m >= 1 blow-up copies. */
AfDigraph *af_construct_c2(size_t n, size_t s, size_t l, size_t d,
                           int32_t variant, size_t m);

/* Construction II on the projective plane of prime order. */
AfDigraph *af_construct_c2_plane(size_t order, int32_t variant, size_t m);

/* --- verification and classification ---------------------------------- */

/* Exact check of JA = AJ = kJ and A^2 = tI + lambda A + mu (J - I - A);
 * fills out (if non-NULL) on success, otherwise returns AF_NOT_DSRG and
 * records the first violating entry as the error message. */
AfStatus af_verify_dsrg(const AfDigraph *graph, AfDsrgParams *out);

/* Exact SRG check for symmetric graphs. */
AfStatus af_verify_srg(const AfDigraph *graph, AfSrgParams *out);

/* Relabeling-invariant certificate; equal certificates characterize
 * isomorphic digraphs. Query the length first, then fill the buffer. */
size_t af_certificate_len(const AfDigraph *graph);
AfStatus af_certificate(const AfDigraph *graph, uint8_t *buf, size_t cap);

/* Writes 1 into *out when the graphs are isomorphic, else 0. */
AfStatus af_is_isomorphic(const AfDigraph *first, const AfDigraph *second,
                          uint8_t *out);

/* Order of the full automorphism group. */
AfStatus af_automorphism_order(const AfDigraph *graph, uint64_t *out);

/* Recognized name of the automorphism group for orders <= 24 (for example
 * "D12", "C2xC2" in UTF-8, "S4", "C5:C4" in UTF-8), NUL-terminated; returns
 * the needed length including the terminator. */
size_t af_automorphism_name(const AfDigraph *graph, char *buf, size_t cap);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* ANTIFLAG_H */
