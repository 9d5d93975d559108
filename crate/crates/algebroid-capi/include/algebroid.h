/* C interface of the algebroid engine.
 *
 * Every function returns a status code (see ALGV_*). Results come back
 * through out-pointers; strings returned by the library must be released
 * with algv_string_free, handles with their _free function. The last error
 * message for the calling thread is available via algv_last_error.
 *
 * Kept in sync with crates/algebroid-capi/src/lib.rs (regenerate with
 * cbindgen --config cbindgen.toml if the surface changes).
 */

#ifndef ALGEBROID_H
#define ALGEBROID_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define ALGV_OK 0
#define ALGV_ERR_INPUT 2
#define ALGV_ERR_NULL 3
#define ALGV_ERR_UTF8 4
#define ALGV_ERR_PANIC 5

/* Opaque Courant model handle. */
typedef struct AlgvCourant AlgvCourant;

/* Opaque vertex model handle (shipped sign conventions). */
typedef struct AlgvVertex AlgvVertex;

/* Version string of the engine. Static; do not free. */
const char *algv_version(void);

/* Last error message for this thread, or NULL. Free with algv_string_free. */
char *algv_last_error(void);

/* Release a string returned by the library. */
void algv_string_free(char *s);

/* Create a Courant model from a twist expression (NULL or empty = flat). */
int algv_courant_new(unsigned int n, const char *twist, AlgvCourant **out);

void algv_courant_free(AlgvCourant *m);

/* Dorfman bracket of two sections "[form|field]", canonical text result. */
int algv_courant_bracket(const AlgvCourant *m, const char *left,
                         const char *right, char **out);

/* Symmetric pairing of two sections, canonical text result. */
int algv_courant_pairing(const AlgvCourant *m, const char *left,
                         const char *right, char **out);

/* Run the Courant axiom suite; JSON report to out. */
int algv_courant_check(const AlgvCourant *m, unsigned int maxdeg,
                       unsigned long long trials, unsigned long long seed,
                       char **out);

/* Create a vertex model with the shipped signs and an optional closed twist. */
int algv_vertex_new(unsigned int n, const char *twist, AlgvVertex **out);

void algv_vertex_free(AlgvVertex *m);

/* op = 0 bracket, 1 pairing, 2 star (left is a polynomial). */
int algv_vertex_op(const AlgvVertex *m, int op, const char *left,
                   const char *right, char **out);

/* Run the truncated axiom suite; JSON report to out. */
int algv_vertex_check(const AlgvVertex *m, unsigned int maxdeg,
                      unsigned long long trials, unsigned long long seed,
                      char **out);

/* Enumerate the 64 sign assignments; JSON survivor report to out. */
int algv_sign_search(unsigned int n, unsigned long long seed,
                     unsigned long long trials, unsigned int maxdeg,
                     char **out);

/* Calculus ops: "d", "wedge", "iota", "lie", "kappa".
 * right may be NULL for unary ops. */
int algv_calc(const char *op, unsigned int n, const char *left,
              const char *right, char **out);

#ifdef __cplusplus
}
#endif

#endif /* ALGEBROID_H */
