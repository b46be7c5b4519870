/* C interface to the mixedvol core: convex-geometry measures (mixed volumes,
 * surface and mixed area measures), Monge-Ampere measures of piecewise linear
 * convex functions, Legendre conjugation, Monte Carlo integral geometry, and
 * the built-in verification suites.
 *
 * All objects cross the boundary either as JSON strings (shapes documented in
 * README.md) or as opaque handles created from such JSON. Every char* the
 * library returns is heap-allocated and must be released with
 * mv_string_free(); every handle with mv_destroy().
 *
 * Functions that return a pointer return NULL on failure; functions that
 * return int return a status code. The code and a human-readable message for
 * the most recent failure on the calling thread are available via
 * mv_last_status() / mv_last_error().
 */

#ifndef MIXEDVOL_H
#define MIXEDVOL_H

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes (match the CLI exit-code contract). */
#define MV_OK 0
#define MV_ERR_VERIFY 1   /* a verification suite found violations */
#define MV_ERR_PARSE 2    /* malformed input / unknown name or suite */
#define MV_ERR_DOMAIN 3   /* mathematically invalid request (arity, emptiness, ...) */
#define MV_ERR_INTERNAL -1

/* Handle kinds, as reported by mv_kind(). */
#define MV_KIND_POLYTOPE 1
#define MV_KIND_SUBSPACE 2
#define MV_KIND_MEASURE 3
#define MV_KIND_FUNCTION 4

typedef struct mv_handle mv_handle;

/* ------------------------------------------------------------------ meta */

/* Library version, a static string; do not free. */
const char* mv_version(void);

/* Message / status of the most recent failure on this thread. The message is
 * a static thread-local buffer; do not free. */
const char* mv_last_error(void);
int mv_last_status(void);

void mv_string_free(char* s);

/* ---------------------------------------------------------------- objects */

/* Parses one object from JSON, detecting its kind from the keys present:
 * "vertices" -> polytope, "frame" -> subspace, "atoms" -> measure,
 * "pieces" -> function. */
mv_handle* mv_parse(const char* json);

int mv_kind(const mv_handle* h);

/* Serializes a handle back to canonical JSON (floats carry 17 significant
 * digits). indent < 0 yields compact one-line output. */
char* mv_to_json(const mv_handle* h, int indent);

void mv_destroy(mv_handle* h);

/* ----------------------------------------------------------- computations */

/* Mixed volume V(K_1,...,K_n) of exactly n polytopes in dimension n. */
int mv_mixed_volume(mv_handle* const* bodies, int count, double* out);

/* Surface area measure of one polytope (atoms at facet normals). */
mv_handle* mv_surface_measure(const mv_handle* body);

/* Mixed area measure S(K_1,...,K_{n-1}; .) of exactly n-1 polytopes. */
mv_handle* mv_mixed_area_measure(mv_handle* const* bodies, int count);

/* Monge-Ampere measure of a finite piecewise linear convex function, its
 * mixed version for n functions in dimension n, and the conjugate mixed
 * version for n compact-domain functions. */
mv_handle* mv_ma(const mv_handle* fn);
mv_handle* mv_mixed_ma(mv_handle* const* fns, int count);
mv_handle* mv_conj_ma(mv_handle* const* fns, int count);

/* Legendre-Fenchel conjugate of a piecewise linear convex function. */
mv_handle* mv_legendre(const mv_handle* fn);

/* j-th intrinsic volume of a polytope via ball approximants at the given
 * refinement level; *error receives the approximation half-width. */
int mv_intrinsic_volume(const mv_handle* body, int j, int refinement, double* value,
                        double* error);

/* Functional intrinsic volume of a piecewise linear convex function with a
 * named radial density ("one" or "gauss"), truncated at support_radius.
 * Returns an estimate object {"mean","stderr","N","seed"} as JSON. */
char* mv_functional_intrinsic(const mv_handle* fn, int j, const char* alpha,
                              double support_radius, long long samples,
                              unsigned long long seed, int threads);

/* ------------------------------------------------------------ verification */

/* JSON array of {"id","summary"} for every verification suite. */
char* mv_suite_list(void);

/* Runs one verification suite. options_json may be NULL/empty or an object
 * with any of "seed", "samples", "tol", "threads"; absent fields use the
 * suite's published defaults. Returns the report JSON (even when the suite
 * fails; *pass tells the outcome) or NULL on unknown suite / bad options. */
char* mv_verify_suite(const char* suite, const char* options_json, int* pass);

/* Runs the built-in example registry. Returns a JSON summary with one entry
 * per case; *all_pass tells whether every case held. */
char* mv_selftest(int* all_pass);

/* ------------------------------------------------------------- tolerances */

/* Named tolerances: "geom" (settable; the global geometric comparison
 * epsilon), "measure-merge-radius", "measure-drop-weight" (read-only).
 * mv_get_tolerance returns NaN for unknown names. */
int mv_set_tolerance(const char* name, double value);
double mv_get_tolerance(const char* name);

#ifdef __cplusplus
}
#endif

#endif /* MIXEDVOL_H */
