/* C interface to the zilber library. Every function returns a zilber_status; on failure
 * zilber_last_error() describes the problem (thread-local, valid until the next call on the
 * same thread). Strings returned through char** are owned by the caller and released with
 * zilber_string_free. A failed certificate is not an error: the status is ZILBER_OK and
 * *pass is 0. */
#ifndef ZILBER_H
#define ZILBER_H

#include <stddef.h>

#if defined(_WIN32)
#define ZILBER_API __declspec(dllexport)
#else
#define ZILBER_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum zilber_status {
  ZILBER_OK = 0,
  ZILBER_INVALID_ARGUMENT = 1,
  ZILBER_VALIDATION = 2,
  ZILBER_PARSE = 3,
  ZILBER_OVERFLOW = 4,
  ZILBER_CONTAINMENT = 5,
  ZILBER_INTERNAL = 6
} zilber_status;

typedef enum zilber_chain_model { ZILBER_NORMALIZED = 0, ZILBER_UNNORMALIZED = 1 } zilber_chain_model;

typedef struct zilber_sset zilber_sset;   /* truncated simplicial set */
typedef struct zilber_chain zilber_chain; /* chain complex of free abelian groups */
typedef struct zilber_filt zilber_filt;   /* filtered chain complex */
typedef struct zilber_ss zilber_ss;       /* spectral sequence pages */

ZILBER_API const char* zilber_version(void);
ZILBER_API const char* zilber_last_error(void);
ZILBER_API void zilber_string_free(char* s);

/* Simplicial sets. Builtins: "point", "circle", "torus", "simplex:N". */
ZILBER_API zilber_status zilber_sset_from_json(const char* text, zilber_sset** out);
ZILBER_API zilber_status zilber_sset_builtin(const char* name, size_t dim_bound, zilber_sset** out);
ZILBER_API zilber_status zilber_sset_product(const zilber_sset* a, const zilber_sset* b, zilber_sset** out);
ZILBER_API zilber_status zilber_sset_truncate(const zilber_sset* a, size_t dim_bound, zilber_sset** out);
ZILBER_API zilber_status zilber_sset_dim_bound(const zilber_sset* a, size_t* out);
ZILBER_API zilber_status zilber_sset_skeletal_dimension(const zilber_sset* a, size_t* out);
ZILBER_API zilber_status zilber_sset_to_json(const zilber_sset* a, char** out);
ZILBER_API void zilber_sset_free(zilber_sset* a);

/* Chain complexes. */
ZILBER_API zilber_status zilber_chain_from_json(const char* text, zilber_chain** out);
ZILBER_API zilber_status zilber_chain_normalized(const zilber_sset* a, zilber_chain** out);
ZILBER_API zilber_status zilber_chain_to_json(const zilber_chain* c, char** out);
/* JSON array of {degree, group, free_rank, torsion} for degrees 0..top. */
ZILBER_API zilber_status zilber_chain_homology(const zilber_chain* c, char** out);
ZILBER_API void zilber_chain_free(zilber_chain* c);

/* Filtered complexes. */
ZILBER_API zilber_status zilber_filt_from_json(const char* text, zilber_filt** out);
ZILBER_API zilber_status zilber_filt_skeletal(const zilber_sset* a, zilber_chain_model model, zilber_filt** out);
ZILBER_API zilber_status zilber_filt_to_json(const zilber_filt* f, char** out);
ZILBER_API void zilber_filt_free(zilber_filt* f);

/* Spectral sequences: pages 1..max(r_max, p_max + 1). */
ZILBER_API zilber_status zilber_ss_compute(const zilber_filt* f, size_t r_max, zilber_ss** out);
ZILBER_API zilber_status zilber_ss_to_json(const zilber_ss* s, char** out);
ZILBER_API void zilber_ss_free(zilber_ss* s);

/* Certificates: *report receives a JSON object {check, pass, details, witness?}. */
ZILBER_API zilber_status zilber_check_doldkan_sset(const zilber_sset* a, char** report, int* pass);
ZILBER_API zilber_status zilber_check_doldkan_chain(const zilber_chain* c, size_t dim_bound, char** report, int* pass);
/* check: "chain", "aw", "unital", "symmetry", "homology". */
ZILBER_API zilber_status zilber_check_ez(const zilber_sset* a, const zilber_sset* b, const char* check, char** report,
                                         int* pass);
ZILBER_API zilber_status zilber_check_ez_associativity(const zilber_sset* a, const zilber_sset* b, const zilber_sset* c,
                                                       char** report, int* pass);
ZILBER_API zilber_status zilber_check_skeleton_product(const zilber_sset* a, const zilber_sset* b, size_t p, size_t q,
                                                       size_t n, char** report, int* pass);
ZILBER_API zilber_status zilber_check_filtered_ez(const zilber_sset* a, const zilber_sset* b, zilber_chain_model model,
                                                  char** report, int* pass);
/* E_1 of the skeletal filtration with d_1 against the normalized complex. */
ZILBER_API zilber_status zilber_check_heart(const zilber_sset* a, char** report, int* pass);
ZILBER_API zilber_status zilber_check_spectral(const zilber_ss* s, char** report, int* pass);
/* Leibniz rule on page r for the pairing induced by the shuffle map; corrupt flips one product sign. */
ZILBER_API zilber_status zilber_check_leibniz(const zilber_sset* a, const zilber_sset* b, zilber_chain_model model,
                                              size_t r, int corrupt, char** report, int* pass);
/* check: "unit" (g, h unused), "symmetry" (h unused), "associativity". */
ZILBER_API zilber_status zilber_check_day(const char* check, const zilber_filt* f, const zilber_filt* g,
                                          const zilber_filt* h, char** report, int* pass);
/* check: "mu-assoc" {b, entry_max, output_max}, "mu-unit" {b}, "left-kan" {ns, b, m},
 * "product-colimit" {ns, k}, "operator-frag" {model, b, length, entry_max, samples, seed},
 * "coyoneda" {profunctor: prof document}. params is a JSON object; missing keys take defaults. */
ZILBER_API zilber_status zilber_check_promonoidal(const char* check, const char* params, char** report, int* pass);

#ifdef __cplusplus
}
#endif

#endif /* ZILBER_H */
