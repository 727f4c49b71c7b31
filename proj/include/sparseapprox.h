#ifndef SPARSEAPPROX_H
#define SPARSEAPPROX_H

/*
 * C interface for the sparse approximation library. Instances, requests and
 * results cross the boundary as JSON text; every number is a decimal string
 * ("p" or "p/q"), never floating point. Returned strings are owned by the
 * caller and released with sxa_string_free.
 */

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define SXA_API __attribute__((visibility("default")))
#else
#define SXA_API
#endif

/* Status values double as the CLI process exit codes. */
typedef enum sxa_status {
  SXA_OK = 0,
  SXA_ERR_VIOLATION = 1,  /* a verification sweep found a violated bound */
  SXA_ERR_VALIDATION = 2, /* malformed input or parameters */
  SXA_ERR_BUDGET = 3,     /* an enumeration exceeded its budget */
  SXA_ERR_INFEASIBLE = 4, /* target outside the lattice / no witness found */
  SXA_ERR_INTERNAL = 5
} sxa_status;

typedef struct sxa_instance sxa_instance;

SXA_API const char* sxa_version(void);
SXA_API const char* sxa_status_name(sxa_status status);

/* Message for the most recent failure on this thread; "" after a success. */
SXA_API const char* sxa_last_error(void);

/* Parse an instance from its JSON description. */
SXA_API sxa_status sxa_instance_parse(const char* json_text, sxa_instance** out);

/*
 * Build a named family instance. family is one of example1, example2,
 * example3, prop13, prop14, prop15, random_lattice, random_simplicial;
 * params_json holds the family parameters, e.g. {"k": 2, "n": 3} or
 * {"primes": [2, 3, 5], "m": 1, "k": 1}.
 */
SXA_API sxa_status sxa_instance_generate(const char* family, const char* params_json,
                                         sxa_instance** out);

SXA_API sxa_status sxa_instance_to_json(const sxa_instance* inst, char** out_json);
SXA_API void sxa_instance_free(sxa_instance* inst);

/*
 * Compute a sparse approximation. request_json:
 *   {"mode": "lattice" | "semigroup" | "spanning" | "k2",
 *    "k": 3, "b": ["7"], "witness": ["0","1","1"], "budget": 1000000}
 * b defaults to the instance's stored target; witness and budget are
 * optional. The reply carries x, support, error, norm and certified bound;
 * the error is recomputed from x before returning.
 */
SXA_API sxa_status sxa_approximate(const sxa_instance* inst, const char* request_json,
                                   char** out_json);

/*
 * Exact reference values by exhaustive enumeration. request_json selects
 *   {"op": "lattice_app" | "lattice_dist" | "lattice_period" | "delta" |
 *          "semigroup_app" | "semigroup_dist" | "max_antichain" |
 *          "unique_representation", ...}
 * with op-specific fields (k, b, basis_fixed, m, s, max_coeff_sum, budget).
 * max_antichain needs no instance; inst may be NULL for it.
 */
SXA_API sxa_status sxa_oracle(const sxa_instance* inst, const char* request_json,
                              char** out_json);

/*
 * Run verification sweeps. request_json:
 *   {"families": ["prop13"], "k_min": 1, "k_max": 4, "count": 25,
 *    "seed": 1, "budget": 100000000}
 * all fields optional; empty families means every family. The reply holds
 * "rows", the same table as "csv" text, and the "violations" count; the
 * status is SXA_ERR_VIOLATION when any row's verdict is VIOLATION.
 */
SXA_API sxa_status sxa_verify_sweep(const char* request_json, char** out_json);

SXA_API void sxa_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif /* SPARSEAPPROX_H */
