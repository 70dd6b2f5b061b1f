#ifndef SHIFTMEASURE_H_
#define SHIFTMEASURE_H_

/*
 * C interface to libshiftmeasure.
 *
 * Objects are opaque handles created by *_parse (from JSON text) or by
 * library operations, and released with the matching *_free. Every call
 * returns an sm_status; on failure sm_last_error() describes the problem
 * (thread-local, valid until the next call on the same thread).
 *
 * Reports are JSON documents returned through char** out-parameters and
 * must be released with sm_free_string. Rationals in reports are always
 * "num/den" strings. For checks, *holds (when non-NULL) receives 1 if the
 * property holds and 0 otherwise; the witness is in the report.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define SM_API __attribute__((visibility("default")))
#else
#define SM_API
#endif

typedef enum sm_status {
  SM_OK = 0,
  SM_ERR_PARSE,
  SM_ERR_VALIDATION,
  SM_ERR_MEMBERSHIP,
  SM_ERR_INVALID_CHAIN,
  SM_ERR_NOT_INVARIANT,
  SM_ERR_SIGMA_INCOMPLETE,
  SM_ERR_NOT_PERIODIC,
  SM_ERR_FACTORIZATION,
  SM_ERR_BUDGET_EXHAUSTED,
  SM_ERR_DELTA_OUT_OF_RANGE,
  SM_ERR_NON_INVERTIBLE_MOD_P,
  SM_ERR_NO_WITNESS,
  SM_ERR_EMPTY_WORD,
  SM_ERR_ORACLE_NOT_NORMALIZED,
  SM_ERR_INVALID_ARGUMENT,
  SM_ERR_INTERNAL
} sm_status;

typedef struct sm_chain          sm_chain;
typedef struct sm_measure        sm_measure;
typedef struct sm_automaton      sm_automaton;
typedef struct sm_morphism       sm_morphism;
typedef struct sm_lattice_measure sm_lattice_measure;

SM_API const char* sm_version(void);
SM_API const char* sm_last_error(void);
/* "ParseError", "MembershipError", ...; "OK" for SM_OK. */
SM_API const char* sm_status_name(sm_status status);
SM_API void        sm_free_string(char* s);

/* Decimal rendering of a "num/den" string, for human-readable columns. */
SM_API sm_status sm_rational_decimal(const char* rational, int places, char** out);

/* `source` names the input in parse errors and may be NULL. */
SM_API sm_status sm_chain_parse(const char* json, const char* source, sm_chain** out);
SM_API void      sm_chain_free(sm_chain* chain);
SM_API sm_status sm_chain_to_json(const sm_chain* chain, char** out);
/* Probability-vector checks plus the invariance certificate. */
SM_API sm_status sm_chain_validate(const sm_chain* chain, int* holds, char** report);
SM_API sm_status sm_chain_extend(const sm_chain* chain, sm_chain** out);
SM_API sm_status sm_chain_pushforward_check(const sm_chain* extended,
                                            const sm_chain* original,
                                            size_t          radius,
                                            unsigned        threads,
                                            int*            holds,
                                            char**          report);

SM_API sm_status sm_measure_parse(const char* json, const char* source, sm_measure** out);
SM_API sm_status sm_measure_from_chain(const sm_chain* chain, sm_measure** out);
SM_API void      sm_measure_free(sm_measure* measure);
/* pattern_json: {"entries": {"e": "0", "a1": "1"}} */
SM_API sm_status sm_measure_eval(const sm_measure* measure, const char* pattern_json, char** report);
/* letter is a signed generator index; 0 checks every generator in Sigma. */
SM_API sm_status sm_measure_shift_invariance(const sm_measure* measure,
                                             int               letter,
                                             size_t            radius,
                                             unsigned          threads,
                                             int*              holds,
                                             char**            report);
SM_API sm_status sm_measure_distance(const sm_measure* lhs,
                                     const sm_measure* rhs,
                                     size_t            order,
                                     unsigned          threads,
                                     char**            report);

/* chain_json receives the block chain (loadable with sm_chain_parse);
 * report lists the blocks and the invariance verdict. */
SM_API sm_status sm_markovize(const sm_measure* measure,
                              size_t            order,
                              char**            chain_json,
                              char**            report);
/* pattern_json NULL checks every pattern with keys in B_order. */
SM_API sm_status sm_markovization_consistency(const sm_measure* measure,
                                              size_t            order,
                                              const char*       pattern_json,
                                              int*              holds,
                                              char**            report);

SM_API sm_status sm_automaton_parse(const char* json, const char* source, sm_automaton** out);
SM_API void      sm_automaton_free(sm_automaton* automaton);
SM_API sm_status sm_automaton_to_json(const sm_automaton* automaton, char** out);
SM_API sm_status sm_orbit_analyze(const sm_automaton* automaton, char** report);
/* Lifts a periodic orbit to a finite F_k-orbit over the symmetric closure. */
SM_API sm_status sm_orbit_lift(const sm_automaton* automaton, sm_automaton** out);
/* Word readouts of the base configuration on B_radius. */
SM_API sm_status sm_orbit_readout(const sm_automaton* automaton, size_t radius, char** report);

SM_API sm_status sm_morphism_parse(const char* json, const char* source, sm_morphism** out);
SM_API void      sm_morphism_free(sm_morphism* morphism);
SM_API sm_status sm_morphism_to_json(const sm_morphism* morphism, char** out);
/* sigma holds signed generator indices. budget 0 selects the default. */
SM_API sm_status sm_find_morphism(int           rank,
                                  const int*    sigma,
                                  size_t        sigma_len,
                                  size_t        radius,
                                  size_t        degree,
                                  uint64_t      seed,
                                  uint64_t      budget,
                                  sm_morphism** out);
/* pattern_json must carry "d", "sigma" and "alphabet"; fill is the symbol
 * index used off the pattern. *holds is 1 when the point is periodic and
 * reads back the pattern; report may be NULL. */
SM_API sm_status sm_theorem_a_construct(const char*        pattern_json,
                                        const sm_morphism* theta,
                                        size_t             fill,
                                        sm_automaton**     out,
                                        int*               holds,
                                        char**             report);

/* config_json: {"matrices", "word", "p"} with optional "delta", "sigma". */
SM_API sm_status sm_counterexample(const char* config_json, int* holds, char** report);

SM_API sm_status sm_lattice_measure_parse(const char* json, const char* source, sm_lattice_measure** out);
SM_API void      sm_lattice_measure_free(sm_lattice_measure* measure);
/* pattern_json: {"entries": [[[-1], "0"], [[2], "1"]]} */
SM_API sm_status sm_window_eval(const sm_lattice_measure* measure, const char* pattern_json, char** report);
/* window_json: {"F": [[0], [2]], "K": [[0], [1], [2]]}; trials 0 means
 * exhaustive. */
SM_API sm_status sm_window_consistency(const sm_lattice_measure* measure,
                                       const char*               window_json,
                                       size_t                    trials,
                                       uint64_t                  seed,
                                       int*                      holds,
                                       char**                    report);
/* shift_json: [3] */
SM_API sm_status sm_window_translation(const sm_lattice_measure* measure,
                                       const char*               pattern_json,
                                       const char*               shift_json,
                                       int*                      holds,
                                       char**                    report);

#ifdef __cplusplus
}
#endif

#endif /* SHIFTMEASURE_H_ */
