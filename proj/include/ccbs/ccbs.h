/* ccbs — coded caching over bounded subsets of Z_K.
 *
 * C API of the shared library. All functions return a ccbs_status; outputs
 * are written through pointers. Exact integers are reported as decimal
 * strings so that values beyond 64 bits survive the boundary unchanged.
 * On any failure a thread-local message with details is available from
 * ccbs_last_error().
 */

#ifndef CCBS_H
#define CCBS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CCBS_API __declspec(dllexport)
#else
#define CCBS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ccbs_status {
    CCBS_OK = 0,
    CCBS_ERR_PARAM = 1,     /* invalid argument / precondition violation */
    CCBS_ERR_OVERFLOW = 2,  /* exact arithmetic left the 128-bit range */
    CCBS_ERR_RESOURCE = 3,  /* a size guard was exceeded */
    CCBS_ERR_INTEGRITY = 4, /* corrupted or inconsistent transcript/cache */
    CCBS_ERR_INTERNAL = 5
} ccbs_status;

/* Decimal renderings of 128-bit integers need at most 41 bytes. */
#define CCBS_NUM_STR_LEN 48

CCBS_API const char* ccbs_version(void);
CCBS_API const char* ccbs_strerror(ccbs_status status);

/* Detail message for the most recent failure on this thread ("" if none). */
CCBS_API const char* ccbs_last_error(void);

/* ---- counting ---------------------------------------------------------- */

/* C(a, b); 0 when b < 0, b > a, or a < 0. */
CCBS_API ccbs_status ccbs_binomial(int64_t a, int64_t b, char out[CCBS_NUM_STR_LEN]);

/* Number of bounded s-subsets of Z_K (closed form). */
CCBS_API ccbs_status ccbs_count_bounded(uint32_t K, uint32_t s, uint32_t ell,
                                        char out[CCBS_NUM_STR_LEN]);

/* Number of bounded s-subsets through a fixed element. */
CCBS_API ccbs_status ccbs_count_containing(uint32_t K, uint32_t s, uint32_t ell,
                                           char out[CCBS_NUM_STR_LEN]);

/* Upper bound K * C(K - ell + 1, s). */
CCBS_API ccbs_status ccbs_count_bounded_upper(uint32_t K, uint32_t s, uint32_t ell,
                                              char out[CCBS_NUM_STR_LEN]);

/* Number of s-tuples with entries in [0, cap) summing to total. */
CCBS_API ccbs_status ccbs_composition_count(uint32_t s, uint32_t cap, uint32_t total,
                                            char out[CCBS_NUM_STR_LEN]);

/* Boundedness test for a sorted subset (count elements in elems). */
CCBS_API ccbs_status ccbs_is_bounded(uint32_t K, uint32_t ell, const uint32_t* elems,
                                     size_t count, int* out_bounded);

/* ---- enumeration ------------------------------------------------------- */

/* Opaque list of bounded subsets in canonical order. Enumeration is guarded
 * at K <= 24; larger K returns CCBS_ERR_RESOURCE. */
typedef struct ccbs_subsets ccbs_subsets;

CCBS_API ccbs_status ccbs_enumerate(uint32_t K, uint32_t s, uint32_t ell,
                                    ccbs_subsets** out);
CCBS_API size_t ccbs_subsets_count(const ccbs_subsets* list);
CCBS_API uint32_t ccbs_subsets_width(const ccbs_subsets* list); /* elements per subset */
CCBS_API ccbs_status ccbs_subsets_get(const ccbs_subsets* list, size_t index,
                                      uint32_t* elems /* width slots */);
CCBS_API void ccbs_subsets_free(ccbs_subsets* list);

/* ---- scheme metrics ---------------------------------------------------- */

typedef struct ccbs_metrics {
    uint32_t K, t, n, m, ell;
    char F[CCBS_NUM_STR_LEN];
    char F_upper[CCBS_NUM_STR_LEN];
    char R_num[CCBS_NUM_STR_LEN];
    char R_den[CCBS_NUM_STR_LEN];
    char R_decimal[32];
    char cache_num[CCBS_NUM_STR_LEN];
    char cache_den[CCBS_NUM_STR_LEN];
    char mn_F[CCBS_NUM_STR_LEN];
    char mn_R_num[CCBS_NUM_STR_LEN];
    char mn_R_den[CCBS_NUM_STR_LEN];
    char mn_R_decimal[32];
    double log2_F;
    int matches_mn;          /* F and R equal the baseline exactly */
    int mn_condition;        /* n > t - K/(K-t) */
    uint32_t mn_threshold;   /* smallest n meeting the condition, in [0, t] */
} ccbs_metrics;

/* Scheme figures for (K, t, n) with m = K - t and ell = K - m + 1 - n,
 * alongside the uncoded-placement baseline at the same cache ratio. */
CCBS_API ccbs_status ccbs_scheme_metrics(uint32_t K, uint32_t t, uint32_t n,
                                         ccbs_metrics* out);

/* ---- sweep ------------------------------------------------------------- */

/* CSV table (header n,ell,F,log2_F,R_num,R_den,R_decimal,F_upper) for
 * n in [n_min, n_max]; header only when n_min > n_max. The string is
 * malloc'd; release it with ccbs_string_free. */
CCBS_API ccbs_status ccbs_sweep_csv(uint32_t K, uint32_t t, uint32_t n_min, uint32_t n_max,
                                    char** out_csv, size_t* out_rows);

CCBS_API void ccbs_string_free(char* s);

/* ---- verification trials ----------------------------------------------- */

typedef enum ccbs_demand_mode {
    CCBS_DEMANDS_RANDOM = 0,
    CCBS_DEMANDS_EXHAUSTIVE = 1
} ccbs_demand_mode;

typedef struct ccbs_trial_config {
    uint32_t K, m, ell;
    uint32_t files;
    uint32_t packet_bytes;
    uint64_t seed;
    int demand_mode;       /* ccbs_demand_mode */
    uint32_t random_count; /* demand vectors when mode is RANDOM */
    int corrupt;           /* nonzero: flip one transcript payload bit */
    uint64_t corrupt_index;
} ccbs_trial_config;

/* Runs the full placement/delivery/decode simulation. On CCBS_OK,
 * *out_recovered_ok says whether every user recovered its file bytewise and
 * *out_json (malloc'd; ccbs_string_free) holds the trial report. */
CCBS_API ccbs_status ccbs_run_trial(const ccbs_trial_config* cfg, int* out_recovered_ok,
                                    char** out_json);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CCBS_H */
