#ifndef HOMOBRAID_H
#define HOMOBRAID_H

/* C API for the homobraid library: root-system data, slope braids, graded
 * dimension tables, finite-field point counts and gauge normalization.
 * Opaque handles + error codes; structured results come back as JSON strings
 * allocated by the library (free with hb_string_free).
 *
 * All braid letters at this boundary are 1-based simple-reflection indices.
 */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    HB_OK = 0,
    HB_ERR_INVALID = 2,  /* malformed input (bad rank, non-coprime slope, ...) */
    HB_ERR_INTERNAL = 3, /* a paper identity failed; always a bug */
    HB_ERR_BUDGET = 4    /* enumeration would exceed its work budget */
} hb_status;

typedef struct hb_root_system hb_root_system;
typedef struct hb_slope hb_slope;

const char* hb_version(void);
/* thread-local message describing the last failure */
const char* hb_last_error(void);
void hb_string_free(char* s);

/* ---- root systems ---- */
hb_status hb_root_system_new(char family, int rank, hb_root_system** out);
void hb_root_system_free(hb_root_system* rs);
int hb_root_system_rank(const hb_root_system* rs);
int hb_root_system_num_positive_roots(const hb_root_system* rs);
int hb_root_system_coxeter_number(const hb_root_system* rs);
long long hb_root_system_weyl_order(const hb_root_system* rs);
/* writes min(cap, rank) degrees; returns rank */
int hb_root_system_degrees(const hb_root_system* rs, int* out, int cap);
/* writes min(cap, count) regular numbers ascending; returns count */
int hb_regular_numbers(const hb_root_system* rs, int* out, int cap);

/* ---- slopes ---- */
hb_status hb_slope_new(const hb_root_system* rs, int d, int m, uint64_t seed,
                       hb_slope** out);
void hb_slope_free(hb_slope* sd);
int hb_slope_fixed_space_dim(const hb_slope* sd);
hb_status hb_moduli_dims(const hb_slope* sd, int* dim_M, int* dim_A, int* dim_M_flat,
                         int* dim_t_w);
/* g_dims and c_dims must each hold m ints */
hb_status hb_grading(const hb_slope* sd, int* g_dims, int* c_dims);
hb_status hb_fractional_identity(const hb_slope* sd, long long* lhs_num,
                                 long long* lhs_den, long long* rhs_num,
                                 long long* rhs_den);
/* 1-based letters; *len_out = word length (nu * |Phi|) */
hb_status hb_slope_braid(const hb_slope* sd, int* letters_out, int cap, int* len_out);

/* ---- positive braids ---- */
/* JSON: {"delta_power": k, "factors": [[1,2,...], ...]} (factors as reduced words) */
hb_status hb_braid_normal_form(const hb_root_system* rs, const int* letters, int len,
                               char** json_out);
hb_status hb_braid_nf_equal(const hb_root_system* rs, const int* a, int alen,
                            const int* b, int blen, int* equal_out);
hb_status hb_braid_cyclic_equal(const hb_root_system* rs, const int* a, int alen,
                                const int* b, int blen, int* equal_out);

/* ---- point counts ---- */
/* constraint: 0 = none, 1 = unipotent_with_borel, 2 = partition by formal
 * monodromy class. JSON: {"raw":..,"group_order":..,"stacky":"p/q" or int,
 * "divisible":bool[,"per_kappa":{...}]} */
hb_status hb_count_betti(int n, const int* letters, int len, int q, int constraint,
                         long long budget, char** json_out);
/* window <= 0 selects the default d+1. JSON: {"count":..,"window":..,"stable":bool} */
hb_status hb_count_asf(int n, int d, int q, int window, char** json_out);

/* ---- gauge normalization ---- */
/* JSON: {"residual_zero":bool,"steps":k,"factors":[{"grade":"-3/2","matrix":[[..]]},...]} */
hb_status hb_gauge_roundtrip(int n, int d, int depth, uint64_t seed, char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* HOMOBRAID_H */
