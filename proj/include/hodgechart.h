#ifndef HODGECHART_H
#define HODGECHART_H

/* C interface to the hodgechart library.
 *
 * Every function returning int returns a status code (HC_OK on success).
 * On failure hc_last_error() describes the error for the calling thread.
 * Strings handed out through char** must be released with hc_free_string.
 * Index sets are 1-based. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum hc_status {
    HC_OK = 0,
    HC_INTERNAL = 1,
    HC_SCHEMA = 2,
    HC_CONE_TOO_LARGE = 3,
    HC_NUMERIC_DOMAIN = 4,
    HC_NOT_NILPOTENT = 5,
    HC_NOT_INVARIANT = 6,
    HC_NOT_FILTRATION_COMPATIBLE = 7,
    HC_INVALID_SPLIT = 8,
    HC_SEPARATION_FAILURE = 9,
    HC_SAMPLE_INCONSISTENT = 10,
    HC_INCIDENCE = 11,
    HC_NOT_A_COMPLEX = 12,
    HC_DISCONNECTED = 13,
    HC_POOR_FIT = 14
};

typedef struct hc_cone hc_cone;

const char* hc_version(void);
const char* hc_status_name(int status);
/* Message of the last failed call on this thread; empty if none. */
const char* hc_last_error(void);
void hc_free_string(char* s);
/* Tolerance used by a subcommand when options carry no "tol". */
double hc_default_tolerance(const char* subcommand);

int hc_cone_parse(const char* json, hc_cone** out);
void hc_cone_free(hc_cone* cone);
int hc_cone_info(const hc_cone* cone, size_t* dim, int* weight, size_t* generators);
/* RelationData of I as JSON: I, S_basis, S_perp_basis, K, C, certificates. */
int hc_cone_relation_data(const hc_cone* cone, const int* index_set, size_t count, char** json_out);
/* *member = 1 iff sum a_i N_i lies in W_{-1}(ad N_I). */
int hc_cone_relation_member(const hc_cone* cone, const int* index_set, size_t count, const long* a, size_t a_len,
                            int* member);
/* W(N_I) centered at the weight: {"center", "lowest", "highest", "steps": [basis rows per level]}. */
int hc_cone_weight_filtration(const hc_cone* cone, const int* index_set, size_t count, char** json_out);
int hc_cone_charts_report(const hc_cone* cone, unsigned jobs, char** json_out);

/* Runs one subcommand (charts, lmhs, curvature, siegel, positivity) on a JSON input.
 * options_json may be NULL; keys: tol, seed, jobs, family, parabolic, mode.
 * csv_out may be NULL; it receives an empty string when the subcommand has no table. */
int hc_report(const char* subcommand, const char* input_json, const char* options_json, char** json_out,
              char** csv_out);

#ifdef __cplusplus
}
#endif

#endif
