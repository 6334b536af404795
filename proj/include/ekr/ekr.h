#ifndef EKR_EKR_H
#define EKR_EKR_H

/* C interface to the EKR analysis library.
 *
 * Every call returns an ekr_status. On failure ekr_last_error() holds a
 * message for the calling thread. Strings handed out by the library are
 * released with ekr_string_free, handles with their own _free. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define EKR_API __declspec(dllexport)
#else
#define EKR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ekr_status {
  EKR_OK = 0,
  EKR_ERR_INVALID = 1,
  EKR_ERR_PARSE = 2,
  EKR_ERR_CAP = 3,
  EKR_NOT_COMPUTED = 4, /* result produced, some check hit a cap */
  EKR_ERR_INTERNAL = 5
} ekr_status;

typedef struct ekr_config ekr_config;
typedef struct ekr_construction ekr_construction;
typedef struct ekr_report ekr_report;
typedef struct ekr_manifest ekr_manifest;

EKR_API const char* ekr_version(void);
EKR_API const char* ekr_last_error(void);
EKR_API void ekr_string_free(char* s);

/* caps and workers; zero is rejected */
EKR_API ekr_status ekr_config_new(ekr_config** out);
EKR_API void ekr_config_free(ekr_config* cfg);
EKR_API ekr_status ekr_config_set_enumeration_cap(ekr_config* cfg, uint64_t cap);
EKR_API ekr_status ekr_config_set_clique_cap(ekr_config* cfg, uint64_t cap);
EKR_API ekr_status ekr_config_set_enum_limit(ekr_config* cfg, uint64_t limit);
EKR_API ekr_status ekr_config_set_workers(ekr_config* cfg, uint32_t workers);
EKR_API ekr_status ekr_config_set_node_budget(ekr_config* cfg, uint64_t nodes);

/* names: nobo, agl-example, wreath, asc, table1, psl2, pglexam, sl23 and
 * the fixtures symmetric, dihedral, cyclic, z4xz2, agl1, sylow, psl2-natural.
 * params is a JSON object, e.g. {"p":5,"d":1}; NULL means {}. cfg may be NULL. */
EKR_API ekr_status ekr_construct(const char* name, const char* params_json, const ekr_config* cfg,
                                 ekr_construction** out);
/* group description JSON (schema ekr/1) */
EKR_API ekr_status ekr_construction_parse(const char* json, ekr_construction** out);
EKR_API ekr_status ekr_construction_json(const ekr_construction* c, char** out);
EKR_API size_t ekr_construction_degree(const ekr_construction* c);
EKR_API void ekr_construction_free(ekr_construction* c);

/* checks: comma separated subset of max,strict,sharply,frobenius,prime-power,subgroups.
 * Returns EKR_NOT_COMPUTED, with *out set, when a check was skipped for a cap. */
EKR_API ekr_status ekr_analyze(const ekr_construction* c, const char* checks, const ekr_config* cfg,
                               ekr_report** out);
EKR_API ekr_status ekr_report_json(const ekr_report* r, char** out);
EKR_API int ekr_report_not_computed(const ekr_report* r);
EKR_API void ekr_report_free(ekr_report* r);

/* family: borel, d-minus, d-plus, a4, s4, a5 */
EKR_API ekr_status ekr_psl2_analyze(uint32_t p, const char* family, char** out_json);

/* only: comma separated claim ids, NULL or "" for all */
EKR_API ekr_status ekr_verify_paper(const char* only, const ekr_config* cfg, ekr_manifest** out);
EKR_API ekr_status ekr_claim_ids(char** out_json);
/* format: json, table or csv */
EKR_API ekr_status ekr_manifest_render(const ekr_manifest* m, const char* format, char** out);
EKR_API int ekr_manifest_all_passed(const ekr_manifest* m);
EKR_API size_t ekr_manifest_size(const ekr_manifest* m);
EKR_API void ekr_manifest_free(ekr_manifest* m);

#ifdef __cplusplus
}
#endif

#endif
