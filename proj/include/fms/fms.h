#ifndef FMS_FMS_H
#define FMS_FMS_H

#include <stddef.h>

#if defined(_WIN32)
#define FMS_API __declspec(dllexport)
#else
#define FMS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fms_status {
  FMS_OK = 0,
  FMS_ERR_LEX,
  FMS_ERR_ARITY,
  FMS_ERR_UNBOUND_SYMBOL,
  FMS_ERR_SYNTAX,
  FMS_ERR_NOT_GROUND,
  FMS_ERR_NON_GROUND_SUBSTITUENT,
  FMS_ERR_NOT_IN_LANGUAGE,
  FMS_ERR_NOT_CLOSED,
  FMS_ERR_NAME_COLLISION,
  FMS_ERR_EXPLOSION_GUARD,
  FMS_ERR_INCOMPARABLE,
  FMS_ERR_LANGUAGE_MISMATCH,
  FMS_ERR_STRUCTURE_MISMATCH,
  FMS_ERR_NOT_INVERTIBLE,
  FMS_ERR_UNIVERSE_TOO_LARGE,
  FMS_ERR_NOT_CLOSED_UNDER_X,
  FMS_ERR_TOO_LARGE,
  FMS_ERR_EMPTY_INPUT,
  FMS_ERR_PRECONDITION_VIOLATED,
  FMS_ERR_INVALID_DEFINITION,
  FMS_ERR_IO,
  FMS_ERR_INVALID_ARGUMENT,
  FMS_ERR_INTERNAL
} fms_status;

typedef enum fms_truth { FMS_FALSE = 0, FMS_TRUE = 1, FMS_UNKNOWN = 2 } fms_truth;

typedef struct fms_language fms_language;
typedef struct fms_structure fms_structure;
typedef struct fms_morphism fms_morphism;

/* Message of the last failure on the calling thread; empty after success. */
FMS_API const char* fms_last_error(void);
FMS_API const char* fms_status_name(fms_status status);
/* Releases strings returned through char** out-parameters. */
FMS_API void fms_free_string(char* s);

FMS_API fms_status fms_language_load(const char* path, fms_language** out);
FMS_API fms_status fms_language_from_json(const char* json, fms_language** out);
FMS_API void fms_language_free(fms_language* language);

FMS_API fms_status fms_structure_load(const char* path, fms_structure** out);
/* Relative paths inside the document resolve against base_dir. */
FMS_API fms_status fms_structure_from_json(const char* json, const char* base_dir, fms_structure** out);
FMS_API void fms_structure_free(fms_structure* structure);
/* The structure's language, names included. */
FMS_API fms_status fms_structure_language(const fms_structure* structure, fms_language** out);
FMS_API fms_status fms_structure_size(const fms_structure* structure, size_t* out);

FMS_API fms_status fms_morphism_load(const char* path, fms_morphism** out);
FMS_API void fms_morphism_free(fms_morphism* morphism);

FMS_API fms_status fms_eval_truth(const fms_structure* structure, const char* formula, fms_truth* out);
FMS_API fms_status fms_valid_truth(const fms_structure* structure, const char* formula, fms_truth* out);
FMS_API fms_status fms_eval_list(const fms_structure* structure, const char* list, char** element);
FMS_API fms_status fms_push_list(const fms_morphism* morphism, const char* list, char** pushed);

/*
 * Report functions write a line-oriented report to *report and set
 * *affirmative to 1 when the answer is positive, 0 otherwise.
 */
FMS_API fms_status fms_report_parse(const fms_language* language, const char* formula, char** report,
                                    int* affirmative);
FMS_API fms_status fms_report_parse_list(const fms_language* language, const char* list, char** report,
                                         int* affirmative);
FMS_API fms_status fms_report_eval(const fms_structure* structure, const char* formula, char** report,
                                   int* affirmative);
FMS_API fms_status fms_report_valid(const fms_structure* structure, const char* formula, char** report,
                                    int* affirmative);
FMS_API fms_status fms_report_check_model(const fms_structure* structure, const char* axioms_path,
                                          char** report, int* affirmative);
FMS_API fms_status fms_report_push(const fms_morphism* morphism, const char* list, char** report,
                                   int* affirmative);
FMS_API fms_status fms_report_morphism(const fms_morphism* morphism, int iso, int depth_bound, char** report,
                                       int* affirmative);
FMS_API fms_status fms_report_enum_morphisms(const fms_structure* source, const fms_structure* target, int iso,
                                             char** report, int* affirmative);

typedef struct fms_fragment_bounds {
  int connective_depth;
  int list_depth;
  int max_quantifiers;
  int max_atoms;
  int max_names; /* -1 for all names */
} fms_fragment_bounds;

FMS_API fms_status fms_report_henkin(const fms_structure* structure, const fms_fragment_bounds* bounds,
                                     char** report, int* affirmative);
FMS_API fms_status fms_report_witness(const fms_structure* structure, const char* variable, const char* formula,
                                      char** report, int* affirmative);
FMS_API fms_status fms_report_cond4(const fms_structure* structure, int bound, char** report, int* affirmative);
FMS_API fms_status fms_report_hf(const char* op, const char* const* operands, size_t count, char** report,
                                 int* affirmative);

#ifdef __cplusplus
}
#endif

#endif
