/* C interface to the inqml library. All strings are UTF-8 and NUL-terminated.
 * Strings returned through char** are owned by the caller and released with
 * inqml_string_free. On failure a function returns a nonzero status and
 * inqml_last_error() describes the problem (per thread). */
#ifndef INQML_INQML_H
#define INQML_INQML_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(INQML_BUILDING_LIBRARY)
#    define INQML_API __declspec(dllexport)
#  else
#    define INQML_API __declspec(dllimport)
#  endif
#else
#  define INQML_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum inqml_status {
  INQML_OK = 0,
  INQML_ERR_PARSE = 1,
  INQML_ERR_VALIDATION = 2,
  INQML_ERR_UNKNOWN_NAME = 3,
  INQML_ERR_RESOURCE = 4,
  INQML_ERR_UNSUPPORTED = 5,
  INQML_ERR_INVALID_ARGUMENT = 6,
  INQML_ERR_IO = 7,
  INQML_ERR_INTERNAL = 8
} inqml_status;

typedef struct inqml_model inqml_model;
typedef struct inqml_formula inqml_formula;
typedef struct inqml_relmodel inqml_relmodel;

INQML_API const char* inqml_version(void);
INQML_API const char* inqml_last_error(void);
INQML_API const char* inqml_status_name(inqml_status status);
INQML_API void inqml_string_free(char* s);

/* Caps enumeration sizes and EF-game nodes for calls on this thread; 0 restores defaults. */
INQML_API void inqml_set_budget(uint64_t budget);

/* Models. `spec` for generators: "chain:N", "cycle:N" or "random:W:A:D". */
INQML_API inqml_status inqml_model_from_json(const char* text, inqml_model** out);
INQML_API inqml_status inqml_model_load(const char* path, inqml_model** out);
INQML_API inqml_status inqml_model_generate(const char* spec, uint64_t seed, inqml_model** out);
INQML_API inqml_status inqml_model_to_json(const inqml_model* m, char** out);
INQML_API size_t inqml_model_world_count(const inqml_model* m);
INQML_API void inqml_model_free(inqml_model* m);

/* Formulas. */
INQML_API inqml_status inqml_formula_parse(const char* text, inqml_formula** out);
INQML_API inqml_status inqml_formula_to_string(const inqml_formula* f, char** out);
INQML_API size_t inqml_formula_modal_depth(const inqml_formula* f);
INQML_API int inqml_formula_is_declarative(const inqml_formula* f);
INQML_API void inqml_formula_free(inqml_formula* f);

/* Relational models. `kind` is "rel", "lf" or "full". */
INQML_API inqml_status inqml_relmodel_from_json(const char* text, inqml_relmodel** out);
INQML_API inqml_status inqml_relmodel_load(const char* path, inqml_relmodel** out);
INQML_API inqml_status inqml_encode(const inqml_model* m, const char* kind, inqml_relmodel** out);
INQML_API inqml_status inqml_relmodel_to_json(const inqml_relmodel* r, char** out);
INQML_API void inqml_relmodel_free(inqml_relmodel* r);

/* Commands. Each writes a JSON document to *json. Where a verdict applies,
 * *verdict is set to 1 (true) or 0 (false). A state is a comma-separated list
 * of world names; "" is the empty state. */
INQML_API inqml_status inqml_check(const inqml_model* m, const inqml_formula* f, const char* state,
                                   const char* world, int* verdict, char** json);
/* n < 0 decides full bisimilarity. Exactly one of world/state per side. */
INQML_API inqml_status inqml_bisim(const inqml_model* a, const char* a_world, const char* a_state,
                                   const inqml_model* b, const char* b_world, const char* b_state,
                                   long n, int* verdict, char** json);
INQML_API inqml_status inqml_charform(const inqml_model* m, const char* world, const char* state,
                                      unsigned n, int literal, char** json);
/* mode: "direct" or "resolution". */
INQML_API inqml_status inqml_translate(const inqml_formula* f, const char* mode, char** json);
INQML_API inqml_status inqml_validate(const char* text, int* verdict, char** json);
INQML_API inqml_status inqml_unfold(const inqml_relmodel* r, const char* world, unsigned ell, char** json);
INQML_API inqml_status inqml_upgrade_demo(const inqml_model* m, const char* world, const char* kind,
                                          unsigned q, int* verdict, char** json);
INQML_API inqml_status inqml_wf_demo(unsigned n, int* verdict, char** json);

#ifdef __cplusplus
}
#endif

#endif /* INQML_INQML_H */
