#ifndef TOPOCON_H
#define TOPOCON_H

/*
 * C interface to the topological logic toolkit.
 *
 * Objects are opaque handles released with their *_free function; freeing
 * NULL is a no-op. Every other function returns a tc_status. On failure
 * tc_last_error() describes the problem until the next call on the same
 * thread. Strings returned through char** are owned by the caller and
 * released with tc_string_free.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define TC_API __declspec(dllexport)
#else
#define TC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    TC_OK = 0,
    TC_ERR_PARSE = 1,
    TC_ERR_INVALID_ARGUMENT = 2,
    TC_ERR_UNBOUND_VARIABLE = 3,
    TC_ERR_FRAME_MISMATCH = 4,
    TC_ERR_CAP_EXCEEDED = 5,
    TC_ERR_GEOMETRY = 6,
    TC_ERR_IO = 7,
    TC_ERR_INTERNAL = 8
} tc_status;

typedef enum { TC_CLASS_ALL = 0, TC_CLASS_CON = 1, TC_CLASS_CON2 = 2 } tc_frame_class;

typedef enum {
    TC_SOLVE_CLASS = 0, /* search the given frame class */
    TC_SOLVE_RC3 = 1,   /* connected quasi-saws, B or Bci input */
    TC_SOLVE_RCP3 = 2   /* connected 2-quasi-saws for the c-version */
} tc_solve_mode;

typedef enum { TC_SAT = 0, TC_UNSAT_UP_TO = 1, TC_RESOURCE_EXHAUSTED = 2 } tc_verdict;

typedef struct tc_formula tc_formula;
typedef struct tc_model tc_model;
typedef struct tc_scene tc_scene;
typedef struct tc_solve_result tc_solve_result;

typedef struct {
    tc_frame_class frame_class;
    size_t max_w0;
    size_t max_w1;
    uint64_t work_limit;
    unsigned jobs;
} tc_solve_options;

TC_API const char* tc_last_error(void);
/* 1-based position of the last parse error, or 0 when there was none. */
TC_API int tc_last_error_line(void);
TC_API int tc_last_error_column(void);
TC_API void tc_string_free(char* s);
TC_API const char* tc_version(void);

/* Formulas */
TC_API tc_status tc_formula_parse(const char* text, tc_formula** out);
TC_API void tc_formula_free(tc_formula* f);
TC_API tc_status tc_formula_print(const tc_formula* f, char** out);
/* Static string: "B", "BC", "Bc", "Bci", "BCc", "BCci" or "mixed_c". */
TC_API tc_status tc_formula_language(const tc_formula* f, const char** out);
/* JSON object mapping eq, contact, conn, int_conn to their polarity. */
TC_API tc_status tc_formula_polarity(const tc_formula* f, char** out);
TC_API tc_status tc_formula_conjunct_count(const tc_formula* f, size_t* out);
TC_API tc_status tc_formula_to_bullet(const tc_formula* f, tc_formula** out);
TC_API tc_status tc_formula_from_bullet(const tc_formula* f, tc_formula** out);
TC_API tc_status tc_formula_eliminate_contact(const tc_formula* f, tc_formula** out);
/*
 * Named constructions: phi-inf, phi-inf-i, phi-inf-c, phi-inf-star, eq1,
 * eq2, eq3, and pcp, which reads the instance JSON in pcp_json.
 */
TC_API tc_status tc_formula_generate(const char* name, const char* pcp_json, tc_formula** out);
/* 1 when the PCP instance has fewer tiles than the hardness bound needs. */
TC_API tc_status tc_pcp_is_small(const char* pcp_json, int* out);

/* Quasi-saw models */
TC_API tc_status tc_model_from_json(const char* json, tc_model** out);
TC_API void tc_model_free(tc_model* m);
TC_API tc_status tc_model_to_json(const tc_model* m, char** out);
TC_API tc_status tc_model_check(const tc_model* m, const tc_formula* f, int* out);
/* cap 0 selects the default point limit. */
TC_API tc_status tc_model_oracle_check(const tc_model* m, const tc_formula* f, size_t cap, int* out);

/* Search */
TC_API void tc_solve_options_default(tc_solve_options* opt);
TC_API tc_status tc_solve(const tc_formula* f, tc_solve_mode mode, const tc_solve_options* opt,
                          tc_solve_result** out);
TC_API void tc_solve_result_free(tc_solve_result* r);
TC_API tc_verdict tc_solve_result_verdict(const tc_solve_result* r);
/* A copy of the model, or NULL unless the verdict is TC_SAT. */
TC_API tc_model* tc_solve_result_model(const tc_solve_result* r);
/* Verdict, bounds, frame class, examined nodes and, on exhaustion, the size reached. */
TC_API tc_status tc_solve_result_report(const tc_solve_result* r, char** out);

/* Plane scenes */
TC_API tc_status tc_scene_from_json(const char* json, tc_scene** out);
TC_API void tc_scene_free(tc_scene* s);
TC_API tc_status tc_scene_to_json(const tc_scene* s, char** out);
TC_API tc_status tc_scene_check(const tc_scene* s, const tc_formula* f, int* out);
/* Static string: one of DC, EC, PO, EQ, TPP, NTPP, TPPi, NTPPi. */
TC_API tc_status tc_scene_rcc8(const tc_scene* s, const char* a, const char* b, const char** out);
TC_API tc_status tc_scene_svg(const tc_scene* s, unsigned width, char** out);
/* The scene's own quasi-saw: faces, edges and vertices as points. */
TC_API tc_status tc_scene_induced_model(const tc_scene* s, tc_model** out);

#ifdef __cplusplus
}
#endif

#endif
