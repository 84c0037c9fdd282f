/* Exercises the C interface from plain C. */

#include "topocon/topocon.h"

#include <stdio.h>
#include <stdlib.h>
#include <string.h>

static int failures = 0;

#define EXPECT(cond)                                                                                                 \
    do {                                                                                                             \
        if (!(cond)) {                                                                                               \
            fprintf(stderr, "%s:%d: expected %s (last error: %s)\n", __FILE__, __LINE__, #cond, tc_last_error());   \
            ++failures;                                                                                              \
        }                                                                                                            \
    } while (0)

static char* slurp(const char* path)
{
    FILE* f = fopen(path, "rb");
    if (!f) {
        return NULL;
    }
    fseek(f, 0, SEEK_END);
    long n = ftell(f);
    fseek(f, 0, SEEK_SET);
    char* buf = malloc((size_t)n + 1);
    size_t got = fread(buf, 1, (size_t)n, f);
    buf[got] = '\0';
    fclose(f);
    return buf;
}

static const char* three_squares =
    "{\"regions\":{\"r1\":[{\"outer\":[[0,0],[1,0],[1,1],[0,1]]}],"
    "\"r2\":[{\"outer\":[[1,0],[2,0],[2,1],[1,1]]}],"
    "\"r3\":[{\"outer\":[[0,1],[2,1],[2,2],[0,2]]}]}}";

int main(void)
{
    tc_formula* f = NULL;
    EXPECT(tc_formula_parse("r1 . r2 = 0 & C(r1, r2)", &f) == TC_OK);
    const char* lang = NULL;
    EXPECT(tc_formula_language(f, &lang) == TC_OK && strcmp(lang, "BC") == 0);
    char* text = NULL;
    EXPECT(tc_formula_print(f, &text) == TC_OK && text != NULL);
    tc_string_free(text);
    size_t n = 0;
    EXPECT(tc_formula_conjunct_count(f, &n) == TC_OK && n == 2);

    tc_formula* bad = NULL;
    EXPECT(tc_formula_parse("r1 = ", &bad) == TC_ERR_PARSE && bad == NULL);
    EXPECT(tc_last_error_line() == 1 && tc_last_error_column() == 6);
    EXPECT(tc_formula_parse(NULL, &bad) == TC_ERR_INVALID_ARGUMENT);

    tc_scene* s = NULL;
    EXPECT(tc_scene_from_json(three_squares, &s) == TC_OK);
    const char* rel = NULL;
    EXPECT(tc_scene_rcc8(s, "r1", "r2", &rel) == TC_OK && strcmp(rel, "EC") == 0);
    int value = -1;
    EXPECT(tc_scene_check(s, f, &value) == TC_OK && value == 1);
    tc_formula* unbound = NULL;
    EXPECT(tc_formula_parse("x = 0", &unbound) == TC_OK);
    EXPECT(tc_scene_check(s, unbound, &value) == TC_ERR_UNBOUND_VARIABLE);
    tc_formula_free(unbound);
    char* svg = NULL;
    EXPECT(tc_scene_svg(s, 0, &svg) == TC_OK && strstr(svg, "<svg") != NULL);
    tc_string_free(svg);
    tc_model* induced = NULL;
    EXPECT(tc_scene_induced_model(s, &induced) == TC_OK);
    EXPECT(tc_model_check(induced, f, &value) == TC_OK && value == 1);
    tc_model_free(induced);
    tc_scene_free(s);

    tc_formula* eq3 = NULL;
    EXPECT(tc_formula_generate("eq3", NULL, &eq3) == TC_OK);
    char* fig17 = slurp(TOPOCON_TEST_DATA "/fig17.json");
    EXPECT(fig17 != NULL);
    tc_model* m = NULL;
    EXPECT(tc_model_from_json(fig17, &m) == TC_OK);
    free(fig17);
    EXPECT(tc_model_check(m, eq3, &value) == TC_OK && value == 1);
    EXPECT(tc_model_oracle_check(m, eq3, 0, &value) == TC_OK && value == 1);
    EXPECT(tc_model_oracle_check(m, eq3, 1, &value) == TC_ERR_CAP_EXCEEDED);
    tc_model_free(m);

    tc_solve_options opt;
    tc_solve_options_default(&opt);
    opt.frame_class = TC_CLASS_CON;
    opt.max_w0 = 3;
    opt.max_w1 = 1;
    tc_solve_result* r = NULL;
    EXPECT(tc_solve(eq3, TC_SOLVE_CLASS, &opt, &r) == TC_OK);
    EXPECT(tc_solve_result_verdict(r) == TC_SAT);
    tc_model* found = tc_solve_result_model(r);
    EXPECT(found != NULL);
    EXPECT(tc_model_check(found, eq3, &value) == TC_OK && value == 1);
    tc_model_free(found);
    char* report = NULL;
    EXPECT(tc_solve_result_report(r, &report) == TC_OK && strstr(report, "\"sat\"") != NULL);
    tc_string_free(report);
    tc_solve_result_free(r);

    opt.max_w0 = 2;
    EXPECT(tc_solve(eq3, TC_SOLVE_CLASS, &opt, &r) == TC_OK);
    EXPECT(tc_solve_result_verdict(r) == TC_UNSAT_UP_TO);
    EXPECT(tc_solve_result_model(r) == NULL);
    tc_solve_result_free(r);

    tc_formula* pcp = NULL;
    const char* inst = "{\"tiles\":[\"a\"],\"letters\":[\"u\"],\"w1\":{\"a\":\"u\"},\"w2\":{\"a\":\"u\"}}";
    EXPECT(tc_formula_generate("pcp", inst, &pcp) == TC_OK);
    EXPECT(tc_formula_language(pcp, &lang) == TC_OK && strcmp(lang, "BCc") == 0);
    int small = 0;
    EXPECT(tc_pcp_is_small(inst, &small) == TC_OK && small == 1);
    tc_formula_free(pcp);
    EXPECT(tc_formula_generate("nope", NULL, &pcp) == TC_ERR_INVALID_ARGUMENT);

    tc_formula_free(eq3);
    tc_formula_free(f);
    tc_formula_free(NULL);

    if (failures != 0) {
        fprintf(stderr, "%d failures\n", failures);
        return 1;
    }
    printf("C API checks passed\n");
    return 0;
}
