#include "topocon/topocon.h"

#include "topocon/constructions.hpp"
#include "topocon/errors.hpp"
#include "topocon/formula.hpp"
#include "topocon/plane.hpp"
#include "topocon/quasisaw.hpp"
#include "topocon/search.hpp"

#include "json.hpp"

#include <cstdlib>
#include <cstring>
#include <functional>
#include <map>
#include <new>

struct tc_formula {
    topocon::Formula f;
};

struct tc_model {
    topocon::QsModel m;
};

struct tc_scene {
    topocon::PlaneScene s;
    topocon::ArrangementPtr arr;
};

struct tc_solve_result {
    topocon::SolveResult r;
};

namespace {

thread_local std::string last_error;
thread_local int last_line = 0;
thread_local int last_column = 0;

tc_status status_of(topocon::Errc e)
{
    using topocon::Errc;
    switch (e) {
    case Errc::parse: return TC_ERR_PARSE;
    case Errc::invalid_argument: return TC_ERR_INVALID_ARGUMENT;
    case Errc::unbound_variable: return TC_ERR_UNBOUND_VARIABLE;
    case Errc::frame_mismatch: return TC_ERR_FRAME_MISMATCH;
    case Errc::cap_exceeded: return TC_ERR_CAP_EXCEEDED;
    case Errc::geometry: return TC_ERR_GEOMETRY;
    case Errc::io: return TC_ERR_IO;
    }
    return TC_ERR_INTERNAL;
}

/// Runs body, translating exceptions into status codes.
tc_status guard(const std::function<void()>& body)
{
    last_error.clear();
    last_line = last_column = 0;
    try {
        body();
        return TC_OK;
    } catch (const topocon::ParseError& e) {
        last_error = e.what();
        last_line = e.line();
        last_column = e.column();
        return TC_ERR_PARSE;
    } catch (const topocon::Error& e) {
        last_error = e.what();
        return status_of(e.code());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return TC_ERR_INTERNAL;
    } catch (const std::exception& e) {
        last_error = e.what();
        return TC_ERR_INTERNAL;
    }
}

tc_status null_arg(const char* what)
{
    last_error = std::string("null argument: ") + what;
    return TC_ERR_INVALID_ARGUMENT;
}

char* dup(const std::string& s)
{
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) {
        throw std::bad_alloc();
    }
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

tc_status wrap(topocon::Formula f, tc_formula** out)
{
    *out = new tc_formula{std::move(f)};
    return TC_OK;
}

} // namespace

#define TC_REQUIRE(p)                                                                                                \
    do {                                                                                                             \
        if ((p) == nullptr) {                                                                                        \
            return null_arg(#p);                                                                                     \
        }                                                                                                            \
    } while (0)

extern "C" {

const char* tc_last_error(void)
{
    return last_error.c_str();
}

int tc_last_error_line(void)
{
    return last_line;
}

int tc_last_error_column(void)
{
    return last_column;
}

void tc_string_free(char* s)
{
    std::free(s);
}

const char* tc_version(void)
{
    return "1.0.0";
}

tc_status tc_formula_parse(const char* text, tc_formula** out)
{
    TC_REQUIRE(text);
    TC_REQUIRE(out);
    return guard([&] { wrap(topocon::parse(text), out); });
}

void tc_formula_free(tc_formula* f)
{
    delete f;
}

tc_status tc_formula_print(const tc_formula* f, char** out)
{
    TC_REQUIRE(f);
    TC_REQUIRE(out);
    return guard([&] { *out = dup(topocon::print(f->f)); });
}

tc_status tc_formula_language(const tc_formula* f, const char** out)
{
    TC_REQUIRE(f);
    TC_REQUIRE(out);
    return guard([&] { *out = topocon::to_string(topocon::language_of(f->f)).data(); });
}

tc_status tc_formula_polarity(const tc_formula* f, char** out)
{
    TC_REQUIRE(f);
    TC_REQUIRE(out);
    return guard([&] {
        auto p = topocon::polarity(f->f);
        nlohmann::ordered_json j;
        j["eq"] = std::string(topocon::to_string(p.eq));
        j["contact"] = std::string(topocon::to_string(p.contact));
        j["conn"] = std::string(topocon::to_string(p.conn));
        j["int_conn"] = std::string(topocon::to_string(p.int_conn));
        *out = dup(j.dump());
    });
}

tc_status tc_formula_conjunct_count(const tc_formula* f, size_t* out)
{
    TC_REQUIRE(f);
    TC_REQUIRE(out);
    *out = topocon::conjuncts(f->f).size();
    return TC_OK;
}

tc_status tc_formula_to_bullet(const tc_formula* f, tc_formula** out)
{
    TC_REQUIRE(f);
    TC_REQUIRE(out);
    return guard([&] { wrap(topocon::to_bullet(f->f), out); });
}

tc_status tc_formula_from_bullet(const tc_formula* f, tc_formula** out)
{
    TC_REQUIRE(f);
    TC_REQUIRE(out);
    return guard([&] { wrap(topocon::from_bullet(f->f), out); });
}

tc_status tc_formula_eliminate_contact(const tc_formula* f, tc_formula** out)
{
    TC_REQUIRE(f);
    TC_REQUIRE(out);
    return guard([&] { wrap(topocon::eliminate_contact(f->f), out); });
}

tc_status tc_formula_generate(const char* name, const char* pcp_json, tc_formula** out)
{
    TC_REQUIRE(name);
    TC_REQUIRE(out);
    return guard([&] {
        static const std::map<std::string, topocon::Formula (*)()> fixed{
            {"phi-inf", topocon::phi_inf},       {"phi-inf-i", topocon::phi_inf_i}, {"phi-inf-c", topocon::phi_inf_c},
            {"phi-inf-star", topocon::phi_inf_star}, {"eq1", topocon::eq1vs2},      {"eq2", topocon::eq2vs3},
            {"eq3", topocon::wiggly}};
        std::string n = name;
        if (n == "pcp") {
            if (pcp_json == nullptr) {
                throw topocon::Error(topocon::Errc::invalid_argument, "pcp needs an instance");
            }
            wrap(topocon::phi_pcp(topocon::pcp_from_json(pcp_json)), out);
            return;
        }
        auto it = fixed.find(n);
        if (it == fixed.end()) {
            throw topocon::Error(topocon::Errc::invalid_argument, "unknown construction '" + n + "'");
        }
        wrap(it->second(), out);
    });
}

tc_status tc_pcp_is_small(const char* pcp_json, int* out)
{
    TC_REQUIRE(pcp_json);
    TC_REQUIRE(out);
    return guard([&] { *out = topocon::pcp_small(topocon::pcp_from_json(pcp_json)) ? 1 : 0; });
}

tc_status tc_model_from_json(const char* json, tc_model** out)
{
    TC_REQUIRE(json);
    TC_REQUIRE(out);
    return guard([&] { *out = new tc_model{topocon::model_from_json(json)}; });
}

void tc_model_free(tc_model* m)
{
    delete m;
}

tc_status tc_model_to_json(const tc_model* m, char** out)
{
    TC_REQUIRE(m);
    TC_REQUIRE(out);
    return guard([&] { *out = dup(topocon::model_to_json(m->m)); });
}

tc_status tc_model_check(const tc_model* m, const tc_formula* f, int* out)
{
    TC_REQUIRE(m);
    TC_REQUIRE(f);
    TC_REQUIRE(out);
    return guard([&] { *out = topocon::check(m->m, f->f) ? 1 : 0; });
}

tc_status tc_model_oracle_check(const tc_model* m, const tc_formula* f, size_t cap, int* out)
{
    TC_REQUIRE(m);
    TC_REQUIRE(f);
    TC_REQUIRE(out);
    return guard([&] {
        *out = topocon::oracle_check(m->m, f->f, cap == 0 ? topocon::default_oracle_cap : cap) ? 1 : 0;
    });
}

void tc_solve_options_default(tc_solve_options* opt)
{
    if (opt == nullptr) {
        return;
    }
    topocon::Bounds b;
    topocon::SolveOptions o;
    opt->frame_class = TC_CLASS_ALL;
    opt->max_w0 = b.max_w0;
    opt->max_w1 = b.max_w1;
    opt->work_limit = o.work_limit;
    opt->jobs = o.jobs;
}

tc_status tc_solve(const tc_formula* f, tc_solve_mode mode, const tc_solve_options* opt, tc_solve_result** out)
{
    TC_REQUIRE(f);
    TC_REQUIRE(out);
    tc_solve_options local;
    tc_solve_options_default(&local);
    if (opt != nullptr) {
        local = *opt;
    }
    return guard([&] {
        topocon::Bounds b{local.max_w0, local.max_w1};
        topocon::SolveOptions so{local.work_limit, local.jobs == 0 ? 1u : local.jobs};
        topocon::SolveResult r;
        switch (mode) {
        case TC_SOLVE_CLASS: {
            topocon::FrameClass cls = local.frame_class == TC_CLASS_CON    ? topocon::FrameClass::con
                                      : local.frame_class == TC_CLASS_CON2 ? topocon::FrameClass::con2
                                                                           : topocon::FrameClass::all;
            r = topocon::solve(f->f, cls, b, so);
            break;
        }
        case TC_SOLVE_RC3: r = topocon::solve_rc3(f->f, b, so); break;
        case TC_SOLVE_RCP3: r = topocon::solve_rcp3(f->f, b, so); break;
        default: throw topocon::Error(topocon::Errc::invalid_argument, "unknown solve mode");
        }
        *out = new tc_solve_result{std::move(r)};
    });
}

void tc_solve_result_free(tc_solve_result* r)
{
    delete r;
}

tc_verdict tc_solve_result_verdict(const tc_solve_result* r)
{
    if (r == nullptr) {
        return TC_RESOURCE_EXHAUSTED;
    }
    switch (r->r.status) {
    case topocon::SolveResult::Status::sat: return TC_SAT;
    case topocon::SolveResult::Status::unsat_up_to: return TC_UNSAT_UP_TO;
    case topocon::SolveResult::Status::resource_exhausted: return TC_RESOURCE_EXHAUSTED;
    }
    return TC_RESOURCE_EXHAUSTED;
}

tc_model* tc_solve_result_model(const tc_solve_result* r)
{
    if (r == nullptr || !r->r.model) {
        return nullptr;
    }
    return new (std::nothrow) tc_model{*r->r.model};
}

tc_status tc_solve_result_report(const tc_solve_result* r, char** out)
{
    TC_REQUIRE(r);
    TC_REQUIRE(out);
    return guard([&] {
        nlohmann::ordered_json j;
        j["verdict"] = std::string(topocon::to_string(r->r.status));
        j["class"] = std::string(topocon::to_string(r->r.frame_class));
        j["max_w0"] = r->r.bounds.max_w0;
        j["max_w1"] = r->r.bounds.max_w1;
        j["examined"] = r->r.examined;
        if (r->r.status == topocon::SolveResult::Status::resource_exhausted) {
            j["reached_w0"] = r->r.reached_w0;
            j["reached_w1"] = r->r.reached_w1;
        }
        *out = dup(j.dump());
    });
}

tc_status tc_scene_from_json(const char* json, tc_scene** out)
{
    TC_REQUIRE(json);
    TC_REQUIRE(out);
    return guard([&] {
        auto s = topocon::scene_from_json(json);
        auto arr = topocon::Arrangement::build(s);
        *out = new tc_scene{std::move(s), std::move(arr)};
    });
}

void tc_scene_free(tc_scene* s)
{
    delete s;
}

tc_status tc_scene_to_json(const tc_scene* s, char** out)
{
    TC_REQUIRE(s);
    TC_REQUIRE(out);
    return guard([&] { *out = dup(topocon::scene_to_json(s->s)); });
}

tc_status tc_scene_check(const tc_scene* s, const tc_formula* f, int* out)
{
    TC_REQUIRE(s);
    TC_REQUIRE(f);
    TC_REQUIRE(out);
    return guard([&] { *out = topocon::plane_check(s->arr, f->f) ? 1 : 0; });
}

tc_status tc_scene_rcc8(const tc_scene* s, const char* a, const char* b, const char** out)
{
    TC_REQUIRE(s);
    TC_REQUIRE(a);
    TC_REQUIRE(b);
    TC_REQUIRE(out);
    return guard([&] { *out = topocon::to_string(topocon::rcc8(s->arr, a, b)).data(); });
}

tc_status tc_scene_svg(const tc_scene* s, unsigned width, char** out)
{
    TC_REQUIRE(s);
    TC_REQUIRE(out);
    return guard([&] {
        topocon::SvgOptions opt;
        if (width != 0) {
            opt.width = width;
        }
        *out = dup(topocon::to_svg(s->s, opt));
    });
}

tc_status tc_scene_induced_model(const tc_scene* s, tc_model** out)
{
    TC_REQUIRE(s);
    TC_REQUIRE(out);
    return guard([&] { *out = new tc_model{topocon::induced_quasisaw(s->arr)}; });
}

} // extern "C"
