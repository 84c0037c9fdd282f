// Command-line front end. Verdicts go to stdout, diagnostics to stderr.
// Exit status: 0 sat/true, 1 unsat-up-to/false, 2 usage or input error,
// 3 resource limit.

#include "topocon/topocon.h"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

namespace {

enum Exit { exit_yes = 0, exit_no = 1, exit_input = 2, exit_limit = 3 };

struct Failure {
    int status;
    std::string message;
};

struct Options {
    bool json = false;
    unsigned jobs = 1;
};

template <class T, void (*Free)(T*)>
struct Deleter {
    void operator()(T* p) const { Free(p); }
};
using FormulaPtr = std::unique_ptr<tc_formula, Deleter<tc_formula, tc_formula_free>>;
using ModelPtr = std::unique_ptr<tc_model, Deleter<tc_model, tc_model_free>>;
using ScenePtr = std::unique_ptr<tc_scene, Deleter<tc_scene, tc_scene_free>>;
using ResultPtr = std::unique_ptr<tc_solve_result, Deleter<tc_solve_result, tc_solve_result_free>>;

std::string take(char* s)
{
    std::string out = s == nullptr ? "" : s;
    tc_string_free(s);
    return out;
}

int status_for(tc_status st)
{
    return st == TC_ERR_CAP_EXCEEDED ? exit_limit : exit_input;
}

void ok(tc_status st, const std::string& where)
{
    if (st != TC_OK) {
        // Parse messages start with "line:column", so they follow the file name directly.
        throw Failure{status_for(st), where + (st == TC_ERR_PARSE ? ":" : ": ") + tc_last_error()};
    }
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Failure{exit_input, path + ": cannot read file"};
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

FormulaPtr load_formula(const std::string& path)
{
    std::string text = read_file(path);
    tc_formula* f = nullptr;
    ok(tc_formula_parse(text.c_str(), &f), path);
    return FormulaPtr(f);
}

ModelPtr load_model(const std::string& path)
{
    std::string text = read_file(path);
    tc_model* m = nullptr;
    ok(tc_model_from_json(text.c_str(), &m), path);
    return ModelPtr(m);
}

ScenePtr load_scene(const std::string& path)
{
    std::string text = read_file(path);
    tc_scene* s = nullptr;
    ok(tc_scene_from_json(text.c_str(), &s), path);
    return ScenePtr(s);
}

/// One conjunct per line; parses back to the same left-nested conjunction.
std::string layout(const tc_formula* f)
{
    std::string flat = take([&] {
        char* s = nullptr;
        ok(tc_formula_print(f, &s), "print");
        return s;
    }());
    // Split the outermost left spine "((a & b) & c)" into its operands.
    std::vector<std::string> parts;
    std::string rest = flat;
    while (rest.size() > 2 && rest.front() == '(' && rest.back() == ')') {
        int depth = 0;
        std::size_t split = std::string::npos;
        for (std::size_t i = 1; i + 1 < rest.size(); ++i) {
            char c = rest[i];
            if (c == '(') {
                ++depth;
            } else if (c == ')') {
                --depth;
            } else if (depth == 0 && rest.compare(i, 3, " & ") == 0) {
                split = i;
            }
        }
        if (split == std::string::npos) {
            break;
        }
        parts.push_back(rest.substr(split + 3, rest.size() - 1 - (split + 3)));
        rest = rest.substr(1, split - 1);
    }
    parts.push_back(rest);
    std::string out;
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
        out += (it == parts.rbegin() ? "" : "& ") + *it + "\n";
    }
    return out;
}

int verdict(const Options& o, bool value)
{
    if (o.json) {
        std::cout << nlohmann::json{{"verdict", value}}.dump() << "\n";
    } else {
        std::cout << (value ? "true" : "false") << "\n";
    }
    return value ? exit_yes : exit_no;
}

int run_parse(const Options& o, const std::string& file)
{
    auto f = load_formula(file);
    const char* lang = nullptr;
    ok(tc_formula_language(f.get(), &lang), file);
    char* pol = nullptr;
    ok(tc_formula_polarity(f.get(), &pol), file);
    std::string polarity = take(pol);
    char* printed = nullptr;
    ok(tc_formula_print(f.get(), &printed), file);
    std::string text = take(printed);
    if (o.json) {
        nlohmann::ordered_json j;
        j["formula"] = text;
        j["language"] = lang;
        j["polarity"] = nlohmann::json::parse(polarity);
        std::cout << j.dump() << "\n";
    } else {
        std::cout << text << "\n" << "language: " << lang << "\n";
    }
    return exit_yes;
}

struct SolveArgs {
    std::string cls = "all";
    std::size_t max_w0 = 5;
    std::size_t max_w1 = 10;
    std::uint64_t work_limit = 0;
    std::string out;
    std::string file;
};

int run_solve(const Options& o, const SolveArgs& a, tc_solve_mode mode)
{
    auto f = load_formula(a.file);
    tc_solve_options opt;
    tc_solve_options_default(&opt);
    opt.frame_class = a.cls == "con" ? TC_CLASS_CON : a.cls == "con2" ? TC_CLASS_CON2 : TC_CLASS_ALL;
    opt.max_w0 = a.max_w0;
    opt.max_w1 = a.max_w1;
    if (a.work_limit != 0) {
        opt.work_limit = a.work_limit;
    }
    opt.jobs = o.jobs;
    tc_solve_result* raw = nullptr;
    ok(tc_solve(f.get(), mode, &opt, &raw), a.file);
    ResultPtr r(raw);
    char* rep = nullptr;
    ok(tc_solve_result_report(r.get(), &rep), "report");
    auto report = nlohmann::ordered_json::parse(take(rep));
    tc_verdict v = tc_solve_result_verdict(r.get());
    std::string model_json;
    if (v == TC_SAT) {
        ModelPtr m(tc_solve_result_model(r.get()));
        char* mj = nullptr;
        ok(tc_model_to_json(m.get(), &mj), "model");
        model_json = take(mj);
        if (!a.out.empty()) {
            std::ofstream out(a.out, std::ios::binary);
            if (!out || !(out << model_json << "\n")) {
                throw Failure{exit_input, a.out + ": cannot write file"};
            }
        }
    }
    if (o.json) {
        if (v == TC_SAT) {
            report["model"] = nlohmann::ordered_json::parse(model_json);
        }
        std::cout << report.dump() << "\n";
    } else if (v == TC_SAT) {
        std::cout << model_json << "\n";
    } else if (v == TC_UNSAT_UP_TO) {
        std::cout << "unsat-up-to class=" << report["class"].get<std::string>() << " max-w0=" << a.max_w0
                  << " max-w1=" << a.max_w1 << " examined=" << report["examined"] << "\n";
    } else {
        std::cout << "resource-exhausted at w0=" << report["reached_w0"] << " w1=" << report["reached_w1"]
                  << " examined=" << report["examined"] << "\n";
    }
    return v == TC_SAT ? exit_yes : v == TC_UNSAT_UP_TO ? exit_no : exit_limit;
}

int run_eval(const Options& o, const std::string& model, const std::string& scene, const std::string& file)
{
    if (model.empty() == scene.empty()) {
        throw Failure{exit_input, "eval: give exactly one of --model and --scene"};
    }
    auto f = load_formula(file);
    int value = 0;
    if (!model.empty()) {
        auto m = load_model(model);
        ok(tc_model_check(m.get(), f.get(), &value), file);
    } else {
        auto s = load_scene(scene);
        ok(tc_scene_check(s.get(), f.get(), &value), file);
    }
    return verdict(o, value != 0);
}

int run_oracle(const Options& o, const std::string& model, std::size_t cap, const std::string& file)
{
    auto f = load_formula(file);
    auto m = load_model(model);
    int value = 0;
    ok(tc_model_oracle_check(m.get(), f.get(), cap, &value), model);
    return verdict(o, value != 0);
}

int run_gen(const Options& o, const std::string& name, const std::string& instance)
{
    std::string pcp;
    if (name == "pcp") {
        if (instance.empty()) {
            throw Failure{exit_input, "gen pcp: --instance is required"};
        }
        pcp = read_file(instance);
        int small = 0;
        ok(tc_pcp_is_small(pcp.c_str(), &small), instance);
        if (small != 0) {
            std::cerr << "warning: fewer than 7 tiles; the encoding is still produced\n";
        }
    } else if (!instance.empty()) {
        throw Failure{exit_input, "gen: --instance only applies to pcp"};
    }
    tc_formula* raw = nullptr;
    ok(tc_formula_generate(name.c_str(), name == "pcp" ? pcp.c_str() : nullptr, &raw),
       name == "pcp" ? instance : "gen");
    FormulaPtr f(raw);
    if (o.json) {
        char* printed = nullptr;
        ok(tc_formula_print(f.get(), &printed), "gen");
        const char* lang = nullptr;
        ok(tc_formula_language(f.get(), &lang), "gen");
        std::size_t n = 0;
        ok(tc_formula_conjunct_count(f.get(), &n), "gen");
        nlohmann::ordered_json j;
        j["formula"] = take(printed);
        j["language"] = lang;
        j["conjuncts"] = n;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << layout(f.get());
    }
    return exit_yes;
}

int run_rcc8(const Options& o, const std::string& scene, const std::string& a, const std::string& b)
{
    auto s = load_scene(scene);
    const char* rel = nullptr;
    ok(tc_scene_rcc8(s.get(), a.c_str(), b.c_str(), &rel), scene);
    if (o.json) {
        std::cout << nlohmann::json{{"relation", rel}}.dump() << "\n";
    } else {
        std::cout << rel << "\n";
    }
    return exit_yes;
}

int run_render(const std::string& scene, const std::string& out, unsigned width)
{
    auto s = load_scene(scene);
    char* svg = nullptr;
    ok(tc_scene_svg(s.get(), width, &svg), scene);
    std::string text = take(svg);
    std::ofstream f(out, std::ios::binary);
    if (!f || !(f << text)) {
        throw Failure{exit_input, out + ": cannot write file"};
    }
    return exit_yes;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Topological logics toolkit: parse, solve, evaluate and generate formulas."};
    app.require_subcommand(1);
    Options o;
    app.add_flag("--json", o.json, "Machine-readable output");
    app.add_option("--jobs", o.jobs, "Solver worker threads")->check(CLI::Range(1u, 256u));

    std::function<int()> action;

    std::string file;
    auto* parse = app.add_subcommand("parse", "Print the canonical form and language of a formula");
    parse->add_option("FILE", file)->required();
    parse->callback([&] { action = [&] { return run_parse(o, file); }; });

    SolveArgs sa;
    auto add_bounds = [&](CLI::App* sub) {
        sub->add_option("--max-w0", sa.max_w0, "Largest number of depth-0 points")->capture_default_str();
        sub->add_option("--max-w1", sa.max_w1, "Largest number of depth-1 points")->capture_default_str();
        sub->add_option("--work-limit", sa.work_limit, "Search node budget");
        sub->add_option("-o,--out", sa.out, "Write the model here as well");
        sub->add_option("FILE", sa.file)->required();
    };
    auto* solve = app.add_subcommand("solve", "Search for a quasi-saw model");
    solve->add_option("--class", sa.cls, "Frame class")
        ->check(CLI::IsMember({"all", "con", "con2"}))
        ->capture_default_str();
    add_bounds(solve);
    solve->callback([&] { action = [&] { return run_solve(o, sa, TC_SOLVE_CLASS); }; });
    auto* rc3 = app.add_subcommand("solve-rc3", "Satisfiability over regular closed sets (B or Bci input)");
    add_bounds(rc3);
    rc3->callback([&] { action = [&] { return run_solve(o, sa, TC_SOLVE_RC3); }; });
    auto* rcp3 = app.add_subcommand("solve-rcp3", "Satisfiability over polyhedra (B or Bci input)");
    add_bounds(rcp3);
    rcp3->callback([&] { action = [&] { return run_solve(o, sa, TC_SOLVE_RCP3); }; });

    std::string model, scene;
    auto* eval = app.add_subcommand("eval", "Evaluate a formula in a model or a plane scene");
    eval->add_option("--model", model, "Quasi-saw model file");
    eval->add_option("--scene", scene, "Plane scene file");
    eval->add_option("FILE", file)->required();
    eval->callback([&] { action = [&] { return run_eval(o, model, scene, file); }; });

    std::size_t cap = 0;
    auto* oracle = app.add_subcommand("oracle", "Evaluate by direct topological semantics");
    oracle->add_option("--model", model, "Quasi-saw model file")->required();
    oracle->add_option("--cap", cap, "Largest frame accepted (0 = default)");
    oracle->add_option("FILE", file)->required();
    oracle->callback([&] { action = [&] { return run_oracle(o, model, cap, file); }; });

    std::string name, instance;
    auto* gen = app.add_subcommand("gen", "Print a generated formula");
    gen->add_option("NAME", name)
        ->required()
        ->check(CLI::IsMember({"phi-inf", "phi-inf-i", "phi-inf-c", "phi-inf-star", "eq1", "eq2", "eq3", "pcp"}));
    gen->add_option("--instance", instance, "PCP instance file");
    gen->callback([&] { action = [&] { return run_gen(o, name, instance); }; });

    std::string a, b;
    auto* rcc = app.add_subcommand("rcc8", "RCC8 relation between two scene regions");
    rcc->add_option("--scene", scene, "Plane scene file")->required();
    rcc->add_option("A", a)->required();
    rcc->add_option("B", b)->required();
    rcc->callback([&] { action = [&] { return run_rcc8(o, scene, a, b); }; });

    std::string out;
    unsigned width = 400;
    auto* render = app.add_subcommand("render", "Draw a scene as SVG");
    render->add_option("--scene", scene, "Plane scene file")->required();
    render->add_option("-o,--out", out, "Output SVG file")->required();
    render->add_option("--width", width, "Image width in pixels")->capture_default_str();
    render->callback([&] { action = [&] { return run_render(scene, out, width); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : exit_input;
    }
    try {
        return action();
    } catch (const Failure& f) {
        std::cerr << "error: " << f.message << "\n";
        return f.status;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    }
}
