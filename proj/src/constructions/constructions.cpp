#include "topocon/constructions.hpp"

#include "topocon/errors.hpp"

#include "../plane/geometry.hpp"

#include <algorithm>
#include <regex>
#include <set>
#include <sstream>

#include "json.hpp"

namespace topocon {

namespace {

Term v(const std::string& name)
{
    return Term::var(name);
}

std::string idx(const std::string& stem, int i)
{
    return stem + std::to_string(i);
}

void require_distinct(const std::vector<Term>& rs, const char* what)
{
    std::set<Term> seen;
    for (const auto& r : rs) {
        if (!seen.insert(r).second) {
            throw Error(Errc::invalid_argument, std::string(what) + ": repeated argument " + print(r));
        }
    }
}

void require_arity(const std::vector<Term>& rs, std::size_t lo, const char* what)
{
    if (rs.size() < lo) {
        throw Error(Errc::invalid_argument,
                    std::string(what) + " needs at least " + std::to_string(lo) + " arguments, got " +
                        std::to_string(rs.size()));
    }
}

void append(std::vector<Formula>& out, const Formula& f)
{
    for (auto& c : conjuncts(f)) {
        out.push_back(std::move(c));
    }
}

bool is_tautology(const Formula& f)
{
    return f == conj_of({});
}

std::vector<Formula> pairwise_disjoint(const std::vector<Term>& rs)
{
    std::vector<Formula> out;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        for (std::size_t j = i + 1; j < rs.size(); ++j) {
            out.push_back(eq(rs[i] * rs[j], Term::zero()));
        }
    }
    return out;
}

Formula non_tangential(const Term& inner, const Term& outer)
{
    return not_contact(inner, -outer);
}

} // namespace

std::vector<Term> var_terms(const std::vector<std::string>& names)
{
    std::vector<Term> out;
    for (const auto& n : names) {
        out.push_back(Term::var(n));
    }
    return out;
}

Formula partition(const std::vector<Term>& rs)
{
    require_arity(rs, 1, "partition");
    require_distinct(rs, "partition");
    std::vector<Formula> out{eq(sum_of(rs), Term::one())};
    for (auto& f : pairwise_disjoint(rs)) {
        out.push_back(std::move(f));
    }
    return conj_of(out);
}

Formula sc_part(const std::vector<Term>& rs)
{
    std::vector<Formula> out = conjuncts(partition(rs));
    std::size_t k = rs.size();
    for (const auto& r : rs) {
        out.push_back(neq(r, Term::zero()));
    }
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 2; j < k && j + 1 < i + k; ++j) {
            out.push_back(not_contact(rs[i], rs[j]));
        }
    }
    return conj_of(out);
}

Formula colour_comp(const Term& r, const std::vector<Term>& colours)
{
    require_distinct(colours, "colourComp");
    std::vector<Formula> out;
    for (std::size_t i = 0; i < colours.size(); ++i) {
        for (std::size_t j = i + 1; j < colours.size(); ++j) {
            out.push_back(not_contact(r * colours[i], r * colours[j]));
        }
    }
    return conj_of(out);
}

Formula k5m(const std::vector<Term>& rs)
{
    if (rs.size() != 5) {
        throw Error(Errc::invalid_argument, "k5m takes exactly 5 arguments");
    }
    require_distinct(rs, "k5m");
    std::vector<Formula> out;
    for (const auto& r : rs) {
        out.push_back(int_conn(r));
        out.push_back(neq(r, Term::zero()));
    }
    for (auto& f : pairwise_disjoint(rs)) {
        out.push_back(std::move(f));
    }
    for (int j = 2; j < 5; ++j) {
        out.push_back(int_conn(rs[0] + rs[j]));
    }
    for (int i = 1; i < 5; ++i) {
        for (int j = i + 1; j < 5; ++j) {
            out.push_back(int_conn(rs[i] + rs[j]));
        }
    }
    return conj_of(out);
}

Formula stack_i(const std::vector<Term>& rs)
{
    require_arity(rs, 2, "stack");
    require_distinct(rs, "stack");
    std::vector<Formula> out;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        out.push_back(int_conn(sum_of({rs.begin() + static_cast<std::ptrdiff_t>(i), rs.end()})));
    }
    for (auto& f : pairwise_disjoint(rs)) {
        out.push_back(std::move(f));
    }
    for (std::size_t i = 0; i < rs.size(); ++i) {
        for (std::size_t j = i + 2; j < rs.size(); ++j) {
            out.push_back(not_contact(rs[i], rs[j]));
        }
    }
    return conj_of(out);
}

Formula frame_i(const std::vector<Term>& rs)
{
    require_arity(rs, 3, "frame");
    require_distinct(rs, "frame");
    std::vector<Formula> out;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        out.push_back(neq(rs[i], Term::zero()));
        out.push_back(int_conn(rs[i] + rs[(i + 1) % rs.size()]));
    }
    for (auto& f : pairwise_disjoint(rs)) {
        out.push_back(std::move(f));
    }
    return conj_of(out);
}

// ---------------------------------------------------------------------------
// 3-regions

Formula ThreeRegion::implicit() const
{
    return neq(core(), Term::zero()) && non_tangential(core(), mid()) && non_tangential(mid(), outer());
}

namespace {

void check_three(const std::vector<ThreeRegion>& rs, std::size_t lo, const char* what,
                 const std::optional<Term>& z = std::nullopt)
{
    if (rs.size() < lo) {
        throw Error(Errc::invalid_argument,
                    std::string(what) + " needs at least " + std::to_string(lo) + " 3-regions");
    }
    std::set<std::string> names;
    if (z) {
        names = variables(*z);
    }
    for (const auto& r : rs) {
        if (!is_identifier(r.base)) {
            throw Error(Errc::invalid_argument, std::string(what) + ": bad 3-region name '" + r.base + "'");
        }
        for (const auto& t : {r.outer(), r.mid(), r.core()}) {
            if (!names.insert(t.name()).second) {
                throw Error(Errc::invalid_argument, std::string(what) + ": variable " + t.name() + " used twice");
            }
        }
    }
}

// The c-conjuncts and gap conditions of the 3-region stack, without the
// implicit conjuncts. With z, the first sum uses (-z) . mid_1.
std::vector<Formula> stack3_body(const std::vector<ThreeRegion>& rs, const std::optional<Term>& z)
{
    std::vector<Formula> out;
    std::size_t n = rs.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        Term head = rs[i].mid();
        if (i == 0 && z) {
            head = -*z * head;
        }
        std::vector<Term> parts{head};
        for (std::size_t j = i + 1; j < n; ++j) {
            parts.push_back(rs[j].core());
        }
        out.push_back(conn(sum_of(parts)));
    }
    out.push_back(conn(rs[n - 1].mid()));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 2; j < n; ++j) {
            out.push_back(not_contact(rs[i].outer(), rs[j].outer()));
        }
    }
    return out;
}

void append_implicit(std::vector<Formula>& out, const std::vector<ThreeRegion>& rs)
{
    for (const auto& r : rs) {
        append(out, r.implicit());
    }
}

} // namespace

Formula stack3(const std::vector<ThreeRegion>& rs)
{
    check_three(rs, 2, "stack3");
    auto out = stack3_body(rs, std::nullopt);
    append_implicit(out, rs);
    return conj_of(out);
}

Formula stack3_z(const Term& z, const std::vector<ThreeRegion>& rs)
{
    check_three(rs, 2, "stack3_z", z);
    std::vector<Formula> out;
    append(out, colour_comp(rs[0].mid(), {z, -z}));
    for (auto& f : stack3_body(rs, z)) {
        out.push_back(std::move(f));
    }
    append_implicit(out, rs);
    return conj_of(out);
}

Formula frame3(const std::vector<ThreeRegion>& rs)
{
    check_three(rs, 3, "frame3");
    std::size_t n = rs.size() - 1;
    std::vector<ThreeRegion> head(rs.begin(), rs.end() - 1);
    auto out = stack3_body(head, std::nullopt);
    std::vector<Term> between;
    for (std::size_t i = 1; i + 2 <= n; ++i) {
        between.push_back(rs[i].outer());
    }
    out.push_back(not_contact(rs[n].outer(), sum_of(between)));
    out.push_back(conn(rs[n].mid()));
    out.push_back(neq(rs[0].mid() * rs[n].mid(), Term::zero()));
    out.push_back(neq(rs[n - 1].core() * rs[n].mid(), Term::zero()));
    append_implicit(out, rs);
    return conj_of(out);
}

// ---------------------------------------------------------------------------
// Infinite components

namespace {

Term r(int i)
{
    return v(idx("r", (i + 4) % 4));
}

Term rp(int i)
{
    return v(idx("r", (i + 4) % 4) + "'");
}

std::vector<Term> four(const char* stem)
{
    return var_terms({idx(stem, 0), idx(stem, 1), idx(stem, 2), idx(stem, 3)});
}

} // namespace

Formula phi_inf()
{
    Term t = v("t");
    std::vector<Formula> out = conjuncts(sc_part(four("r")));
    for (int i = 0; i < 4; ++i) {
        out.push_back(neq(rp(i), Term::zero()));
        out.push_back(leq(rp(i), r(i)));
    }
    out.push_back(neq(t, Term::zero()));
    for (int i = 0; i < 4; ++i) {
        out.push_back(conn(rp(i) + r(i + 1) + t));
    }
    for (int i = 0; i < 4; ++i) {
        out.push_back(not_contact(rp(i), t));
    }
    for (int i = 0; i < 4; ++i) {
        out.push_back(not_contact(rp(i), r(i + 1) * -rp(i + 1)));
    }
    return conj_of(out);
}

Formula phi_inf_i()
{
    return from_bullet(phi_inf());
}

Formula phi_inf_c()
{
    Term t = v("t");
    Term s = v("s");
    auto si = [](int i) { return v(idx("s", i)); };
    auto ti = [](int i) { return v(idx("t", i)); };
    auto outer = [](int i) { return r(i) * -rp(i); };

    std::vector<Formula> out = conjuncts(partition(four("r")));
    for (int i = 0; i < 4; ++i) {
        out.push_back(neq(r(i), Term::zero()));
    }
    // Each !C(r_i, r_{i+2}) splits over r_i = r_i' + r_i.(-r_i') into four
    // contacts, each replaced by its own notC.
    for (int i = 0; i < 2; ++i) {
        append(out, not_c(rp(i) + si(i), rp(i + 2) + si(i + 2)));
        append(out, not_c(outer(i) + ti(i), outer(i + 2) + ti(i + 2)));
        append(out, not_c(outer(i) + t, rp(i + 2) + s));
        append(out, not_c(rp(i) + s, outer(i + 2) + t));
    }
    for (int i = 0; i < 4; ++i) {
        out.push_back(neq(rp(i), Term::zero()));
        out.push_back(leq(rp(i), r(i)));
    }
    out.push_back(neq(t, Term::zero()));
    for (int i = 0; i < 4; ++i) {
        out.push_back(conn(rp(i) + r(i + 1) + t));
    }
    append(out, not_c(rp(0) + rp(1) + rp(2) + rp(3), t));
    for (int i = 0; i < 4; ++i) {
        append(out, not_c(rp(i) + s, outer(i + 1) + t));
    }
    return conj_of(out);
}

Formula phi_inf_star()
{
    auto ab = [](const char* x, int i, int j) { return v(std::string(x) + "_" + std::to_string(i) + "_" + std::to_string(j)); };
    Term a = v("a");
    Term b = v("b");
    auto s = [](int i) { return v(idx("s", i)); };

    std::vector<Formula> out = conjuncts(frame_i({s(0), s(1), b, s(2), a, s(3)}));
    append(out, stack_i({s(0), ab("b", 1, 1), ab("b", 1, 2), ab("b", 1, 3), b}));
    for (int i = 0; i < 2; ++i) {
        append(out, stack_i({ab("b", i, 2), ab("a", i, 1), ab("a", i, 2), ab("a", i, 3), a}));
    }
    for (int i = 0; i < 2; ++i) {
        append(out, stack_i({ab("a", (i + 1) % 2, 2), ab("b", i, 1), ab("b", i, 2), ab("b", i, 3), b}));
    }
    std::vector<Term> all{s(0), s(1), s(2), s(3), a, b};
    for (const char* x : {"a", "b"}) {
        for (int i = 0; i < 2; ++i) {
            for (int j = 1; j <= 3; ++j) {
                all.push_back(ab(x, i, j));
            }
        }
    }
    for (auto& f : pairwise_disjoint(all)) {
        out.push_back(std::move(f));
    }
    return conj_of(out);
}

// ---------------------------------------------------------------------------
// Running examples

namespace {

Formula complete_drawing(int n)
{
    std::vector<Formula> out;
    for (int i = 1; i <= n; ++i) {
        out.push_back(int_conn(v(idx("r", i))));
        out.push_back(neq(v(idx("r", i)), Term::zero()));
    }
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            out.push_back(int_conn(v(idx("r", i)) + v(idx("r", j))));
            out.push_back(eq(v(idx("r", i)) * v(idx("r", j)), Term::zero()));
        }
    }
    return conj_of(out);
}

} // namespace

Formula eq1vs2()
{
    return complete_drawing(3);
}

Formula eq2vs3()
{
    return complete_drawing(5);
}

Formula wiggly()
{
    Term r1 = v("r1"), r2 = v("r2"), r3 = v("r3");
    return conj_of({int_conn(r1), int_conn(r2), int_conn(r3), int_conn(r1 + r2 + r3), !int_conn(r1 + r2),
                    !int_conn(r1 + r3)});
}

// ---------------------------------------------------------------------------
// PCP

namespace {

bool reserved_pcp_name(const std::string& n)
{
    static const std::set<std::string> fixed{"r0",  "r1",  "r2",  "r3",    "s0",  "s1",  "s2",  "s3", "e1",
                                             "e2",  "wstar", "r0'", "r1'", "r2'", "r3'", "w1",  "t"};
    static const std::regex position("p_[0-9]+_[0-9]+_[0-9]+");
    return fixed.count(n) > 0 || std::regex_match(n, position);
}

std::vector<std::string> split_word(const nlohmann::json& j, const std::string& where)
{
    std::vector<std::string> out;
    if (j.is_array()) {
        for (const auto& x : j) {
            if (!x.is_string()) {
                throw Error(Errc::io, where + ": letters must be strings");
            }
            out.push_back(x.get<std::string>());
        }
        return out;
    }
    if (!j.is_string()) {
        throw Error(Errc::io, where + ": word must be a string or an array");
    }
    auto s = j.get<std::string>();
    if (s.find(' ') != std::string::npos) {
        std::istringstream in(s);
        std::string w;
        while (in >> w) {
            out.push_back(w);
        }
    } else {
        for (char c : s) {
            out.emplace_back(1, c);
        }
    }
    return out;
}

std::string pos_name(int k, std::size_t h, std::size_t l)
{
    return "p_" + std::to_string(k) + "_" + std::to_string(h + 1) + "_" + std::to_string(l + 1);
}

} // namespace

void PcpInstance::validate() const
{
    if (tiles.empty() || letters.empty()) {
        throw Error(Errc::invalid_argument, "PCP instance needs at least one tile and one letter");
    }
    std::set<std::string> names;
    for (const auto* group : {&tiles, &letters}) {
        for (const auto& n : *group) {
            if (!is_identifier(n) || n.front() == '_') {
                throw Error(Errc::invalid_argument, "PCP name '" + n + "' is not an identifier");
            }
            if (reserved_pcp_name(n)) {
                throw Error(Errc::invalid_argument, "PCP name '" + n + "' clashes with a generated variable");
            }
            if (!names.insert(n).second) {
                throw Error(Errc::invalid_argument, "PCP name '" + n + "' used twice");
            }
        }
    }
    std::set<std::string> letter_set(letters.begin(), letters.end());
    std::set<std::string> tile_set(tiles.begin(), tiles.end());
    for (int k = 1; k <= 2; ++k) {
        const auto& w = k == 1 ? w1 : w2;
        for (const auto& [tile, word] : w) {
            if (!tile_set.count(tile)) {
                throw Error(Errc::invalid_argument, "w" + std::to_string(k) + " maps unknown tile '" + tile + "'");
            }
        }
        for (const auto& tile : tiles) {
            auto it = w.find(tile);
            if (it == w.end() || it->second.empty()) {
                throw Error(Errc::invalid_argument,
                            "w" + std::to_string(k) + " has no nonempty word for tile '" + tile + "'");
            }
            for (const auto& l : it->second) {
                if (!letter_set.count(l)) {
                    throw Error(Errc::invalid_argument,
                                "w" + std::to_string(k) + "(" + tile + ") uses unknown letter '" + l + "'");
                }
            }
        }
    }
}

const std::vector<std::string>& PcpInstance::word(int k, const std::string& tile) const
{
    return (k == 1 ? w1 : w2).at(tile);
}

PcpInstance pcp_from_json(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(Errc::io, std::string("PCP instance: ") + e.what());
    }
    if (!j.is_object()) {
        throw Error(Errc::io, "PCP instance: expected an object");
    }
    PcpInstance p;
    auto names = [&](const char* key) {
        std::vector<std::string> out;
        if (!j.contains(key) || !j[key].is_array()) {
            throw Error(Errc::io, std::string("PCP instance: '") + key + "' must be an array");
        }
        for (const auto& x : j[key]) {
            if (!x.is_string()) {
                throw Error(Errc::io, std::string("PCP instance: '") + key + "' entries must be strings");
            }
            out.push_back(x.get<std::string>());
        }
        return out;
    };
    p.tiles = names("tiles");
    p.letters = names("letters");
    for (const char* key : {"w1", "w2"}) {
        if (!j.contains(key) || !j[key].is_object()) {
            throw Error(Errc::io, std::string("PCP instance: '") + key + "' must be an object");
        }
        auto& w = std::string(key) == "w1" ? p.w1 : p.w2;
        for (const auto& [tile, word] : j[key].items()) {
            w[tile] = split_word(word, std::string(key) + "(" + tile + ")");
        }
    }
    p.validate();
    return p;
}

bool pcp_small(const PcpInstance& p)
{
    return p.tiles.size() < 7;
}

std::vector<Family> phi_pcp_families(const PcpInstance& p)
{
    p.validate();
    auto rs = four("r");
    auto ss = four("s");
    auto s = [&](int i) { return ss[(i + 4) % 4]; };
    Term wstar = v("wstar");
    Term w1 = v("w1");
    Term t = v("t");
    std::vector<Term> e{v("e1"), v("e2")};
    auto tiles = var_terms(p.tiles);
    auto letters = var_terms(p.letters);
    // pos[k][h][l] for k in {0, 1}
    std::vector<std::vector<std::vector<Term>>> pos(2);
    std::vector<std::vector<Term>> pos_flat(2);
    for (int k = 0; k < 2; ++k) {
        for (std::size_t h = 0; h < p.tiles.size(); ++h) {
            pos[k].emplace_back();
            for (std::size_t l = 0; l < p.word(k + 1, p.tiles[h]).size(); ++l) {
                pos[k][h].push_back(v(pos_name(k + 1, h, l)));
                pos_flat[k].push_back(pos[k][h].back());
            }
        }
    }

    std::vector<Family> fam;
    auto add = [&](const std::string& name) -> std::vector<Formula>& {
        fam.push_back({name, {}});
        return fam.back().items;
    };
    auto lits = [](std::vector<Formula>& items, const Formula& f) { append(items, f); };

    lits(add("sc-part r"), sc_part(rs));
    lits(add("sc-part s"), sc_part(ss));
    {
        auto& f = add("tracks");
        for (int k = 0; k < 2; ++k) {
            for (int i = 0; i < 4; ++i) {
                f.push_back(colour_comp(r(i) * e[k], ss));
            }
        }
    }
    {
        auto& f = add("stop");
        f.push_back(conn(wstar));
        f.push_back(neq(wstar, Term::zero()));
    }
    for (const auto* part : {&rs, &ss}) {
        auto& f = add(part == &rs ? "stop r" : "stop s");
        f.push_back(colour_comp(wstar, *part));
        for (const auto& x : *part) {
            f.push_back(colour_comp(x, {wstar, -wstar}));
        }
    }
    {
        auto& f = add("start");
        f.push_back(conn(w1));
        f.push_back(leq(w1, r(1)));
        f.push_back(leq(w1, s(1)));
        f.push_back(eq(w1 * wstar, Term::zero()));
    }
    {
        auto& f = add("onion subregions");
        for (int i = 0; i < 4; ++i) {
            f.push_back(leq(rp(i), r(i)));
        }
    }
    {
        auto& f = add("start on tracks");
        for (int k = 0; k < 2; ++k) {
            f.push_back(neq(e[k] * rp(1) * w1, Term::zero()));
        }
    }
    {
        auto& f = add("onion witness");
        for (int k = 0; k < 2; ++k) {
            f.push_back(neq(e[k] * t, Term::zero()));
        }
    }
    {
        auto& f = add("onion connections");
        for (int k = 0; k < 2; ++k) {
            for (int i = 0; i < 4; ++i) {
                f.push_back(conn(e[k] * ((rp(i) * -wstar) + r(i + 1) + t)));
            }
        }
    }
    {
        auto& f = add("onion separation");
        for (int i = 0; i < 4; ++i) {
            f.push_back(not_contact(rp(i), t));
        }
    }
    {
        auto& f = add("onion layers");
        for (int i = 0; i < 4; ++i) {
            f.push_back(not_contact(rp(i), r(i + 1) * -rp(i + 1)));
        }
    }
    {
        auto& f = add("progress");
        for (int k = 0; k < 2; ++k) {
            for (int i = 0; i < 4; ++i) {
                for (int j = 0; j < 4; ++j) {
                    f.push_back(not_contact(e[k] * r(i) * s(j), e[k] * r(i + 1) * s(j - 1)));
                }
            }
        }
    }
    {
        auto& f = add("tile labels");
        f.push_back(partition(tiles));
        for (int j = 0; j < 4; ++j) {
            f.push_back(colour_comp(s(j), tiles));
        }
    }
    {
        auto& f = add("letter labels");
        f.push_back(partition(letters));
        for (int i = 0; i < 4; ++i) {
            f.push_back(colour_comp(r(i), letters));
        }
    }
    {
        auto& f = add("position labels");
        for (int k = 0; k < 2; ++k) {
            f.push_back(partition(pos_flat[k]));
            for (int i = 0; i < 4; ++i) {
                f.push_back(colour_comp(r(i), pos_flat[k]));
            }
        }
    }
    {
        auto& f = add("tile positions");
        for (int k = 0; k < 2; ++k) {
            for (std::size_t h = 0; h < tiles.size(); ++h) {
                f.push_back(leq(tiles[h], sum_of(pos[k][h])));
            }
        }
    }
    {
        auto& f = add("block starts");
        for (int k = 0; k < 2; ++k) {
            for (std::size_t h = 0; h < tiles.size(); ++h) {
                for (std::size_t l = 1; l < pos[k][h].size(); ++l) {
                    const Term& q = pos[k][h][l];
                    f.push_back(eq(w1 * q, Term::zero()));
                    for (int i = 0; i < 4; ++i) {
                        f.push_back(not_contact(s(i), s(i + 1) * q));
                    }
                }
            }
        }
    }
    {
        auto& f = add("position succession");
        for (int k = 0; k < 2; ++k) {
            std::set<std::pair<Term, Term>> allowed;
            for (std::size_t h = 0; h < tiles.size(); ++h) {
                const auto& ph = pos[k][h];
                for (std::size_t l = 0; l + 1 < ph.size(); ++l) {
                    allowed.insert({ph[l], ph[l + 1]});
                }
                for (std::size_t h2 = 0; h2 < tiles.size(); ++h2) {
                    allowed.insert({ph.back(), pos[k][h2].front()});
                }
            }
            for (int i = 0; i < 4; ++i) {
                for (const auto& a : pos_flat[k]) {
                    for (const auto& b : pos_flat[k]) {
                        if (!allowed.count({a, b})) {
                            f.push_back(not_contact(a * r(i), b * r(i + 1)));
                        }
                    }
                }
            }
        }
    }
    {
        auto& f = add("block first positions");
        for (int k = 0; k < 2; ++k) {
            for (int i = 0; i < 4; ++i) {
                for (int j = 0; j < 4; ++j) {
                    for (std::size_t h = 0; h < tiles.size(); ++h) {
                        f.push_back(not_contact(r(i) * s(j), r(i + 1) * s(j) * pos[k][h].front()));
                    }
                }
            }
        }
    }
    {
        auto& f = add("block ends");
        for (int k = 0; k < 2; ++k) {
            for (std::size_t h = 0; h < tiles.size(); ++h) {
                for (std::size_t l = 0; l + 1 < pos[k][h].size(); ++l) {
                    f.push_back(not_contact(pos[k][h][l], wstar));
                }
            }
        }
    }
    {
        auto& f = add("morphisms");
        for (int k = 0; k < 2; ++k) {
            for (std::size_t h = 0; h < tiles.size(); ++h) {
                const auto& word = p.word(k + 1, p.tiles[h]);
                for (std::size_t l = 0; l < word.size(); ++l) {
                    f.push_back(leq(pos[k][h][l], v(word[l])));
                }
            }
        }
    }
    return fam;
}

Formula phi_pcp(const PcpInstance& p)
{
    std::vector<Formula> out;
    for (const auto& f : phi_pcp_families(p)) {
        for (const auto& item : f.items) {
            if (!is_tautology(item)) {
                append(out, item);
            }
        }
    }
    return conj_of(out);
}

// ---------------------------------------------------------------------------
// Separator

namespace {

Rational abs_q(const Rational& x)
{
    return x < 0 ? Rational(-x) : x;
}

/// Chebyshev distance from p to segment ab. The distance is piecewise
/// linear and convex along the segment, so its minimum is at an endpoint, at
/// a zero of either coordinate difference, or where the two agree in size.
Rational linf_point_segment(const Point& p, const Point& a, const Point& b)
{
    Rational dx = b.x - a.x, dy = b.y - a.y;
    Rational px = p.x - a.x, py = p.y - a.y;
    std::vector<Rational> ts{0, 1};
    auto cand = [&](const Rational& num, const Rational& den) {
        if (den != 0) {
            Rational t = num / den;
            if (t >= 0 && t <= 1) {
                ts.push_back(t);
            }
        }
    };
    cand(px, dx);
    cand(py, dy);
    cand(px - py, dx - dy);
    cand(px + py, dx + dy);
    Rational best = -1;
    for (const auto& t : ts) {
        Rational d = std::max(abs_q(px - t * dx), abs_q(py - t * dy));
        if (best < 0 || d < best) {
            best = d;
        }
    }
    return best;
}

/// For disjoint segments the nearest pair has an endpoint on one side.
Rational linf_segments(const Point& a, const Point& b, const Point& c, const Point& d)
{
    if (segments_meet(a, b, c, d)) {
        return 0;
    }
    return std::min({linf_point_segment(a, c, d), linf_point_segment(b, c, d), linf_point_segment(c, a, b),
                     linf_point_segment(d, a, b)});
}

std::vector<std::pair<Point, Point>> region_segments(const std::vector<Polygon>& polys)
{
    std::vector<std::pair<Point, Point>> out;
    auto ring = [&](const Ring& r) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            out.emplace_back(r[i], r[(i + 1) % r.size()]);
        }
    };
    for (const auto& p : polys) {
        ring(p.outer);
        for (const auto& h : p.holes) {
            ring(h);
        }
    }
    return out;
}

/// 1 for strictly inside the ring, 0 for strictly outside; throws if the
/// region has vertices on both sides.
int side_of(const std::vector<Polygon>& polys, const Ring& curve, const std::string& name)
{
    int side = -1;
    for (const auto& p : polys) {
        for (const auto& q : p.outer) {
            int s = inside_ring(q, curve) ? 1 : 0;
            if (side >= 0 && s != side) {
                throw Error(Errc::geometry, "region '" + name + "' lies on both sides of the curve");
            }
            side = s;
        }
    }
    return side;
}

} // namespace

PlaneScene k5m_separator(const PlaneScene& s, const std::string& b1, const std::string& b2, const Ring& curve_in)
{
    for (const auto& name : {b1, b2}) {
        if (!s.regions.count(name)) {
            throw Error(Errc::invalid_argument, "unknown region '" + name + "'");
        }
    }
    if (b1 == b2) {
        throw Error(Errc::invalid_argument, "separated regions must differ");
    }
    for (int i = 1; i <= 5; ++i) {
        if (s.regions.count(idx("a", i))) {
            throw Error(Errc::invalid_argument, "scene already has a region named " + idx("a", i));
        }
    }

    // Validate the curve as a simple ring, drop straight-through vertices and
    // orient it counter-clockwise.
    {
        PlaneScene probe;
        probe.regions["curve"].push_back(Polygon{curve_in, {}});
        Arrangement::build(probe);
    }
    Ring curve;
    std::size_t m = curve_in.size();
    for (std::size_t i = 0; i < m; ++i) {
        const Point& prev = curve_in[(i + m - 1) % m];
        const Point& next = curve_in[(i + 1) % m];
        if (sgn(orient(prev, curve_in[i], next)) != 0) {
            curve.push_back(curve_in[i]);
        }
    }
    std::size_t n = curve.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = curve[i];
        const Point& b = curve[(i + 1) % n];
        if (a.x != b.x && a.y != b.y) {
            throw Error(Errc::geometry, "curve is not rectilinear");
        }
    }
    if (ring_area2(curve) < 0) {
        std::reverse(curve.begin(), curve.end());
    }

    // Separation and clearance.
    const auto& p1 = s.regions.at(b1);
    const auto& p2 = s.regions.at(b2);
    std::optional<Rational> clearance;
    for (const auto* polys : {&p1, &p2}) {
        for (const auto& [c, d] : region_segments(*polys)) {
            for (std::size_t i = 0; i < n; ++i) {
                Rational dist = linf_segments(curve[i], curve[(i + 1) % n], c, d);
                if (dist == 0) {
                    throw Error(Errc::geometry, "curve meets region '" + std::string(polys == &p1 ? b1 : b2) + "'");
                }
                if (!clearance || dist < *clearance) {
                    clearance = dist;
                }
            }
        }
    }
    int side1 = side_of(p1, curve, b1);
    int side2 = side_of(p2, curve, b2);
    if (side1 >= 0 && side1 == side2) {
        throw Error(Errc::geometry, "curve does not separate '" + b1 + "' from '" + b2 + "'");
    }
    bool b1_inside = side1 == 1 || side2 == 0;

    Rational w;
    {
        std::optional<Rational> self;
        Rational min_edge = -1;
        for (std::size_t i = 0; i < n; ++i) {
            Rational len = abs_q(curve[(i + 1) % n].x - curve[i].x) + abs_q(curve[(i + 1) % n].y - curve[i].y);
            if (min_edge < 0 || len < min_edge) {
                min_edge = len;
            }
            for (std::size_t j = i + 2; j < n; ++j) {
                if (i == 0 && j == n - 1) {
                    continue;
                }
                Rational d = linf_segments(curve[i], curve[(i + 1) % n], curve[j], curve[(j + 1) % n]);
                if (!self || d < *self) {
                    self = d;
                }
            }
        }
        // Keep the offset rings simple: well below half the gap between
        // non-adjacent edges and half the shortest edge.
        w = min_edge / 4;
        if (self) {
            w = std::min(w, Rational(*self / 4));
        }
        if (clearance) {
            w = std::min(w, Rational(*clearance / 2));
        }
    }

    // Offset rings. For a counter-clockwise rectilinear ring the outward
    // normal of edge i is its direction turned clockwise.
    std::vector<Point> normal(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = curve[i];
        const Point& b = curve[(i + 1) % n];
        normal[i] = Point{sgn(b.y - a.y), -sgn(b.x - a.x)};
    }
    auto offset = [&](std::size_t i, int dir) {
        const Point& np = normal[(i + n - 1) % n];
        const Point& nn = normal[i];
        return Point{curve[i].x + dir * w * (np.x + nn.x), curve[i].y + dir * w * (np.y + nn.y)};
    };
    auto cut = [&](std::size_t i, int dir) {
        const Point& a = curve[i];
        const Point& b = curve[(i + 1) % n];
        return Point{(a.x + b.x) / 2 + dir * w * normal[i].x, (a.y + b.y) / 2 + dir * w * normal[i].y};
    };
    Ring outer_ring, inner_ring;
    for (std::size_t i = 0; i < n; ++i) {
        outer_ring.push_back(offset(i, 1));
        inner_ring.push_back(offset(i, -1));
    }
    // Pieces of the annulus between cuts on edges 0, 1 and 2.
    auto piece = [&](std::size_t from, std::size_t to) {
        Ring ring{cut(from, 1)};
        std::size_t stop = to == 0 ? n : to;
        for (std::size_t i = from + 1; i <= stop; ++i) {
            ring.push_back(offset(i % n, 1));
        }
        ring.push_back(cut(to, 1));
        ring.push_back(cut(to, -1));
        for (std::size_t i = stop; i > from; --i) {
            ring.push_back(offset(i % n, -1));
        }
        ring.push_back(cut(from, -1));
        return Polygon{ring, {}};
    };

    // The outer side is bounded by the universe box, or by a box with margin
    // one around everything otherwise.
    Box box;
    if (s.universe) {
        box = *s.universe;
        for (const auto& q : outer_ring) {
            if (!(box.lo.x < q.x && q.x < box.hi.x && box.lo.y < q.y && q.y < box.hi.y)) {
                throw Error(Errc::geometry, "thickened curve leaves the universe box");
            }
        }
    } else {
        box = Box{outer_ring[0], outer_ring[0]};
        auto grow = [&](const Point& q) {
            box.lo.x = std::min(box.lo.x, q.x);
            box.lo.y = std::min(box.lo.y, q.y);
            box.hi.x = std::max(box.hi.x, q.x);
            box.hi.y = std::max(box.hi.y, q.y);
        };
        for (const auto& q : outer_ring) {
            grow(q);
        }
        for (const auto& [name, polys] : s.regions) {
            for (const auto& p : polys) {
                for (const auto& q : p.outer) {
                    grow(q);
                }
            }
        }
        box.lo.x -= 1;
        box.lo.y -= 1;
        box.hi.x += 1;
        box.hi.y += 1;
    }
    Polygon outside = rect(box.lo.x, box.lo.y, box.hi.x, box.hi.y);
    Ring hole = outer_ring;
    std::reverse(hole.begin(), hole.end());
    outside.holes.push_back(hole);
    Polygon inside{inner_ring, {}};

    PlaneScene out = s;
    out.regions["a1"] = {b1_inside ? inside : outside};
    out.regions["a2"] = {b1_inside ? outside : inside};
    out.regions["a3"] = {piece(0, 1)};
    out.regions["a4"] = {piece(1, 2)};
    out.regions["a5"] = {piece(2, 0)};
    return out;
}

} // namespace topocon
