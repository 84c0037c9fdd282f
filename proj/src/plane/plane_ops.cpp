#include "topocon/errors.hpp"
#include "topocon/plane.hpp"

#include <algorithm>
#include <numeric>

namespace topocon {

namespace {

void same_arrangement(const FaceSet& a, const FaceSet& b)
{
    if (a.arrangement() != b.arrangement()) {
        throw Error(Errc::frame_mismatch, "face sets from different arrangements");
    }
}

// Union-find over faces, restricted to callers' choice of links.
struct Components {
    std::vector<std::size_t> parent;

    explicit Components(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x)
    {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

// Links faces of s through edges and vertices. A vertex links when some
// (closure) or all (interior) of its faces are in s.
Components link(const FaceSet& s, bool interior)
{
    const Arrangement& arr = *s.arrangement();
    const Bits& in = s.faces();
    Components uf(arr.face_count());
    for (const auto& e : arr.edges()) {
        if (e.in_space && e.left != e.right && in[e.left] && in[e.right]) {
            uf.unite(e.left, e.right);
        }
    }
    for (const auto& v : arr.vertices()) {
        if (!v.in_space) {
            continue;
        }
        bool all = std::all_of(v.faces.begin(), v.faces.end(), [&](std::size_t f) { return in[f]; });
        if (interior && !all) {
            continue;
        }
        std::size_t first = Arrangement::none;
        for (std::size_t f : v.faces) {
            if (!in[f]) {
                continue;
            }
            if (first == Arrangement::none) {
                first = f;
            } else {
                uf.unite(first, f);
            }
        }
    }
    return uf;
}

bool single_component(const FaceSet& s, bool interior)
{
    const Bits& in = s.faces();
    std::size_t first = in.find_first();
    if (first == Bits::npos) {
        return true;
    }
    Components uf = link(s, interior);
    std::size_t root = uf.find(first);
    for (std::size_t f = in.find_next(first); f != Bits::npos; f = in.find_next(f)) {
        if (uf.find(f) != root) {
            return false;
        }
    }
    return true;
}

bool holds(const ArrangementPtr& arr, const Formula& f)
{
    switch (f.kind()) {
    case Formula::Kind::eq:
        return plane_eval(arr, f.term_lhs()) == plane_eval(arr, f.term_rhs());
    case Formula::Kind::contact:
        return fs_contact(plane_eval(arr, f.term_lhs()), plane_eval(arr, f.term_rhs()));
    case Formula::Kind::conn:
        return fs_connected(plane_eval(arr, f.term_lhs()));
    case Formula::Kind::int_conn:
        return fs_interior_connected(plane_eval(arr, f.term_lhs()));
    case Formula::Kind::neg:
        return !holds(arr, f.lhs());
    case Formula::Kind::conj:
        return holds(arr, f.lhs()) && holds(arr, f.rhs());
    case Formula::Kind::disj:
        return holds(arr, f.lhs()) || holds(arr, f.rhs());
    }
    throw Error(Errc::invalid_argument, "bad formula");
}

std::string padded(char prefix, std::size_t i, std::size_t count)
{
    std::size_t width = std::to_string(count == 0 ? 0 : count - 1).size();
    std::string digits = std::to_string(i);
    return prefix + std::string(width - digits.size(), '0') + digits;
}

} // namespace

FaceSet::FaceSet(ArrangementPtr arr, Bits faces) : arr_(std::move(arr)), faces_(std::move(faces))
{
    if (!arr_) {
        throw Error(Errc::invalid_argument, "face set without an arrangement");
    }
    if (faces_.size() != arr_->face_count()) {
        throw Error(Errc::frame_mismatch, "face set size does not match the arrangement");
    }
}

bool operator==(const FaceSet& a, const FaceSet& b)
{
    same_arrangement(a, b);
    return a.faces_ == b.faces_;
}

FaceSet fs_region(const ArrangementPtr& arr, const std::string& name) { return FaceSet(arr, arr->region(name)); }

FaceSet fs_empty(const ArrangementPtr& arr) { return FaceSet(arr, Bits(arr->face_count())); }

FaceSet fs_all(const ArrangementPtr& arr)
{
    Bits all(arr->face_count());
    all.set();
    return FaceSet(arr, std::move(all));
}

FaceSet fs_sum(const FaceSet& a, const FaceSet& b)
{
    same_arrangement(a, b);
    return FaceSet(a.arrangement(), a.faces() | b.faces());
}

FaceSet fs_product(const FaceSet& a, const FaceSet& b)
{
    same_arrangement(a, b);
    return FaceSet(a.arrangement(), a.faces() & b.faces());
}

FaceSet fs_complement(const FaceSet& a) { return FaceSet(a.arrangement(), ~a.faces()); }

bool fs_connected(const FaceSet& a) { return single_component(a, false); }

bool fs_interior_connected(const FaceSet& a) { return single_component(a, true); }

bool fs_contact(const FaceSet& a, const FaceSet& b)
{
    same_arrangement(a, b);
    const Bits& x = a.faces();
    const Bits& y = b.faces();
    if (x.intersects(y)) {
        return true;
    }
    const Arrangement& arr = *a.arrangement();
    for (const auto& e : arr.edges()) {
        if (e.in_space && ((x[e.left] && y[e.right]) || (y[e.left] && x[e.right]))) {
            return true;
        }
    }
    for (const auto& v : arr.vertices()) {
        bool hx = false;
        bool hy = false;
        for (std::size_t f : v.faces) {
            hx = hx || x[f];
            hy = hy || y[f];
        }
        if (hx && hy) {
            return true;
        }
    }
    return false;
}

std::vector<FaceSet> fs_components(const FaceSet& a)
{
    const Bits& in = a.faces();
    Components uf = link(a, false);
    std::vector<std::size_t> root_order;
    std::map<std::size_t, Bits> by_root;
    for (std::size_t f = in.find_first(); f != Bits::npos; f = in.find_next(f)) {
        std::size_t r = uf.find(f);
        auto [it, fresh] = by_root.try_emplace(r, Bits(in.size()));
        if (fresh) {
            root_order.push_back(r);
        }
        it->second.set(f);
    }
    std::vector<FaceSet> out;
    for (std::size_t r : root_order) {
        out.emplace_back(a.arrangement(), by_root.at(r));
    }
    return out;
}

FaceSet plane_eval(const ArrangementPtr& arr, const Term& t)
{
    switch (t.kind()) {
    case Term::Kind::variable:
        return fs_region(arr, t.name());
    case Term::Kind::zero:
        return fs_empty(arr);
    case Term::Kind::one:
        return fs_all(arr);
    case Term::Kind::sum:
        return fs_sum(plane_eval(arr, t.lhs()), plane_eval(arr, t.rhs()));
    case Term::Kind::product:
        return fs_product(plane_eval(arr, t.lhs()), plane_eval(arr, t.rhs()));
    case Term::Kind::complement:
        return fs_complement(plane_eval(arr, t.lhs()));
    }
    throw Error(Errc::invalid_argument, "bad term");
}

bool plane_check(const ArrangementPtr& arr, const Formula& f)
{
    for (const auto& v : variables(f)) {
        if (!arr->has_region(v)) {
            throw Error(Errc::unbound_variable, "unbound variable '" + v + "'");
        }
    }
    return holds(arr, f);
}

bool plane_check(const PlaneScene& s, const Formula& f) { return plane_check(Arrangement::build(s), f); }

std::string_view to_string(Rcc8 r)
{
    switch (r) {
    case Rcc8::DC: return "DC";
    case Rcc8::EC: return "EC";
    case Rcc8::PO: return "PO";
    case Rcc8::EQ: return "EQ";
    case Rcc8::TPP: return "TPP";
    case Rcc8::NTPP: return "NTPP";
    case Rcc8::TPPi: return "TPPi";
    case Rcc8::NTPPi: return "NTPPi";
    }
    return "?";
}

Rcc8 rcc8(const ArrangementPtr& arr, const std::string& a, const std::string& b)
{
    FaceSet x = fs_region(arr, a);
    FaceSet y = fs_region(arr, b);
    if (x.empty() || y.empty()) {
        throw Error(Errc::invalid_argument, "rcc8 needs nonempty regions, '" + (x.empty() ? a : b) + "' is empty");
    }
    bool c = fs_contact(x, y);
    bool overlap = !fs_product(x, y).empty();
    bool p_xy = fs_product(x, fs_complement(y)).empty();
    bool p_yx = fs_product(y, fs_complement(x)).empty();
    bool c_x_out = fs_contact(x, fs_complement(y));
    bool c_y_out = fs_contact(y, fs_complement(x));

    // Each relation by its defining formula; exactly one must hold.
    std::vector<std::pair<Rcc8, bool>> table{
        {Rcc8::DC, !c},
        {Rcc8::EC, c && !overlap},
        {Rcc8::PO, overlap && !p_xy && !p_yx},
        {Rcc8::EQ, p_xy && p_yx},
        {Rcc8::TPP, p_xy && !p_yx && c_x_out},
        {Rcc8::NTPP, p_xy && !p_yx && !c_x_out},
        {Rcc8::TPPi, p_yx && !p_xy && c_y_out},
        {Rcc8::NTPPi, p_yx && !p_xy && !c_y_out},
    };
    std::size_t hits = 0;
    Rcc8 found = Rcc8::DC;
    for (const auto& [rel, ok] : table) {
        if (ok) {
            ++hits;
            found = rel;
        }
    }
    if (hits != 1) {
        throw Error(Errc::invalid_argument, "rcc8: relations are not exclusive for '" + a + "', '" + b + "'");
    }
    return found;
}

Rcc8 rcc8(const PlaneScene& s, const std::string& a, const std::string& b)
{
    return rcc8(Arrangement::build(s), a, b);
}

ComponentGraph component_graph(const ArrangementPtr& arr, const std::vector<std::string>& vars)
{
    if (vars.empty()) {
        throw Error(Errc::invalid_argument, "component graph needs at least one region");
    }
    std::vector<Term> terms;
    std::vector<Formula> parts;
    for (const auto& v : vars) {
        terms.push_back(Term::var(v));
    }
    parts.push_back(eq(sum_of(terms), Term::one()));
    for (std::size_t i = 0; i < terms.size(); ++i) {
        for (std::size_t j = i + 1; j < terms.size(); ++j) {
            parts.push_back(eq(terms[i] * terms[j], Term::zero()));
        }
    }
    if (!plane_check(arr, conj_of(parts))) {
        throw Error(Errc::invalid_argument, "regions do not form a partition");
    }
    ComponentGraph g;
    for (const auto& v : vars) {
        for (auto& part : fs_components(fs_region(arr, v))) {
            g.nodes.push_back({v, std::move(part)});
        }
    }
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        for (std::size_t j = i + 1; j < g.nodes.size(); ++j) {
            if (g.nodes[i].region != g.nodes[j].region && fs_contact(g.nodes[i].faces, g.nodes[j].faces)) {
                g.edges.emplace_back(i, j);
            }
        }
    }
    return g;
}

bool is_tree(const ComponentGraph& g)
{
    std::size_t n = g.nodes.size();
    if (n == 0 || g.edges.size() != n - 1) {
        return false;
    }
    Components uf(n);
    for (const auto& [a, b] : g.edges) {
        if (uf.find(a) == uf.find(b)) {
            return false;
        }
        uf.unite(a, b);
    }
    return true;
}

QsModel induced_quasisaw(const ArrangementPtr& arr)
{
    std::size_t nf = arr->face_count();
    std::vector<std::string> w0;
    for (std::size_t f = 0; f < nf; ++f) {
        w0.push_back(padded('f', f, nf));
    }
    std::vector<QuasiSaw::Point1> w1;
    const auto& edges = arr->edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
        if (edges[e].in_space && edges[e].left != edges[e].right) {
            w1.push_back({padded('e', e, edges.size()), {w0[edges[e].left], w0[edges[e].right]}});
        }
    }
    const auto& verts = arr->vertices();
    for (std::size_t v = 0; v < verts.size(); ++v) {
        if (!verts[v].in_space) {
            continue;
        }
        QuasiSaw::Point1 p{padded('v', v, verts.size()), {}};
        for (std::size_t f : verts[v].faces) {
            p.succ.push_back(w0[f]);
        }
        w1.push_back(std::move(p));
    }
    QsModel m;
    m.frame = std::make_shared<const QuasiSaw>(w0, std::move(w1));
    for (const auto& [name, polys] : arr->scene().regions) {
        (void)polys;
        m.valuation.emplace(name, RcSet(m.frame, arr->region(name)));
    }
    return m;
}

} // namespace topocon
