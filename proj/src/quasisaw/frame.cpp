#include "topocon/quasisaw.hpp"

#include "topocon/errors.hpp"

#include <algorithm>
#include <numeric>

namespace topocon {

namespace {

void require_unique(std::vector<std::string>& ids, const char* what)
{
    std::sort(ids.begin(), ids.end());
    auto dup = std::adjacent_find(ids.begin(), ids.end());
    if (dup != ids.end()) {
        throw Error(Errc::invalid_argument, std::string("duplicate ") + what + " id '" + *dup + "'");
    }
}

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x)
    {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

private:
    std::vector<std::size_t> parent_;
};

// Connectivity of the depth-0 points in `on`, linked through the depth-1
// points selected by `use`. Depth-1 points never add components of their
// own since each one in the set touches the set.
bool linked(const QuasiSaw& frame, const Bits& on, const std::vector<bool>& use)
{
    if (on.none()) {
        return true;
    }
    UnionFind uf(frame.size0());
    for (std::size_t z = 0; z < frame.size1(); ++z) {
        if (!use[z]) {
            continue;
        }
        Bits hit = frame.succ(z) & on;
        std::size_t first = hit.find_first();
        for (std::size_t x = hit.find_next(first); x != Bits::npos; x = hit.find_next(x)) {
            uf.unite(first, x);
        }
    }
    std::size_t root = uf.find(on.find_first());
    for (std::size_t x = on.find_first(); x != Bits::npos; x = on.find_next(x)) {
        if (uf.find(x) != root) {
            return false;
        }
    }
    return true;
}

void same_frame(const RcSet& a, const RcSet& b)
{
    if (a.frame() != b.frame() && !(*a.frame() == *b.frame())) {
        throw Error(Errc::frame_mismatch, "regions live on different frames");
    }
}

} // namespace

QuasiSaw::QuasiSaw(std::vector<std::string> w0, std::vector<Point1> w1)
{
    if (w0.empty()) {
        throw Error(Errc::invalid_argument, "a quasi-saw needs at least one depth-0 point");
    }
    require_unique(w0, "depth-0");
    std::vector<std::string> all = w0;
    for (const auto& z : w1) {
        all.push_back(z.id);
    }
    require_unique(all, "point");
    w0_ = std::move(w0);
    for (std::size_t i = 0; i < w0_.size(); ++i) {
        index0_.emplace(w0_[i], i);
    }
    std::sort(w1.begin(), w1.end(), [](const Point1& a, const Point1& b) { return a.id < b.id; });
    for (auto& z : w1) {
        if (z.id.empty()) {
            throw Error(Errc::invalid_argument, "empty point id");
        }
        if (z.succ.empty()) {
            throw Error(Errc::invalid_argument, "depth-1 point '" + z.id + "' has no successors");
        }
        Bits mask(w0_.size());
        for (const auto& x : z.succ) {
            auto it = index0_.find(x);
            if (it == index0_.end()) {
                throw Error(Errc::invalid_argument, "unknown successor '" + x + "' of '" + z.id + "'");
            }
            if (mask.test(it->second)) {
                throw Error(Errc::invalid_argument, "duplicate successor '" + x + "' of '" + z.id + "'");
            }
            mask.set(it->second);
        }
        w1_.push_back(z.id);
        succ_.push_back(std::move(mask));
    }
    for (const auto& id : w0_) {
        if (id.empty()) {
            throw Error(Errc::invalid_argument, "empty point id");
        }
    }
}

std::size_t QuasiSaw::index0(const std::string& id) const
{
    auto it = index0_.find(id);
    if (it == index0_.end()) {
        throw Error(Errc::invalid_argument, "unknown depth-0 point '" + id + "'");
    }
    return it->second;
}

bool operator==(const QuasiSaw& a, const QuasiSaw& b)
{
    return a.w0_ == b.w0_ && a.w1_ == b.w1_ && a.succ_ == b.succ_;
}

std::vector<std::string> point_ids(const QuasiSaw& frame, const Points& p)
{
    std::vector<std::string> out;
    for (std::size_t i = p.depth0.find_first(); i != Bits::npos; i = p.depth0.find_next(i)) {
        out.push_back(frame.w0()[i]);
    }
    for (std::size_t i = p.depth1.find_first(); i != Bits::npos; i = p.depth1.find_next(i)) {
        out.push_back(frame.w1()[i]);
    }
    return out;
}

RcSet::RcSet(FramePtr frame, Bits trace) : frame_(std::move(frame)), trace_(std::move(trace))
{
    if (!frame_) {
        throw Error(Errc::invalid_argument, "region without a frame");
    }
    if (trace_.size() != frame_->size0()) {
        throw Error(Errc::frame_mismatch, "trace size does not match the frame");
    }
}

bool operator==(const RcSet& a, const RcSet& b)
{
    same_frame(a, b);
    return a.trace_ == b.trace_;
}

RcSet rc_expand(const FramePtr& frame, const std::vector<std::string>& trace_ids)
{
    Bits trace(frame->size0());
    for (const auto& id : trace_ids) {
        trace.set(frame->index0(id));
    }
    return RcSet(frame, std::move(trace));
}

RcSet rc_zero(const FramePtr& frame) { return RcSet(frame, Bits(frame->size0())); }

RcSet rc_one(const FramePtr& frame)
{
    Bits all(frame->size0());
    all.set();
    return RcSet(frame, std::move(all));
}

Points full_points(const RcSet& s)
{
    const QuasiSaw& f = *s.frame();
    Points p{s.trace(), Bits(f.size1())};
    for (std::size_t z = 0; z < f.size1(); ++z) {
        p.depth1[z] = f.succ(z).intersects(s.trace());
    }
    return p;
}

Points interior_points(const RcSet& s)
{
    const QuasiSaw& f = *s.frame();
    Points p{s.trace(), Bits(f.size1())};
    for (std::size_t z = 0; z < f.size1(); ++z) {
        p.depth1[z] = f.succ(z).is_subset_of(s.trace());
    }
    return p;
}

RcSet rc_sum(const RcSet& a, const RcSet& b)
{
    same_frame(a, b);
    return RcSet(a.frame(), a.trace() | b.trace());
}

RcSet rc_product(const RcSet& a, const RcSet& b)
{
    same_frame(a, b);
    return RcSet(a.frame(), a.trace() & b.trace());
}

RcSet rc_complement(const RcSet& a) { return RcSet(a.frame(), ~a.trace()); }

bool is_connected(const RcSet& s)
{
    const QuasiSaw& f = *s.frame();
    std::vector<bool> use(f.size1());
    for (std::size_t z = 0; z < f.size1(); ++z) {
        use[z] = f.succ(z).intersects(s.trace());
    }
    return linked(f, s.trace(), use);
}

bool is_interior_connected(const RcSet& s)
{
    const QuasiSaw& f = *s.frame();
    std::vector<bool> use(f.size1());
    for (std::size_t z = 0; z < f.size1(); ++z) {
        use[z] = f.succ(z).is_subset_of(s.trace());
    }
    return linked(f, s.trace(), use);
}

bool contact(const RcSet& a, const RcSet& b)
{
    same_frame(a, b);
    if (a.trace().intersects(b.trace())) {
        return true;
    }
    const QuasiSaw& f = *a.frame();
    for (std::size_t z = 0; z < f.size1(); ++z) {
        if (f.succ(z).intersects(a.trace()) && f.succ(z).intersects(b.trace())) {
            return true;
        }
    }
    return false;
}

std::vector<Points> components(const RcSet& s)
{
    const QuasiSaw& f = *s.frame();
    const Bits& on = s.trace();
    UnionFind uf(f.size0());
    for (std::size_t z = 0; z < f.size1(); ++z) {
        Bits hit = f.succ(z) & on;
        std::size_t first = hit.find_first();
        if (first == Bits::npos) {
            continue;
        }
        for (std::size_t x = hit.find_next(first); x != Bits::npos; x = hit.find_next(x)) {
            uf.unite(first, x);
        }
    }
    std::vector<Points> out;
    std::map<std::size_t, std::size_t> slot;
    for (std::size_t x = on.find_first(); x != Bits::npos; x = on.find_next(x)) {
        std::size_t root = uf.find(x);
        auto [it, fresh] = slot.emplace(root, out.size());
        if (fresh) {
            out.push_back({Bits(f.size0()), Bits(f.size1())});
        }
        out[it->second].depth0.set(x);
    }
    for (std::size_t z = 0; z < f.size1(); ++z) {
        std::size_t x = (f.succ(z) & on).find_first();
        if (x != Bits::npos) {
            out[slot.at(uf.find(x))].depth1.set(z);
        }
    }
    return out;
}

RcSet eval_term(const QsModel& m, const Term& t)
{
    switch (t.kind()) {
    case Term::Kind::variable: {
        auto it = m.valuation.find(t.name());
        if (it == m.valuation.end()) {
            throw Error(Errc::unbound_variable, "unbound variable '" + t.name() + "'");
        }
        return it->second;
    }
    case Term::Kind::zero:
        return rc_zero(m.frame);
    case Term::Kind::one:
        return rc_one(m.frame);
    case Term::Kind::sum:
        return rc_sum(eval_term(m, t.lhs()), eval_term(m, t.rhs()));
    case Term::Kind::product:
        return rc_product(eval_term(m, t.lhs()), eval_term(m, t.rhs()));
    case Term::Kind::complement:
        return rc_complement(eval_term(m, t.lhs()));
    }
    throw Error(Errc::invalid_argument, "bad term");
}

namespace {

bool holds(const QsModel& m, const Formula& f)
{
    switch (f.kind()) {
    case Formula::Kind::eq:
        return eval_term(m, f.term_lhs()) == eval_term(m, f.term_rhs());
    case Formula::Kind::contact:
        return contact(eval_term(m, f.term_lhs()), eval_term(m, f.term_rhs()));
    case Formula::Kind::conn:
        return is_connected(eval_term(m, f.term_lhs()));
    case Formula::Kind::int_conn:
        return is_interior_connected(eval_term(m, f.term_lhs()));
    case Formula::Kind::neg:
        return !holds(m, f.lhs());
    case Formula::Kind::conj:
        return holds(m, f.lhs()) && holds(m, f.rhs());
    case Formula::Kind::disj:
        return holds(m, f.lhs()) || holds(m, f.rhs());
    }
    return false;
}

} // namespace

bool check(const QsModel& m, const Formula& f)
{
    // Resolve every variable up front so the error does not depend on
    // short-circuiting.
    for (const auto& name : variables(f)) {
        if (m.valuation.count(name) == 0) {
            throw Error(Errc::unbound_variable, "unbound variable '" + name + "'");
        }
    }
    return holds(m, f);
}

std::string_view to_string(FrameClass cls)
{
    switch (cls) {
    case FrameClass::all: return "all";
    case FrameClass::con: return "con";
    case FrameClass::con2: return "con2";
    }
    return "?";
}

std::set<FrameClass> classify_frame(const QuasiSaw& frame)
{
    std::set<FrameClass> out{FrameClass::all};
    Bits all(frame.size0());
    all.set();
    if (!linked(frame, all, std::vector<bool>(frame.size1(), true))) {
        return out;
    }
    out.insert(FrameClass::con);
    bool two = true;
    for (std::size_t z = 0; z < frame.size1(); ++z) {
        two = two && frame.succ(z).count() == 2;
    }
    if (two) {
        out.insert(FrameClass::con2);
    }
    return out;
}

} // namespace topocon
