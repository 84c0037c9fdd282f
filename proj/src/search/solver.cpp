#include "topocon/search.hpp"

#include "topocon/errors.hpp"

#include <algorithm>
#include <bit>
#include <future>
#include <map>
#include <stdexcept>

namespace topocon {

namespace {

using Mask = std::uint64_t;

enum class Tri : std::uint8_t { f, t, u };

Tri tri_not(Tri a) { return a == Tri::u ? Tri::u : (a == Tri::t ? Tri::f : Tri::t); }

Tri tri_and(Tri a, Tri b)
{
    if (a == Tri::f || b == Tri::f) {
        return Tri::f;
    }
    return a == Tri::t && b == Tri::t ? Tri::t : Tri::u;
}

Tri tri_or(Tri a, Tri b) { return tri_not(tri_and(tri_not(a), tri_not(b))); }

Mask low_bits(std::size_t n) { return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

// ---------------------------------------------------------------------------
// Formula compiled to flat programs over w0 masks.

struct TermOp {
    Term::Kind kind;
    int a = -1;
    int b = -1;
    int var = -1;
};

struct AtomOp {
    AtomKind kind;
    int a = -1;
    int b = -1;
};

struct NodeOp {
    Formula::Kind kind;
    int a = -1; // atom index for atoms, child otherwise
    int b = -1;
};

class Compiled {
public:
    explicit Compiled(const Formula& f)
    {
        auto vs = variables(f);
        vars.assign(vs.begin(), vs.end());
        root = node(f);
    }

    std::vector<std::string> vars;
    std::vector<TermOp> terms;
    std::vector<AtomOp> atoms;
    std::vector<NodeOp> nodes;
    int root = -1;

private:
    std::map<Term, int> term_ids_;
    std::map<Formula, int> atom_ids_;

    int term(const Term& t)
    {
        if (auto it = term_ids_.find(t); it != term_ids_.end()) {
            return it->second;
        }
        TermOp op{t.kind()};
        switch (t.kind()) {
        case Term::Kind::variable:
            op.var = static_cast<int>(std::lower_bound(vars.begin(), vars.end(), t.name()) - vars.begin());
            break;
        case Term::Kind::complement:
            op.a = term(t.lhs());
            break;
        case Term::Kind::sum:
        case Term::Kind::product:
            op.a = term(t.lhs());
            op.b = term(t.rhs());
            break;
        default:
            break;
        }
        terms.push_back(op);
        int id = static_cast<int>(terms.size()) - 1;
        term_ids_.emplace(t, id);
        return id;
    }

    int atom(const Formula& f)
    {
        if (auto it = atom_ids_.find(f); it != atom_ids_.end()) {
            return it->second;
        }
        AtomOp op{f.atom_kind(), term(f.term_lhs())};
        if (f.kind() == Formula::Kind::eq || f.kind() == Formula::Kind::contact) {
            op.b = term(f.term_rhs());
        }
        atoms.push_back(op);
        int id = static_cast<int>(atoms.size()) - 1;
        atom_ids_.emplace(f, id);
        return id;
    }

    int node(const Formula& f)
    {
        NodeOp op{f.kind()};
        if (f.is_atom()) {
            op.a = atom(f);
        } else if (f.kind() == Formula::Kind::neg) {
            op.a = node(f.lhs());
        } else {
            op.a = node(f.lhs());
            op.b = node(f.rhs());
        }
        nodes.push_back(op);
        return static_cast<int>(nodes.size()) - 1;
    }
};

// ---------------------------------------------------------------------------
// Atom semantics over a list of successor masks.

bool contact_in(Mask a, Mask b, const std::vector<Mask>& zs)
{
    if (a & b) {
        return true;
    }
    for (Mask s : zs) {
        if ((s & a) && (s & b)) {
            return true;
        }
    }
    return false;
}

bool linked_in(Mask on, const std::vector<Mask>& zs, bool interior)
{
    if (on == 0) {
        return true;
    }
    Mask comp = on & (~on + 1);
    bool grew = true;
    while (grew && comp != on) {
        grew = false;
        for (Mask s : zs) {
            if (interior && (s & ~on)) {
                continue;
            }
            Mask add = s & on;
            if ((add & comp) && (add & ~comp)) {
                comp |= add;
                grew = true;
            }
        }
    }
    return comp == on;
}

// ---------------------------------------------------------------------------

struct Level {
    std::size_t w0;
    std::size_t w1;
    std::vector<Mask> candidates;
};

struct ChunkResult {
    bool found = false;
    std::vector<Mask> types;
    std::vector<Mask> zs;
    std::uint64_t work = 0;
    bool capped = false;
};

class Searcher {
public:
    Searcher(const Compiled& c, FrameClass cls, std::uint64_t cap) : c_(c), cls_(cls), cap_(cap) {}

    ChunkResult run(const Level& level, const std::vector<std::vector<Mask>>& seqs, std::size_t from,
                    std::size_t to)
    {
        level_ = &level;
        ChunkResult out;
        for (std::size_t k = from; k < to; ++k) {
            const auto& types = seqs[k];
            if (++work_ > cap_) {
                out.capped = true;
                break;
            }
            if (examine(types)) {
                out.found = true;
                out.types = types;
                out.zs = found_;
                break;
            }
            if (capped_) {
                out.capped = true;
                break;
            }
        }
        out.work = work_;
        return out;
    }

private:
    const Compiled& c_;
    FrameClass cls_;
    std::uint64_t cap_;
    std::uint64_t work_ = 0;
    bool capped_ = false;
    const Level* level_ = nullptr;

    std::vector<Mask> term_val_;
    std::vector<Tri> fixed_;   // eq atoms, decided by the types alone
    std::vector<Mask> chosen_;
    std::vector<Mask> upper_;
    std::vector<Mask> found_;

    bool examine(const std::vector<Mask>& types)
    {
        prepare(types);
        chosen_.clear();
        return dfs(0);
    }

public:
    /// Evaluates terms and equations for one type sequence.
    void prepare(const std::vector<Mask>& types)
    {
        std::size_t n = types.size();
        term_val_.assign(c_.terms.size(), 0);
        Mask all = low_bits(n);
        for (std::size_t i = 0; i < c_.terms.size(); ++i) {
            const TermOp& op = c_.terms[i];
            Mask v = 0;
            switch (op.kind) {
            case Term::Kind::variable:
                for (std::size_t p = 0; p < n; ++p) {
                    if (types[p] >> op.var & 1) {
                        v |= Mask{1} << p;
                    }
                }
                break;
            case Term::Kind::zero: v = 0; break;
            case Term::Kind::one: v = all; break;
            case Term::Kind::sum: v = term_val_[op.a] | term_val_[op.b]; break;
            case Term::Kind::product: v = term_val_[op.a] & term_val_[op.b]; break;
            case Term::Kind::complement: v = all & ~term_val_[op.a]; break;
            }
            term_val_[i] = v;
        }
        fixed_.assign(c_.atoms.size(), Tri::u);
        for (std::size_t i = 0; i < c_.atoms.size(); ++i) {
            if (c_.atoms[i].kind == AtomKind::eq) {
                fixed_[i] = term_val_[c_.atoms[i].a] == term_val_[c_.atoms[i].b] ? Tri::t : Tri::f;
            }
        }
    }

    /// After prepare: false when the equations alone refute the formula.
    bool plausible() const
    {
        std::vector<Tri> val(c_.nodes.size());
        for (std::size_t i = 0; i < c_.nodes.size(); ++i) {
            const NodeOp& op = c_.nodes[i];
            switch (op.kind) {
            case Formula::Kind::neg: val[i] = tri_not(val[op.a]); break;
            case Formula::Kind::conj: val[i] = tri_and(val[op.a], val[op.b]); break;
            case Formula::Kind::disj: val[i] = tri_or(val[op.a], val[op.b]); break;
            default: val[i] = fixed_[op.a]; break;
            }
        }
        return val[c_.root] != Tri::f;
    }

private:

    bool atom_at(std::size_t i, const std::vector<Mask>& zs) const
    {
        const AtomOp& op = c_.atoms[i];
        switch (op.kind) {
        case AtomKind::contact: return contact_in(term_val_[op.a], term_val_[op.b], zs);
        case AtomKind::conn: return linked_in(term_val_[op.a], zs, false);
        case AtomKind::int_conn: return linked_in(term_val_[op.a], zs, true);
        case AtomKind::eq: break;
        }
        return false;
    }

    // Three-valued value of the formula (and the frame condition) over all
    // depth-1 sets between chosen_ and upper_.
    Tri bounds_value(bool leaf)
    {
        std::vector<Tri> atom_val(c_.atoms.size());
        for (std::size_t i = 0; i < c_.atoms.size(); ++i) {
            if (c_.atoms[i].kind == AtomKind::eq) {
                atom_val[i] = fixed_[i];
                continue;
            }
            bool lo = atom_at(i, chosen_);
            bool hi = leaf ? lo : atom_at(i, upper_);
            atom_val[i] = lo == hi ? (lo ? Tri::t : Tri::f) : Tri::u;
        }
        std::vector<Tri> val(c_.nodes.size());
        for (std::size_t i = 0; i < c_.nodes.size(); ++i) {
            const NodeOp& op = c_.nodes[i];
            switch (op.kind) {
            case Formula::Kind::neg: val[i] = tri_not(val[op.a]); break;
            case Formula::Kind::conj: val[i] = tri_and(val[op.a], val[op.b]); break;
            case Formula::Kind::disj: val[i] = tri_or(val[op.a], val[op.b]); break;
            default: val[i] = atom_val[op.a]; break;
            }
        }
        Tri v = val[c_.root];
        if (cls_ != FrameClass::all && v != Tri::f) {
            Mask all = low_bits(level_->w0);
            bool lo = linked_in(all, chosen_, false);
            bool hi = leaf ? lo : linked_in(all, upper_, false);
            v = tri_and(v, lo == hi ? (lo ? Tri::t : Tri::f) : Tri::u);
        }
        return v;
    }

    // Include-first enumeration of level_->w1 candidates from index `next` on.
    bool dfs(std::size_t next)
    {
        const auto& cand = level_->candidates;
        std::size_t need = level_->w1 - chosen_.size();
        if (cand.size() - next < need) {
            return false;
        }
        if (++work_ > cap_) {
            capped_ = true;
            return false;
        }
        bool leaf = need == 0;
        upper_ = chosen_;
        if (!leaf) {
            upper_.insert(upper_.end(), cand.begin() + static_cast<std::ptrdiff_t>(next), cand.end());
        }
        Tri v = bounds_value(leaf);
        if (v == Tri::f) {
            return false;
        }
        if (v == Tri::t || leaf) {
            // Every completion works; the first one in order is the next
            // `need` candidates.
            found_ = chosen_;
            found_.insert(found_.end(), cand.begin() + static_cast<std::ptrdiff_t>(next),
                          cand.begin() + static_cast<std::ptrdiff_t>(next + need));
            return true;
        }
        chosen_.push_back(cand[next]);
        bool ok = dfs(next + 1);
        chosen_.pop_back();
        if (ok || capped_) {
            return ok;
        }
        return dfs(next + 1);
    }
};

std::vector<Mask> candidate_sets(std::size_t w0, FrameClass cls, std::uint64_t limit)
{
    std::vector<Mask> out;
    std::size_t lo = 2;
    std::size_t hi = cls == FrameClass::con2 ? 2 : w0;
    for (std::size_t k = lo; k <= hi && k <= w0; ++k) {
        // k-subsets in lexicographic order of their sorted index tuples.
        std::vector<std::size_t> idx(k);
        for (std::size_t i = 0; i < k; ++i) {
            idx[i] = i;
        }
        for (;;) {
            Mask m = 0;
            for (std::size_t i : idx) {
                m |= Mask{1} << i;
            }
            out.push_back(m);
            if (out.size() > limit) {
                return out;
            }
            std::size_t i = k;
            while (i > 0 && idx[i - 1] == w0 - k + (i - 1)) {
                --i;
            }
            if (i == 0) {
                break;
            }
            ++idx[i - 1];
            for (std::size_t j = i; j < k; ++j) {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    return out;
}

// Advances a nondecreasing sequence over [0, ntypes); false when done.
bool next_sequence(std::vector<Mask>& seq, Mask ntypes)
{
    std::size_t i = seq.size();
    while (i > 0 && seq[i - 1] == ntypes - 1) {
        --i;
    }
    if (i == 0) {
        return false;
    }
    Mask v = seq[i - 1] + 1;
    for (std::size_t j = i - 1; j < seq.size(); ++j) {
        seq[j] = v;
    }
    return true;
}

QsModel build_model(const Compiled& c, const std::vector<Mask>& types, const std::vector<Mask>& zs)
{
    std::vector<std::string> w0;
    for (std::size_t i = 0; i < types.size(); ++i) {
        w0.push_back("x" + std::to_string(i + 1));
    }
    std::vector<QuasiSaw::Point1> w1;
    for (std::size_t j = 0; j < zs.size(); ++j) {
        QuasiSaw::Point1 z{"z" + std::to_string(j + 1), {}};
        for (std::size_t i = 0; i < types.size(); ++i) {
            if (zs[j] >> i & 1) {
                z.succ.push_back(w0[i]);
            }
        }
        w1.push_back(std::move(z));
    }
    QsModel m;
    m.frame = std::make_shared<const QuasiSaw>(w0, w1);
    for (std::size_t v = 0; v < c.vars.size(); ++v) {
        std::vector<std::string> trace;
        for (std::size_t i = 0; i < types.size(); ++i) {
            if (types[i] >> v & 1) {
                trace.push_back(w0[i]);
            }
        }
        m.valuation.emplace(c.vars[v], rc_expand(m.frame, trace));
    }
    return m;
}

constexpr std::size_t chunk_size = 64;
// Memory guard for the surviving type sequences of one |w0|.
constexpr std::size_t max_kept_masks = std::size_t{1} << 24;

} // namespace

std::string_view to_string(SolveResult::Status s)
{
    switch (s) {
    case SolveResult::Status::sat: return "sat";
    case SolveResult::Status::unsat_up_to: return "unsat-up-to";
    case SolveResult::Status::resource_exhausted: return "resource-exhausted";
    }
    return "?";
}

SolveResult solve(const Formula& f, FrameClass cls, Bounds b, const SolveOptions& opt)
{
    if (b.max_w0 == 0 || b.max_w0 > 63) {
        throw Error(Errc::invalid_argument, "max_w0 must be between 1 and 63");
    }
    Compiled c(f);
    if (c.vars.size() > 63) {
        throw Error(Errc::invalid_argument, "too many variables for the search");
    }
    const Mask ntypes = Mask{1} << c.vars.size();
    const unsigned jobs = std::max(1u, opt.jobs);

    SolveResult res;
    res.frame_class = cls;
    res.bounds = b;
    std::uint64_t spent = 0;
    auto exhausted = [&](std::size_t w0, std::size_t w1) {
        res.status = SolveResult::Status::resource_exhausted;
        res.examined = spent;
        res.reached_w0 = w0;
        res.reached_w1 = w1;
        return res;
    };

    for (std::size_t w0 = 1; w0 <= b.max_w0; ++w0) {
        std::vector<Mask> cand = candidate_sets(w0, cls, opt.work_limit);
        if (cand.size() > opt.work_limit) {
            return exhausted(w0, 0);
        }
        // Type sequences not refuted by the equations alone, kept for every
        // |w1| at this |w0|.
        std::vector<std::vector<Mask>> alive;
        {
            Searcher filter(c, cls, opt.work_limit);
            std::vector<Mask> seq(w0, 0);
            bool more = true;
            while (more) {
                if (++spent > opt.work_limit || alive.size() * w0 > max_kept_masks) {
                    return exhausted(w0, 0);
                }
                filter.prepare(seq);
                if (filter.plausible()) {
                    alive.push_back(seq);
                }
                more = next_sequence(seq, ntypes);
            }
        }
        for (std::size_t w1 = 0; w1 <= b.max_w1 && w1 <= cand.size(); ++w1) {
            Level level{w0, w1, cand};
            std::size_t next = 0;
            while (next < alive.size()) {
                // One batch: up to `jobs` chunks of consecutive type sequences.
                std::vector<std::pair<std::size_t, std::size_t>> batch;
                while (next < alive.size() && batch.size() < jobs) {
                    std::size_t end = std::min(alive.size(), next + chunk_size);
                    batch.emplace_back(next, end);
                    next = end;
                }
                std::vector<ChunkResult> results(batch.size());
                auto work = [&](std::size_t k) {
                    Searcher s(c, cls, opt.work_limit);
                    return s.run(level, alive, batch[k].first, batch[k].second);
                };
                if (batch.size() == 1) {
                    results[0] = work(0);
                } else {
                    std::vector<std::future<ChunkResult>> pending;
                    for (std::size_t k = 0; k < batch.size(); ++k) {
                        pending.push_back(std::async(std::launch::async, work, k));
                    }
                    for (std::size_t k = 0; k < batch.size(); ++k) {
                        results[k] = pending[k].get();
                    }
                }
                // Combine strictly in order so the outcome does not depend
                // on how chunks were scheduled.
                for (const auto& r : results) {
                    spent += r.work;
                    if (r.found) {
                        res.status = SolveResult::Status::sat;
                        res.model = build_model(c, r.types, r.zs);
                        res.examined = spent;
                        res.reached_w0 = w0;
                        res.reached_w1 = w1;
                        if (!verify(res, f)) {
                            throw std::logic_error("solver produced a model that fails verification");
                        }
                        return res;
                    }
                    if (r.capped || spent > opt.work_limit) {
                        return exhausted(w0, w1);
                    }
                }
            }
        }
    }
    res.status = SolveResult::Status::unsat_up_to;
    res.examined = spent;
    res.reached_w0 = b.max_w0;
    res.reached_w1 = b.max_w1;
    return res;
}

namespace {

void require_bci(const Formula& f)
{
    Language lang = language_of(f);
    if (lang != Language::B && lang != Language::Bci) {
        throw Error(Errc::invalid_argument,
                    "expected a formula of Bci, got " + std::string(to_string(lang)));
    }
}

} // namespace

SolveResult solve_rc3(const Formula& f, Bounds b, const SolveOptions& opt)
{
    require_bci(f);
    return solve(f, FrameClass::con, b, opt);
}

SolveResult solve_rcp3(const Formula& f, Bounds b, const SolveOptions& opt)
{
    require_bci(f);
    return solve(to_bullet(f), FrameClass::con2, b, opt);
}

bool verify(const SolveResult& res, const Formula& f)
{
    if (res.status != SolveResult::Status::sat || !res.model) {
        return false;
    }
    const QsModel& m = *res.model;
    for (const auto& name : variables(f)) {
        if (m.valuation.count(name) == 0) {
            return false;
        }
    }
    if (classify_frame(*m.frame).count(res.frame_class) == 0) {
        return false;
    }
    bool ok = check(m, f);
    if (m.frame->size0() + m.frame->size1() <= default_oracle_cap) {
        ok = ok && oracle_check(m, f);
    }
    return ok;
}

} // namespace topocon
