#include "topocon/errors.hpp"
#include "topocon/quasisaw.hpp"

#include <cstdint>

namespace topocon {

namespace {

using Mask = std::uint64_t;

// The frame as a bare finite quasi-order, with no use of the trace
// representation: points 0..n-1, below[p] = {q : q <= p}, above[p] = {q : p <= q}.
struct Order {
    std::size_t n = 0;
    std::vector<Mask> below;
    std::vector<Mask> above;

    explicit Order(const QuasiSaw& frame)
    {
        std::size_t n0 = frame.size0();
        n = n0 + frame.size1();
        below.assign(n, 0);
        above.assign(n, 0);
        for (std::size_t p = 0; p < n; ++p) {
            below[p] |= Mask{1} << p;
            above[p] |= Mask{1} << p;
        }
        for (std::size_t z = 0; z < frame.size1(); ++z) {
            for (std::size_t x = 0; x < n0; ++x) {
                if (frame.succ(z).test(x)) {
                    below[x] |= Mask{1} << (n0 + z);
                    above[n0 + z] |= Mask{1} << x;
                }
            }
        }
    }

    Mask all() const { return n == 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

    // Closed sets are down-closed: the closure collects everything below.
    Mask closure(Mask s) const
    {
        Mask out = 0;
        for (std::size_t p = 0; p < n; ++p) {
            if (s >> p & 1) {
                out |= below[p];
            }
        }
        return out;
    }

    // Open sets are up-closed: p is interior iff everything above it is in s.
    Mask interior(Mask s) const
    {
        Mask out = 0;
        for (std::size_t p = 0; p < n; ++p) {
            if ((above[p] & ~s) == 0) {
                out |= Mask{1} << p;
            }
        }
        return out;
    }

    // No split of `space` into two nonempty parts, each closed in the
    // subspace topology.
    bool connected(Mask space) const
    {
        if (space == 0) {
            return true;
        }
        std::vector<std::size_t> pts;
        for (std::size_t p = 0; p < n; ++p) {
            if (space >> p & 1) {
                pts.push_back(p);
            }
        }
        // The first point is fixed on one side to skip mirrored splits.
        std::size_t k = pts.size();
        for (Mask pick = 0; pick + 1 < (Mask{1} << (k - 1)); ++pick) {
            Mask part = Mask{1} << pts[0];
            for (std::size_t i = 1; i < k; ++i) {
                if (pick >> (i - 1) & 1) {
                    part |= Mask{1} << pts[i];
                }
            }
            Mask rest = space & ~part;
            if ((closure(part) & space) == part && (closure(rest) & space) == rest) {
                return false;
            }
        }
        return true;
    }
};

struct OracleEval {
    const QsModel& model;
    const Order& order;

    Mask term(const Term& t) const
    {
        switch (t.kind()) {
        case Term::Kind::variable: {
            auto it = model.valuation.find(t.name());
            if (it == model.valuation.end()) {
                throw Error(Errc::unbound_variable, "unbound variable '" + t.name() + "'");
            }
            Mask seed = 0;
            const Bits& tr = it->second.trace();
            for (std::size_t x = tr.find_first(); x != Bits::npos; x = tr.find_next(x)) {
                seed |= Mask{1} << x;
            }
            return order.closure(seed);
        }
        case Term::Kind::zero:
            return 0;
        case Term::Kind::one:
            return order.all();
        case Term::Kind::sum:
            return order.closure(term(t.lhs()) | term(t.rhs()));
        case Term::Kind::product:
            return order.closure(order.interior(term(t.lhs()) & term(t.rhs())));
        case Term::Kind::complement:
            return order.closure(order.all() & ~term(t.lhs()));
        }
        return 0;
    }

    bool formula(const Formula& f) const
    {
        switch (f.kind()) {
        case Formula::Kind::eq:
            return term(f.term_lhs()) == term(f.term_rhs());
        case Formula::Kind::contact:
            return (term(f.term_lhs()) & term(f.term_rhs())) != 0;
        case Formula::Kind::conn:
            return order.connected(term(f.term_lhs()));
        case Formula::Kind::int_conn:
            return order.connected(order.interior(term(f.term_lhs())));
        case Formula::Kind::neg:
            return !formula(f.lhs());
        case Formula::Kind::conj:
            return formula(f.lhs()) && formula(f.rhs());
        case Formula::Kind::disj:
            return formula(f.lhs()) || formula(f.rhs());
        }
        return false;
    }
};

} // namespace

bool oracle_check(const QsModel& m, const Formula& f, std::size_t cap)
{
    std::size_t n = m.frame->size0() + m.frame->size1();
    if (n > cap || n > 63) {
        throw Error(Errc::cap_exceeded,
                    "oracle limited to " + std::to_string(std::min<std::size_t>(cap, 63)) + " points, frame has " +
                        std::to_string(n));
    }
    for (const auto& name : variables(f)) {
        if (m.valuation.count(name) == 0) {
            throw Error(Errc::unbound_variable, "unbound variable '" + name + "'");
        }
    }
    Order order(*m.frame);
    return OracleEval{m, order}.formula(f);
}

} // namespace topocon
