#include "topocon/formula.hpp"

#include "topocon/errors.hpp"

#include <functional>

namespace topocon {

namespace {

// Rebuilds f bottom-up, letting `atom` replace each atom.
Formula map_atoms(const Formula& f, const std::function<Formula(const Formula&)>& atom)
{
    switch (f.kind()) {
    case Formula::Kind::neg:
        return Formula::neg(map_atoms(f.lhs(), atom));
    case Formula::Kind::conj:
        return Formula::conj(map_atoms(f.lhs(), atom), map_atoms(f.rhs(), atom));
    case Formula::Kind::disj:
        return Formula::disj(map_atoms(f.lhs(), atom), map_atoms(f.rhs(), atom));
    default:
        return atom(f);
    }
}

} // namespace

Formula to_bullet(const Formula& f)
{
    if (polarity(f).conn != Polarity::absent) {
        throw Error(Errc::invalid_argument, "to_bullet: formula already contains c atoms");
    }
    return map_atoms(f, [](const Formula& a) {
        return a.kind() == Formula::Kind::int_conn ? Formula::conn(a.term_lhs()) : a;
    });
}

Formula from_bullet(const Formula& f)
{
    if (polarity(f).int_conn != Polarity::absent) {
        throw Error(Errc::invalid_argument, "from_bullet: formula already contains ci atoms");
    }
    return map_atoms(f, [](const Formula& a) {
        return a.kind() == Formula::Kind::conn ? Formula::int_conn(a.term_lhs()) : a;
    });
}

Formula not_c(const Term& a, const Term& b)
{
    return (conn(a) && conn(b)) && !conn(a + b);
}

std::string FreshNames::next()
{
    for (;;) {
        std::string name = "_f" + std::to_string(counter_++);
        if (taken_.insert(name).second) {
            return name;
        }
    }
}

namespace {

Formula eliminate(const Formula& f, FreshNames& fresh)
{
    switch (f.kind()) {
    case Formula::Kind::neg:
        if (f.lhs().kind() == Formula::Kind::contact) {
            const Formula& c = f.lhs();
            Term u = Term::var(fresh.next());
            Term v = Term::var(fresh.next());
            return not_c(c.term_lhs() + u, c.term_rhs() + v);
        }
        return Formula::neg(eliminate(f.lhs(), fresh));
    case Formula::Kind::conj:
        return Formula::conj(eliminate(f.lhs(), fresh), eliminate(f.rhs(), fresh));
    case Formula::Kind::disj:
        return Formula::disj(eliminate(f.lhs(), fresh), eliminate(f.rhs(), fresh));
    case Formula::Kind::contact: {
        // Reached only below an odd number of negations that are not its
        // direct parent, e.g. !(C(a, b) & x). C(a, b) entails !notC(a + u, b + v),
        // which is the weakening needed at a negative position.
        Term u = Term::var(fresh.next());
        Term v = Term::var(fresh.next());
        return !not_c(f.term_lhs() + u, f.term_rhs() + v);
    }
    default:
        return f;
    }
}

} // namespace

Formula eliminate_contact(const Formula& f, FreshNames& fresh)
{
    Polarity p = polarity(f).contact;
    if (p == Polarity::all_positive || p == Polarity::mixed) {
        throw Error(Errc::invalid_argument, "eliminate_contact: formula has a positive contact occurrence");
    }
    return eliminate(f, fresh);
}

Formula eliminate_contact(const Formula& f)
{
    FreshNames fresh(variables(f));
    return eliminate_contact(f, fresh);
}

} // namespace topocon
