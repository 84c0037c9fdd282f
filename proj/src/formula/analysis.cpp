#include "topocon/formula.hpp"

#include "topocon/errors.hpp"

namespace topocon {

namespace {

struct AtomUse {
    bool contact = false;
    bool conn = false;
    bool int_conn = false;
};

void scan(const Formula& f, AtomUse& use)
{
    switch (f.kind()) {
    case Formula::Kind::eq:
        break;
    case Formula::Kind::contact:
        use.contact = true;
        break;
    case Formula::Kind::conn:
        use.conn = true;
        break;
    case Formula::Kind::int_conn:
        use.int_conn = true;
        break;
    case Formula::Kind::neg:
        scan(f.lhs(), use);
        break;
    case Formula::Kind::conj:
    case Formula::Kind::disj:
        scan(f.lhs(), use);
        scan(f.rhs(), use);
        break;
    }
}

Polarity merge(Polarity seen, bool positive)
{
    Polarity now = positive ? Polarity::all_positive : Polarity::all_negative;
    if (seen == Polarity::absent || seen == now) {
        return now;
    }
    return Polarity::mixed;
}

void walk_polarity(const Formula& f, bool positive, PolarityReport& out)
{
    switch (f.kind()) {
    case Formula::Kind::eq:
        out.eq = merge(out.eq, positive);
        break;
    case Formula::Kind::contact:
        out.contact = merge(out.contact, positive);
        break;
    case Formula::Kind::conn:
        out.conn = merge(out.conn, positive);
        break;
    case Formula::Kind::int_conn:
        out.int_conn = merge(out.int_conn, positive);
        break;
    case Formula::Kind::neg:
        walk_polarity(f.lhs(), !positive, out);
        break;
    case Formula::Kind::conj:
    case Formula::Kind::disj:
        walk_polarity(f.lhs(), positive, out);
        walk_polarity(f.rhs(), positive, out);
        break;
    }
}

} // namespace

Language language_of(const Formula& f)
{
    AtomUse use;
    scan(f, use);
    if (use.conn && use.int_conn) {
        return Language::mixed_c;
    }
    if (use.contact) {
        return use.conn ? Language::BCc : (use.int_conn ? Language::BCci : Language::BC);
    }
    return use.conn ? Language::Bc : (use.int_conn ? Language::Bci : Language::B);
}

std::string_view to_string(Language lang)
{
    switch (lang) {
    case Language::B: return "B";
    case Language::BC: return "BC";
    case Language::Bc: return "Bc";
    case Language::Bci: return "Bci";
    case Language::BCc: return "BCc";
    case Language::BCci: return "BCci";
    case Language::mixed_c: return "mixed-c";
    }
    return "?";
}

bool is_sublanguage(Language smaller, Language larger)
{
    if (smaller == Language::mixed_c || larger == Language::mixed_c) {
        return false;
    }
    if (smaller == larger || smaller == Language::B) {
        return true;
    }
    switch (smaller) {
    case Language::BC:
        return larger == Language::BCc || larger == Language::BCci;
    case Language::Bc:
        return larger == Language::BCc;
    case Language::Bci:
        return larger == Language::BCci;
    default:
        return false;
    }
}

Polarity PolarityReport::of(AtomKind kind) const
{
    switch (kind) {
    case AtomKind::eq: return eq;
    case AtomKind::contact: return contact;
    case AtomKind::conn: return conn;
    case AtomKind::int_conn: return int_conn;
    }
    return Polarity::absent;
}

PolarityReport polarity(const Formula& f)
{
    PolarityReport out;
    walk_polarity(f, true, out);
    return out;
}

std::string_view to_string(Polarity p)
{
    switch (p) {
    case Polarity::absent: return "absent";
    case Polarity::all_positive: return "all-positive";
    case Polarity::all_negative: return "all-negative";
    case Polarity::mixed: return "mixed";
    }
    return "?";
}

} // namespace topocon
