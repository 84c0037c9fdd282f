#include "topocon/formula.hpp"

#include "topocon/errors.hpp"

#include <functional>

namespace topocon {

namespace {

int compare(const Term& a, const Term& b);

int compare_kinds(int a, int b) { return a < b ? -1 : (a > b ? 1 : 0); }

int compare(const Term& a, const Term& b)
{
    if (a.kind() != b.kind()) {
        return compare_kinds(static_cast<int>(a.kind()), static_cast<int>(b.kind()));
    }
    switch (a.kind()) {
    case Term::Kind::variable:
        return a.name().compare(b.name()) < 0 ? -1 : (a.name() == b.name() ? 0 : 1);
    case Term::Kind::zero:
    case Term::Kind::one:
        return 0;
    case Term::Kind::complement:
        return compare(a.lhs(), b.lhs());
    case Term::Kind::sum:
    case Term::Kind::product:
        if (int c = compare(a.lhs(), b.lhs()); c != 0) {
            return c;
        }
        return compare(a.rhs(), b.rhs());
    }
    return 0;
}

int compare(const Formula& a, const Formula& b)
{
    if (a.kind() != b.kind()) {
        return compare_kinds(static_cast<int>(a.kind()), static_cast<int>(b.kind()));
    }
    switch (a.kind()) {
    case Formula::Kind::eq:
    case Formula::Kind::contact:
        if (int c = compare(a.term_lhs(), b.term_lhs()); c != 0) {
            return c;
        }
        return compare(a.term_rhs(), b.term_rhs());
    case Formula::Kind::conn:
    case Formula::Kind::int_conn:
        return compare(a.term_lhs(), b.term_lhs());
    case Formula::Kind::neg:
        return compare(a.lhs(), b.lhs());
    case Formula::Kind::conj:
    case Formula::Kind::disj:
        if (int c = compare(a.lhs(), b.lhs()); c != 0) {
            return c;
        }
        return compare(a.rhs(), b.rhs());
    }
    return 0;
}

} // namespace

// ---------------------------------------------------------------------------
// Term

Term Term::var(std::string name)
{
    if (name.empty()) {
        throw Error(Errc::invalid_argument, "empty variable name");
    }
    return Term(std::make_shared<const Node>(Node{Kind::variable, std::move(name), {}, {}}));
}

Term Term::zero()
{
    static const Term z(std::make_shared<const Node>(Node{Kind::zero, {}, {}, {}}));
    return z;
}

Term Term::one()
{
    static const Term o(std::make_shared<const Node>(Node{Kind::one, {}, {}, {}}));
    return o;
}

Term Term::sum(Term lhs, Term rhs)
{
    return Term(std::make_shared<const Node>(Node{Kind::sum, {}, std::move(lhs), std::move(rhs)}));
}

Term Term::product(Term lhs, Term rhs)
{
    return Term(std::make_shared<const Node>(Node{Kind::product, {}, std::move(lhs), std::move(rhs)}));
}

Term Term::complement(Term arg)
{
    return Term(std::make_shared<const Node>(Node{Kind::complement, {}, std::move(arg), {}}));
}

Term::Kind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_->name; }

const Term& Term::lhs() const
{
    if (!node_->lhs) {
        throw Error(Errc::invalid_argument, "term has no operand");
    }
    return *node_->lhs;
}

const Term& Term::rhs() const
{
    if (!node_->rhs) {
        throw Error(Errc::invalid_argument, "term has no second operand");
    }
    return *node_->rhs;
}

bool operator==(const Term& a, const Term& b)
{
    return a.node_ == b.node_ || compare(a, b) == 0;
}

bool operator<(const Term& a, const Term& b) { return compare(a, b) < 0; }

Term operator+(const Term& a, const Term& b) { return Term::sum(a, b); }
Term operator*(const Term& a, const Term& b) { return Term::product(a, b); }
Term operator-(const Term& a) { return Term::complement(a); }

Term sum_of(const std::vector<Term>& terms)
{
    if (terms.empty()) {
        return Term::zero();
    }
    Term acc = terms.front();
    for (std::size_t i = 1; i < terms.size(); ++i) {
        acc = acc + terms[i];
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Formula

Formula Formula::eq(Term lhs, Term rhs)
{
    return Formula(std::make_shared<const Node>(Node{Kind::eq, std::move(lhs), std::move(rhs), {}, {}}));
}

Formula Formula::contact(Term lhs, Term rhs)
{
    return Formula(std::make_shared<const Node>(Node{Kind::contact, std::move(lhs), std::move(rhs), {}, {}}));
}

Formula Formula::conn(Term arg)
{
    return Formula(std::make_shared<const Node>(Node{Kind::conn, std::move(arg), {}, {}, {}}));
}

Formula Formula::int_conn(Term arg)
{
    return Formula(std::make_shared<const Node>(Node{Kind::int_conn, std::move(arg), {}, {}, {}}));
}

Formula Formula::conj(Formula lhs, Formula rhs)
{
    return Formula(std::make_shared<const Node>(Node{Kind::conj, {}, {}, std::move(lhs), std::move(rhs)}));
}

Formula Formula::disj(Formula lhs, Formula rhs)
{
    return Formula(std::make_shared<const Node>(Node{Kind::disj, {}, {}, std::move(lhs), std::move(rhs)}));
}

Formula Formula::neg(Formula arg)
{
    return Formula(std::make_shared<const Node>(Node{Kind::neg, {}, {}, std::move(arg), {}}));
}

Formula::Kind Formula::kind() const { return node_->kind; }

bool Formula::is_atom() const
{
    switch (node_->kind) {
    case Kind::eq:
    case Kind::contact:
    case Kind::conn:
    case Kind::int_conn:
        return true;
    default:
        return false;
    }
}

AtomKind Formula::atom_kind() const
{
    switch (node_->kind) {
    case Kind::eq:
        return AtomKind::eq;
    case Kind::contact:
        return AtomKind::contact;
    case Kind::conn:
        return AtomKind::conn;
    case Kind::int_conn:
        return AtomKind::int_conn;
    default:
        throw Error(Errc::invalid_argument, "formula is not an atom");
    }
}

const Term& Formula::term_lhs() const
{
    if (!node_->t1) {
        throw Error(Errc::invalid_argument, "formula is not an atom");
    }
    return *node_->t1;
}

const Term& Formula::term_rhs() const
{
    if (!node_->t2) {
        throw Error(Errc::invalid_argument, "atom has no second term");
    }
    return *node_->t2;
}

const Formula& Formula::lhs() const
{
    if (!node_->f1) {
        throw Error(Errc::invalid_argument, "formula is not a connective");
    }
    return *node_->f1;
}

const Formula& Formula::rhs() const
{
    if (!node_->f2) {
        throw Error(Errc::invalid_argument, "connective has no second operand");
    }
    return *node_->f2;
}

bool operator==(const Formula& a, const Formula& b)
{
    return a.node_ == b.node_ || compare(a, b) == 0;
}

bool operator<(const Formula& a, const Formula& b) { return compare(a, b) < 0; }

Formula eq(const Term& a, const Term& b) { return Formula::eq(a, b); }
Formula neq(const Term& a, const Term& b) { return Formula::neg(Formula::eq(a, b)); }
Formula leq(const Term& a, const Term& b) { return Formula::eq(a * -b, Term::zero()); }
Formula contact(const Term& a, const Term& b) { return Formula::contact(a, b); }
Formula not_contact(const Term& a, const Term& b) { return Formula::neg(Formula::contact(a, b)); }
Formula conn(const Term& a) { return Formula::conn(a); }
Formula int_conn(const Term& a) { return Formula::int_conn(a); }
Formula operator&&(const Formula& a, const Formula& b) { return Formula::conj(a, b); }
Formula operator||(const Formula& a, const Formula& b) { return Formula::disj(a, b); }
Formula operator!(const Formula& a) { return Formula::neg(a); }

Formula conj_of(const std::vector<Formula>& parts)
{
    if (parts.empty()) {
        return Formula::eq(Term::zero(), Term::zero());
    }
    Formula acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) {
        acc = acc && parts[i];
    }
    return acc;
}

std::vector<Formula> conjuncts(const Formula& f)
{
    std::vector<Formula> out;
    std::function<void(const Formula&)> walk = [&](const Formula& g) {
        if (g.kind() == Formula::Kind::conj) {
            walk(g.lhs());
            walk(g.rhs());
        } else {
            out.push_back(g);
        }
    };
    walk(f);
    return out;
}

namespace {

void collect_vars(const Term& t, std::set<std::string>& out)
{
    switch (t.kind()) {
    case Term::Kind::variable:
        out.insert(t.name());
        break;
    case Term::Kind::zero:
    case Term::Kind::one:
        break;
    case Term::Kind::complement:
        collect_vars(t.lhs(), out);
        break;
    case Term::Kind::sum:
    case Term::Kind::product:
        collect_vars(t.lhs(), out);
        collect_vars(t.rhs(), out);
        break;
    }
}

void collect_vars(const Formula& f, std::set<std::string>& out)
{
    switch (f.kind()) {
    case Formula::Kind::eq:
    case Formula::Kind::contact:
        collect_vars(f.term_lhs(), out);
        collect_vars(f.term_rhs(), out);
        break;
    case Formula::Kind::conn:
    case Formula::Kind::int_conn:
        collect_vars(f.term_lhs(), out);
        break;
    case Formula::Kind::neg:
        collect_vars(f.lhs(), out);
        break;
    case Formula::Kind::conj:
    case Formula::Kind::disj:
        collect_vars(f.lhs(), out);
        collect_vars(f.rhs(), out);
        break;
    }
}

void collect_atoms(const Formula& f, std::set<Formula>& out)
{
    if (f.is_atom()) {
        out.insert(f);
        return;
    }
    collect_atoms(f.lhs(), out);
    if (f.kind() != Formula::Kind::neg) {
        collect_atoms(f.rhs(), out);
    }
}

} // namespace

std::set<std::string> variables(const Term& t)
{
    std::set<std::string> out;
    collect_vars(t, out);
    return out;
}

std::set<std::string> variables(const Formula& f)
{
    std::set<std::string> out;
    collect_vars(f, out);
    return out;
}

std::vector<Formula> atoms(const Formula& f)
{
    std::set<Formula> found;
    collect_atoms(f, found);
    return {found.begin(), found.end()};
}

} // namespace topocon
