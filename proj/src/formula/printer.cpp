#include "topocon/formula.hpp"

namespace topocon {

namespace {

void emit(const Term& t, std::string& out)
{
    switch (t.kind()) {
    case Term::Kind::variable:
        out += t.name();
        break;
    case Term::Kind::zero:
        out += '0';
        break;
    case Term::Kind::one:
        out += '1';
        break;
    case Term::Kind::complement:
        out += '-';
        emit(t.lhs(), out);
        break;
    case Term::Kind::sum:
    case Term::Kind::product:
        out += '(';
        emit(t.lhs(), out);
        out += t.kind() == Term::Kind::sum ? " + " : " . ";
        emit(t.rhs(), out);
        out += ')';
        break;
    }
}

void emit(const Formula& f, std::string& out)
{
    switch (f.kind()) {
    case Formula::Kind::eq:
        emit(f.term_lhs(), out);
        out += " = ";
        emit(f.term_rhs(), out);
        break;
    case Formula::Kind::contact:
        out += "C(";
        emit(f.term_lhs(), out);
        out += ", ";
        emit(f.term_rhs(), out);
        out += ')';
        break;
    case Formula::Kind::conn:
    case Formula::Kind::int_conn:
        out += f.kind() == Formula::Kind::conn ? "c(" : "ci(";
        emit(f.term_lhs(), out);
        out += ')';
        break;
    case Formula::Kind::neg:
        out += '!';
        // Equations are the only formulas without their own delimiters.
        if (f.lhs().kind() == Formula::Kind::eq) {
            out += '(';
            emit(f.lhs(), out);
            out += ')';
        } else {
            emit(f.lhs(), out);
        }
        break;
    case Formula::Kind::conj:
    case Formula::Kind::disj:
        out += '(';
        emit(f.lhs(), out);
        out += f.kind() == Formula::Kind::conj ? " & " : " | ";
        emit(f.rhs(), out);
        out += ')';
        break;
    }
}

} // namespace

std::string print(const Term& t)
{
    std::string out;
    emit(t, out);
    return out;
}

std::string print(const Formula& f)
{
    std::string out;
    emit(f, out);
    return out;
}

} // namespace topocon
