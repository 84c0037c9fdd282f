#pragma once

// Abstract syntax for the quantifier-free topological languages
// B, BC, Bc, Bci, BCc and BCci, together with their concrete grammar,
// classification and the syntactic rewrites between them.
//
// Terms and formulas are immutable trees with structural equality; copies
// share nodes, so values are cheap to pass around and safe to share
// between threads.

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace topocon {

class Term {
public:
    enum class Kind { variable, zero, one, sum, product, complement };

    static Term var(std::string name);
    static Term zero();
    static Term one();
    static Term sum(Term lhs, Term rhs);
    static Term product(Term lhs, Term rhs);
    static Term complement(Term arg);

    Kind kind() const;
    /// Variable name; empty for non-variables.
    const std::string& name() const;
    /// Left operand of a binary node, or the operand of a complement.
    const Term& lhs() const;
    const Term& rhs() const;

    friend bool operator==(const Term& a, const Term& b);
    friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }
    /// Total structural order, used for deduplicating atoms.
    friend bool operator<(const Term& a, const Term& b);

private:
    struct Node;
    explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

struct Term::Node {
    Kind kind;
    std::string name;
    std::optional<Term> lhs;
    std::optional<Term> rhs;
};

Term operator+(const Term& a, const Term& b);
Term operator*(const Term& a, const Term& b);
Term operator-(const Term& a);

/// Sum of a nonempty list, left-nested; the empty sum is 0.
Term sum_of(const std::vector<Term>& terms);

enum class AtomKind { eq, contact, conn, int_conn };

class Formula {
public:
    enum class Kind { eq, contact, conn, int_conn, conj, disj, neg };

    static Formula eq(Term lhs, Term rhs);
    static Formula contact(Term lhs, Term rhs);
    static Formula conn(Term arg);
    static Formula int_conn(Term arg);
    static Formula conj(Formula lhs, Formula rhs);
    static Formula disj(Formula lhs, Formula rhs);
    static Formula neg(Formula arg);

    Kind kind() const;
    bool is_atom() const;
    AtomKind atom_kind() const;

    /// Term operands of an atom. For unary predicates only term_lhs is set.
    const Term& term_lhs() const;
    const Term& term_rhs() const;
    /// Sub-formulas of a connective; neg has only lhs.
    const Formula& lhs() const;
    const Formula& rhs() const;

    friend bool operator==(const Formula& a, const Formula& b);
    friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }
    friend bool operator<(const Formula& a, const Formula& b);

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

struct Formula::Node {
    Kind kind;
    std::optional<Term> t1;
    std::optional<Term> t2;
    std::optional<Formula> f1;
    std::optional<Formula> f2;
};

// Builders for the abbreviations used throughout.
Formula eq(const Term& a, const Term& b);
Formula neq(const Term& a, const Term& b);
/// a <= b, i.e. a . -b = 0
Formula leq(const Term& a, const Term& b);
Formula contact(const Term& a, const Term& b);
Formula not_contact(const Term& a, const Term& b);
Formula conn(const Term& a);
Formula int_conn(const Term& a);
Formula operator&&(const Formula& a, const Formula& b);
Formula operator||(const Formula& a, const Formula& b);
Formula operator!(const Formula& a);
/// Left-nested conjunction; the empty conjunction is 0 = 0.
Formula conj_of(const std::vector<Formula>& parts);

/// Flattens nested top-level conjunctions into their operands, left to right.
std::vector<Formula> conjuncts(const Formula& f);

std::set<std::string> variables(const Term& t);
std::set<std::string> variables(const Formula& f);

/// Distinct atoms of f in structural order.
std::vector<Formula> atoms(const Formula& f);

// ---------------------------------------------------------------------------
// Concrete syntax

bool is_identifier(std::string_view s);

/// Parses formula source. Throws ParseError with a 1-based position and the
/// set of tokens that would have been accepted there.
Formula parse(std::string_view text);
/// Parses a single term (no relational operator).
Term parse_term(std::string_view text);

/// Canonical, fully parenthesized rendering; parse(print(f)) == f.
std::string print(const Formula& f);
std::string print(const Term& t);

// ---------------------------------------------------------------------------
// Classification

enum class Language { B, BC, Bc, Bci, BCc, BCci, mixed_c };

/// Smallest language containing every atom kind of f. Formulas that use
/// both c and ci have no named language and report Language::mixed_c.
Language language_of(const Formula& f);
std::string_view to_string(Language lang);
/// Sublanguage order on the six named languages; mixed_c relates to nothing.
bool is_sublanguage(Language smaller, Language larger);

enum class Polarity { absent, all_positive, all_negative, mixed };

struct PolarityReport {
    Polarity eq = Polarity::absent;
    Polarity contact = Polarity::absent;
    Polarity conn = Polarity::absent;
    Polarity int_conn = Polarity::absent;

    Polarity of(AtomKind kind) const;
    friend bool operator==(const PolarityReport&, const PolarityReport&) = default;
};

PolarityReport polarity(const Formula& f);
std::string_view to_string(Polarity p);

// ---------------------------------------------------------------------------
// Rewrites

/// Replaces every ci atom by c. Rejects formulas that already contain c.
Formula to_bullet(const Formula& f);
/// Inverse of to_bullet: replaces every c atom by ci. Rejects formulas with ci.
Formula from_bullet(const Formula& f);

/// notC(a, b) = c(a) & c(b) & !c(a + b); entails !C(a', b') for all a' <= a, b' <= b.
Formula not_c(const Term& a, const Term& b);

/// Fresh variable names "_f0", "_f1", ... skipping names already in use.
class FreshNames {
public:
    explicit FreshNames(std::set<std::string> taken = {}) : taken_(std::move(taken)) {}
    std::string next();

private:
    std::set<std::string> taken_;
    std::size_t counter_ = 0;
};

/// Replaces each negative contact literal !C(a, b) by notC(a + u, b + v) with
/// fresh u, v. The result entails f on every frame; satisfiability is not
/// preserved in general. Rejects formulas with a positive contact occurrence.
Formula eliminate_contact(const Formula& f);
Formula eliminate_contact(const Formula& f, FreshNames& fresh);

} // namespace topocon
