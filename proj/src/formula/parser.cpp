#include "topocon/errors.hpp"
#include "topocon/formula.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace topocon {

namespace {

std::string join_expected(const std::vector<std::string>& expected)
{
    std::string out;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i > 0) {
            out += ", ";
        }
        out += expected[i];
    }
    return out;
}

} // namespace

ParseError::ParseError(int line, int column, std::vector<std::string> expected, const std::string& found)
    : Error(Errc::parse,
            std::to_string(line) + ":" + std::to_string(column) + ": expected " + join_expected(expected) +
                " but found " + found),
      line_(line), column_(column), expected_(std::move(expected))
{
}

bool is_identifier(std::string_view s)
{
    if (s.empty()) {
        return false;
    }
    auto ident_char = [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '\'';
    };
    // A leading underscore is reserved for generated names.
    if (std::isalpha(static_cast<unsigned char>(s.front())) == 0 && s.front() != '_') {
        return false;
    }
    return std::all_of(s.begin(), s.end(), ident_char);
}

namespace {

enum class Tok { ident, zero, one, plus, dot, minus, eq, neq, leq, comma, lparen, rparen, amp, bar, bang, end };

struct Token {
    Tok kind;
    std::string text;
    int line;
    int column;
};

std::string describe(Tok kind)
{
    switch (kind) {
    case Tok::ident: return "identifier";
    case Tok::zero: return "'0'";
    case Tok::one: return "'1'";
    case Tok::plus: return "'+'";
    case Tok::dot: return "'.'";
    case Tok::minus: return "'-'";
    case Tok::eq: return "'='";
    case Tok::neq: return "'!='";
    case Tok::leq: return "'<='";
    case Tok::comma: return "','";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::amp: return "'&'";
    case Tok::bar: return "'|'";
    case Tok::bang: return "'!'";
    case Tok::end: return "end of input";
    }
    return "?";
}

std::vector<Token> tokenize(std::string_view text)
{
    std::vector<Token> out;
    int line = 1;
    int col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    while (i < text.size()) {
        char ch = text[i];
        if (ch == '#') {
            while (i < text.size() && text[i] != '\n') {
                advance(1);
            }
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(ch)) != 0) {
            advance(1);
            continue;
        }
        int tl = line;
        int tc = col;
        auto push = [&](Tok kind, std::size_t len) {
            out.push_back({kind, std::string(text.substr(i, len)), tl, tc});
            advance(len);
        };
        if (std::isalpha(static_cast<unsigned char>(ch)) != 0 || ch == '_') {
            std::size_t j = i;
            while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) != 0 || text[j] == '_' ||
                                       text[j] == '\'')) {
                ++j;
            }
            push(Tok::ident, j - i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(ch)) != 0) {
            std::size_t j = i;
            while (j < text.size() && std::isalnum(static_cast<unsigned char>(text[j])) != 0) {
                ++j;
            }
            std::string lexeme(text.substr(i, j - i));
            if (lexeme == "0") {
                push(Tok::zero, 1);
            } else if (lexeme == "1") {
                push(Tok::one, 1);
            } else {
                throw ParseError(tl, tc, {"'0'", "'1'", "identifier"}, "'" + lexeme + "'");
            }
            continue;
        }
        std::string_view rest = text.substr(i);
        if (rest.starts_with("!=")) {
            push(Tok::neq, 2);
        } else if (rest.starts_with("<=")) {
            push(Tok::leq, 2);
        } else {
            switch (ch) {
            case '+': push(Tok::plus, 1); break;
            case '.': push(Tok::dot, 1); break;
            case '-': push(Tok::minus, 1); break;
            case '=': push(Tok::eq, 1); break;
            case ',': push(Tok::comma, 1); break;
            case '(': push(Tok::lparen, 1); break;
            case ')': push(Tok::rparen, 1); break;
            case '&': push(Tok::amp, 1); break;
            case '|': push(Tok::bar, 1); break;
            case '!': push(Tok::bang, 1); break;
            default:
                throw ParseError(tl, tc, {"formula token"}, "'" + std::string(1, ch) + "'");
            }
        }
    }
    out.push_back({Tok::end, "", line, col});
    return out;
}

// Recursive descent with backtracking at '(' (a parenthesized term and a
// parenthesized formula share a prefix). The furthest failure wins for
// error reporting.
class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Formula parse_formula_all()
    {
        Formula f = parse_disj();
        expect(Tok::end);
        return f;
    }

    Term parse_term_all()
    {
        Term t = parse_term();
        expect(Tok::end);
        return t;
    }

private:
    struct Failure {};

    const Token& peek(std::size_t ahead = 0) const
    {
        return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
    }

    bool at(Tok kind) const { return peek().kind == kind; }

    bool is_predicate(std::string_view name) const
    {
        return peek().kind == Tok::ident && peek().text == name && peek(1).kind == Tok::lparen;
    }

    [[noreturn]] void fail(std::vector<std::string> expected)
    {
        const Token& t = peek();
        if (pos_ > best_pos_ || !have_best_) {
            best_pos_ = pos_;
            best_expected_ = std::move(expected);
            have_best_ = true;
        } else if (pos_ == best_pos_) {
            for (auto& e : expected) {
                if (std::find(best_expected_.begin(), best_expected_.end(), e) == best_expected_.end()) {
                    best_expected_.push_back(std::move(e));
                }
            }
        }
        (void)t;
        throw Failure{};
    }

    void expect(Tok kind)
    {
        if (!at(kind)) {
            fail({describe(kind)});
        }
        ++pos_;
    }

    Formula parse_disj()
    {
        Formula acc = parse_conj();
        while (at(Tok::bar)) {
            ++pos_;
            acc = Formula::disj(acc, parse_conj());
        }
        return acc;
    }

    Formula parse_conj()
    {
        Formula acc = parse_lit();
        while (at(Tok::amp)) {
            ++pos_;
            acc = Formula::conj(acc, parse_lit());
        }
        return acc;
    }

    Formula parse_lit()
    {
        if (at(Tok::bang)) {
            ++pos_;
            return Formula::neg(parse_lit());
        }
        if (at(Tok::lparen)) {
            std::size_t save = pos_;
            try {
                return parse_atom();
            } catch (const Failure&) {
                pos_ = save;
            }
            ++pos_;
            Formula inner = parse_disj();
            expect(Tok::rparen);
            return inner;
        }
        return parse_atom();
    }

    Formula parse_atom()
    {
        if (is_predicate("C")) {
            pos_ += 2;
            Term a = parse_term();
            expect(Tok::comma);
            Term b = parse_term();
            expect(Tok::rparen);
            return Formula::contact(a, b);
        }
        if (is_predicate("c")) {
            pos_ += 2;
            Term a = parse_term();
            expect(Tok::rparen);
            return Formula::conn(a);
        }
        if (is_predicate("ci")) {
            pos_ += 2;
            Term a = parse_term();
            expect(Tok::rparen);
            return Formula::int_conn(a);
        }
        Term lhs = parse_term();
        switch (peek().kind) {
        case Tok::eq:
            ++pos_;
            return Formula::eq(lhs, parse_term());
        case Tok::neq:
            ++pos_;
            return neq(lhs, parse_term());
        case Tok::leq:
            ++pos_;
            return leq(lhs, parse_term());
        default:
            fail({"'='", "'!='", "'<='", "'+'", "'.'"});
        }
    }

    Term parse_term()
    {
        Term acc = parse_factor();
        while (at(Tok::plus)) {
            ++pos_;
            acc = Term::sum(acc, parse_factor());
        }
        return acc;
    }

    Term parse_factor()
    {
        Term acc = parse_unary();
        while (at(Tok::dot)) {
            ++pos_;
            acc = Term::product(acc, parse_unary());
        }
        return acc;
    }

    Term parse_unary()
    {
        switch (peek().kind) {
        case Tok::minus:
            ++pos_;
            return Term::complement(parse_unary());
        case Tok::zero:
            ++pos_;
            return Term::zero();
        case Tok::one:
            ++pos_;
            return Term::one();
        case Tok::ident: {
            // A predicate name followed by '(' never starts a term.
            if (is_predicate("C") || is_predicate("c") || is_predicate("ci")) {
                fail({"term"});
            }
            std::string name = peek().text;
            ++pos_;
            return Term::var(std::move(name));
        }
        case Tok::lparen: {
            ++pos_;
            Term inner = parse_term();
            expect(Tok::rparen);
            return inner;
        }
        default:
            fail({"'-'", "'0'", "'1'", "identifier", "'('"});
        }
    }

public:
    [[noreturn]] void raise() const
    {
        const Token& t = toks_[std::min(best_pos_, toks_.size() - 1)];
        std::string found = t.kind == Tok::end ? "end of input" : "'" + t.text + "'";
        throw ParseError(t.line, t.column, best_expected_, found);
    }

    template <class F>
    auto run(F&& f) -> decltype(f())
    {
        try {
            return f();
        } catch (const Failure&) {
            raise();
        }
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::size_t best_pos_ = 0;
    bool have_best_ = false;
    std::vector<std::string> best_expected_;
};

} // namespace

Formula parse(std::string_view text)
{
    Parser p(tokenize(text));
    return p.run([&] { return p.parse_formula_all(); });
}

Term parse_term(std::string_view text)
{
    Parser p(tokenize(text));
    return p.run([&] { return p.parse_term_all(); });
}

} // namespace topocon
