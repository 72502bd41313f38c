#include <cctype>
#include <string>
#include <utility>

#include "acc/error.hpp"
#include "acc/lprog.hpp"

namespace acc {

namespace {

enum class Tok { Variable, Name, LParen, RParen, LBracket, RBracket, Bar, Comma, Dot, Neck, Equals, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next() {
        skip_layout();
        const std::size_t line = line_, column = column_;
        if (pos_ >= text_.size()) return {Tok::End, "", line, column};

        const char c = text_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string word;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                word += advance();
            const bool var = std::isupper(static_cast<unsigned char>(word[0])) || word[0] == '_';
            return {var ? Tok::Variable : Tok::Name, word, line, column};
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string number;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                number += advance();
            return {Tok::Name, number, line, column};
        }
        if (c == '\'') {
            advance();
            std::string name;
            while (pos_ < text_.size() && text_[pos_] != '\'') {
                if (text_[pos_] == '\n') break;
                name += advance();
            }
            if (pos_ >= text_.size() || text_[pos_] != '\'')
                throw ParseError("unterminated quoted atom", line, column);
            advance();
            if (name.empty()) throw ParseError("empty quoted atom", line, column);
            return {Tok::Name, name, line, column};
        }
        if (c == ':' && peek(1) == '-') {
            advance();
            advance();
            return {Tok::Neck, ":-", line, column};
        }
        if (c == '=') {
            const char n = peek(1);
            if (n == '<' || n == ':' || n == '=' || n == '.' || n == '\\')
                throw ParseError("only unification constraints `X = t` are supported", line, column);
            advance();
            return {Tok::Equals, "=", line, column};
        }
        switch (c) {
        case '(': advance(); return {Tok::LParen, "(", line, column};
        case ')': advance(); return {Tok::RParen, ")", line, column};
        case '[': advance(); return {Tok::LBracket, "[", line, column};
        case ']': advance(); return {Tok::RBracket, "]", line, column};
        case '|': advance(); return {Tok::Bar, "|", line, column};
        case ',': advance(); return {Tok::Comma, ",", line, column};
        case '.': advance(); return {Tok::Dot, ".", line, column};
        default: break;
        }
        if (std::string_view("<>+-*/\\").find(c) != std::string_view::npos)
            throw ParseError("arithmetic and comparison constraints are not supported", line, column);
        throw ParseError(std::string("unexpected character '") + c + "'", line, column);
    }

private:
    char peek(std::size_t ahead) const {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }

    char advance() {
        const char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        return c;
    }

    void skip_layout() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else if (c == '%') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else {
                break;
            }
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

class Parser {
public:
    explicit Parser(std::string_view text) : lexer_(text) { shift(); }

    std::vector<Clause> clauses() {
        std::vector<Clause> out;
        while (tok_.kind != Tok::End) out.push_back(clause());
        return out;
    }

    Clause clause() {
        anonymous_ = 0;
        Clause c;
        c.line = tok_.line;
        Term head = term();
        if (head.is_variable()) fail("clause head must be an atom");
        c.predicate = head.name;
        c.head_args = std::move(head.args);
        if (tok_.kind == Tok::Neck) {
            shift();
            body(c);
        }
        expect(Tok::Dot, "'.' at end of clause");
        return c;
    }

    bool at_end() const { return tok_.kind == Tok::End; }

    Term standalone_term() { return term(); }

private:
    void body(Clause& c) {
        for (;;) {
            Term lhs = term();
            if (tok_.kind == Tok::Equals) {
                shift();
                Term rhs = term();
                c.body.push_back(Equation{std::move(lhs), std::move(rhs)});
            } else if (tok_.kind == Tok::Name && tok_.text == "is") {
                fail("arithmetic constraints are not supported");
            } else {
                if (lhs.is_variable()) fail("a variable cannot be used as a body literal");
                if (!(lhs.name == "true" && lhs.args.empty()))
                    c.body.push_back(RawCall{lhs.name, std::move(lhs.args)});
            }
            if (tok_.kind != Tok::Comma) break;
            shift();
        }
    }

    Term term() {
        switch (tok_.kind) {
        case Tok::Variable: {
            std::string name = tok_.text;
            if (name == "_") name = "_" + std::to_string(++anonymous_);
            shift();
            return Term::variable(std::move(name));
        }
        case Tok::Name: {
            std::string name = tok_.text;
            shift();
            std::vector<Term> args;
            if (tok_.kind == Tok::LParen) {
                shift();
                if (tok_.kind != Tok::RParen) {
                    args.push_back(term());
                    while (tok_.kind == Tok::Comma) {
                        shift();
                        args.push_back(term());
                    }
                }
                expect(Tok::RParen, "')'");
            }
            return Term::function(std::move(name), std::move(args));
        }
        case Tok::LBracket: return list();
        default: fail("expected a term, found '" + tok_.text + "'");
        }
    }

    Term list() {
        shift();  // '['
        if (tok_.kind == Tok::RBracket) {
            shift();
            return Term::function("[]");
        }
        std::vector<Term> items{term()};
        while (tok_.kind == Tok::Comma) {
            shift();
            items.push_back(term());
        }
        Term tail = Term::function("[]");
        if (tok_.kind == Tok::Bar) {
            shift();
            tail = term();
        }
        expect(Tok::RBracket, "']'");
        for (auto it = items.rbegin(); it != items.rend(); ++it)
            tail = Term::function(".", {std::move(*it), std::move(tail)});
        return tail;
    }

    void expect(Tok kind, const std::string& what) {
        if (tok_.kind != kind) fail("expected " + what + ", found '" + tok_.text + "'");
        shift();
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(what, tok_.line, tok_.column);
    }

    void shift() { tok_ = lexer_.next(); }

    Lexer lexer_;
    Token tok_{Tok::End, "", 1, 1};
    int anonymous_ = 0;
};

}  // namespace

std::vector<Clause> parse_clauses(std::string_view text) {
    return Parser(text).clauses();
}

Program parse_program(std::string_view text) {
    return normalize(parse_clauses(text));
}

Rule parse_rule(std::string_view text) {
    std::string owned(text);
    auto last = owned.find_last_not_of(" \t\r\n");
    if (last == std::string::npos) throw ParseError("empty rule", 1, 1);
    if (owned[last] != '.') owned += '.';
    auto clauses = parse_clauses(owned);
    if (clauses.size() != 1) throw ParseError("expected exactly one rule", 1, 1);
    Program p = normalize(clauses);
    return p.rules().front();
}

Atom parse_atom(std::string_view text) {
    Parser parser(text);
    Term t = parser.standalone_term();
    if (!parser.at_end()) throw ParseError("trailing text after atom", 1, text.size());
    if (t.is_variable()) throw ParseError("expected an atom, found a variable", 1, 1);
    Atom a{t.name, {}};
    for (const Term& arg : t.args) {
        if (!arg.is_variable())
            throw ParseError("atom arguments must be variables", 1, 1);
        for (const auto& seen : a.args)
            if (seen == arg.name) throw ParseError("atom arguments must be distinct", 1, 1);
        a.args.push_back(arg.name);
    }
    return a;
}

}  // namespace acc
