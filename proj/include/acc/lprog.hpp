#pragma once

// Normalized constraint logic programs: terms, literals, rules, programs,
// together with the parser, the normalizer and the printer.

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace acc {

struct Term {
    enum class Kind { Variable, Function };

    Kind kind = Kind::Function;
    std::string name;
    std::vector<Term> args;

    static Term variable(std::string name);
    static Term function(std::string name, std::vector<Term> args = {});

    bool is_variable() const { return kind == Kind::Variable; }

    friend bool operator==(const Term&, const Term&) = default;
};

// Variables of a term in first-occurrence order, without duplicates.
std::vector<std::string> term_variables(const Term& t);

struct Atom {
    std::string predicate;
    std::vector<std::string> args;

    std::size_t arity() const { return args.size(); }

    friend bool operator==(const Atom&, const Atom&) = default;
};

// `var = rhs`; the left side of a normalized unification is always a variable.
struct Constraint {
    std::string var;
    Term rhs;

    friend bool operator==(const Constraint&, const Constraint&) = default;
};

struct Call {
    Atom atom;

    friend bool operator==(const Call&, const Call&) = default;
};

using Literal = std::variant<Constraint, Call>;

struct PredicateKey {
    std::string name;
    std::size_t arity = 0;

    std::string to_string() const;

    friend auto operator<=>(const PredicateKey&, const PredicateKey&) = default;
};

struct RuleId {
    std::string predicate;
    std::size_t arity = 0;
    std::size_t ordinal = 0;

    PredicateKey key() const { return {predicate, arity}; }
    std::string to_string() const;  // "rev/2/2"

    friend auto operator<=>(const RuleId&, const RuleId&) = default;
};

struct Rule {
    RuleId id;
    Atom head;
    std::vector<Literal> body;

    PredicateKey key() const { return {head.predicate, head.arity()}; }

    friend bool operator==(const Rule&, const Rule&) = default;
};

// Rule variables: head arguments first, then body variables in order of
// first occurrence. This is the scope every body traversal works over.
std::vector<std::string> rule_variables(const Rule& r);

// An immutable, normalized program. Rules keep program order; the index
// maps each predicate to its rules.
class Program {
public:
    Program() = default;

    // Validates the normalized-form invariants and builds the index.
    explicit Program(std::vector<Rule> rules);

    const std::vector<Rule>& rules() const { return rules_; }
    std::vector<const Rule*> rules_for(const PredicateKey& key) const;
    std::vector<PredicateKey> predicates() const;
    const Rule* find_rule(const RuleId& id) const;

    // Base-form head variables shared by every rule of the predicate.
    std::optional<std::vector<std::string>> head_variables(const PredicateKey& key) const;

    bool empty() const { return rules_.empty(); }

private:
    std::vector<Rule> rules_;
    std::map<PredicateKey, std::vector<std::size_t>> index_;
};

// Unnormalized syntax as it appears in source text.
struct Equation {
    Term lhs;
    Term rhs;
};

struct RawCall {
    std::string predicate;
    std::vector<Term> args;
};

using RawLiteral = std::variant<Equation, RawCall>;

struct Clause {
    std::string predicate;
    std::vector<Term> head_args;
    std::vector<RawLiteral> body;
    std::size_t line = 0;
};

std::vector<Clause> parse_clauses(std::string_view text);

// Parses a program and normalizes it.
Program parse_program(std::string_view text);

// Parses exactly one clause (a trailing '.' is optional) and normalizes it on
// its own; the ordinal of the result is 1.
Rule parse_rule(std::string_view text);

// Parses `p(X1,...,Xn)` where every argument is a distinct variable.
Atom parse_atom(std::string_view text);

Program normalize(const std::vector<Clause>& clauses);
Program normalize(const Program& p);
// Re-normalizes rules given in program order; ids are reassigned.
Program normalize(const std::vector<Rule>& rules);

// Variant of `r` whose variables avoid `avoid`; only colliding names change.
struct Renaming {
    std::map<std::string, std::string> forward;

    Renaming inverse() const;
};

Rule rename_rule(const Rule& r, const std::set<std::string>& avoid,
                 Renaming* applied = nullptr);
Rule apply_renaming(const Rule& r, const Renaming& renaming);

// Rule text with variables renamed by first occurrence; equal strings mean the
// rules are variants of each other.
std::string canonical_rule_text(const Rule& r);
bool variant_of(const Rule& a, const Rule& b);

std::string to_string(const Term& t);
std::string to_string(const Atom& a);
std::string to_string(const Literal& l);
std::string to_string(const Rule& r);  // "head :- body." or "head."
std::string to_string(const Program& p);

}  // namespace acc
