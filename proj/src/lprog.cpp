#include "acc/lprog.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <utility>

#include "acc/error.hpp"

namespace acc {

Term Term::variable(std::string name) {
    return Term{Kind::Variable, std::move(name), {}};
}

Term Term::function(std::string name, std::vector<Term> args) {
    return Term{Kind::Function, std::move(name), std::move(args)};
}

namespace {

void collect_variables(const Term& t, std::vector<std::string>& out) {
    if (t.is_variable()) {
        if (std::find(out.begin(), out.end(), t.name) == out.end()) out.push_back(t.name);
        return;
    }
    for (const Term& a : t.args) collect_variables(a, out);
}

void add_unique(std::vector<std::string>& out, const std::string& v) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
}

bool valid_variable_name(const std::string& v) {
    if (v.empty()) return false;
    if (!(std::isupper(static_cast<unsigned char>(v[0])) || v[0] == '_')) return false;
    return std::all_of(v.begin(), v.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

}  // namespace

std::vector<std::string> term_variables(const Term& t) {
    std::vector<std::string> out;
    collect_variables(t, out);
    return out;
}

std::string PredicateKey::to_string() const {
    return name + "/" + std::to_string(arity);
}

std::string RuleId::to_string() const {
    return predicate + "/" + std::to_string(arity) + "/" + std::to_string(ordinal);
}

std::vector<std::string> rule_variables(const Rule& r) {
    std::vector<std::string> out = r.head.args;
    for (const Literal& lit : r.body) {
        if (const auto* c = std::get_if<Constraint>(&lit)) {
            add_unique(out, c->var);
            collect_variables(c->rhs, out);
        } else {
            for (const auto& v : std::get<Call>(lit).atom.args) add_unique(out, v);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Program

namespace {

void check_atom(const Atom& a, const char* where) {
    if (a.predicate.empty()) throw Error(std::string(where) + ": empty predicate name");
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (!valid_variable_name(a.args[i]))
            throw Error(std::string(where) + ": '" + a.args[i] + "' is not a variable");
        for (std::size_t j = 0; j < i; ++j)
            if (a.args[i] == a.args[j])
                throw Error(std::string(where) + ": repeated argument " + a.args[i] + " in " +
                            to_string(a));
    }
}

}  // namespace

Program::Program(std::vector<Rule> rules) : rules_(std::move(rules)) {
    for (std::size_t i = 0; i < rules_.size(); ++i) {
        const Rule& r = rules_[i];
        check_atom(r.head, "rule head");
        if (r.id.predicate != r.head.predicate || r.id.arity != r.head.arity())
            throw Error("rule id " + r.id.to_string() + " does not match its head");
        for (const Literal& lit : r.body) {
            if (const auto* c = std::get_if<Constraint>(&lit)) {
                if (!valid_variable_name(c->var))
                    throw Error("constraint left side must be a variable");
            } else {
                check_atom(std::get<Call>(lit).atom, "body call");
            }
        }
        auto& slot = index_[r.key()];
        if (!slot.empty() && rules_[slot.front()].head.args != r.head.args)
            throw Error("rules of " + r.key().to_string() + " do not share one head");
        if (r.id.ordinal != slot.size() + 1)
            throw Error("rule ordinals of " + r.key().to_string() + " are not dense");
        slot.push_back(i);
    }
}

std::vector<const Rule*> Program::rules_for(const PredicateKey& key) const {
    std::vector<const Rule*> out;
    if (auto it = index_.find(key); it != index_.end())
        for (std::size_t i : it->second) out.push_back(&rules_[i]);
    return out;
}

std::vector<PredicateKey> Program::predicates() const {
    std::vector<PredicateKey> out;
    for (const auto& [key, _] : index_) out.push_back(key);
    return out;
}

const Rule* Program::find_rule(const RuleId& id) const {
    auto it = index_.find(id.key());
    if (it == index_.end() || id.ordinal == 0 || id.ordinal > it->second.size()) return nullptr;
    return &rules_[it->second[id.ordinal - 1]];
}

std::optional<std::vector<std::string>> Program::head_variables(const PredicateKey& key) const {
    auto it = index_.find(key);
    if (it == index_.end()) return std::nullopt;
    return rules_[it->second.front()].head.args;
}

// ---------------------------------------------------------------------------
// Normalization

namespace {

class FreshNames {
public:
    explicit FreshNames(std::set<std::string> used) : used_(std::move(used)) {}

    std::string with_base(const std::string& base) {
        for (std::size_t k = 1;; ++k) {
            std::string candidate = base + std::to_string(k);
            if (used_.insert(candidate).second) return candidate;
        }
    }

    // Head positions prefer X, Y, Z before falling back to suffixed names.
    std::string for_head() {
        for (const char* name : {"X", "Y", "Z"})
            if (used_.insert(name).second) return name;
        return with_base("X");
    }

    void reserve(const std::string& name) { used_.insert(name); }

private:
    std::set<std::string> used_;
};

std::set<std::string> clause_variables(const Clause& c) {
    std::vector<std::string> vars;
    for (const Term& t : c.head_args) collect_variables(t, vars);
    for (const RawLiteral& lit : c.body) {
        if (const auto* e = std::get_if<Equation>(&lit)) {
            collect_variables(e->lhs, vars);
            collect_variables(e->rhs, vars);
        } else {
            for (const Term& t : std::get<RawCall>(lit).args) collect_variables(t, vars);
        }
    }
    return {vars.begin(), vars.end()};
}

Rule normalize_clause(const Clause& c) {
    FreshNames fresh(clause_variables(c));
    Rule r;
    r.head.predicate = c.predicate;

    std::set<std::string> head_seen;
    for (const Term& arg : c.head_args) {
        if (arg.is_variable() && head_seen.insert(arg.name).second) {
            r.head.args.push_back(arg.name);
            continue;
        }
        std::string v = fresh.for_head();
        head_seen.insert(v);
        r.head.args.push_back(v);
        if (arg.is_variable())
            r.body.push_back(Constraint{arg.name, Term::variable(v)});
        else
            r.body.push_back(Constraint{v, arg});
    }

    for (const RawLiteral& lit : c.body) {
        if (const auto* e = std::get_if<Equation>(&lit)) {
            if (e->lhs.is_variable()) {
                r.body.push_back(Constraint{e->lhs.name, e->rhs});
            } else if (e->rhs.is_variable()) {
                r.body.push_back(Constraint{e->rhs.name, e->lhs});
            } else {
                std::string v = fresh.with_base("N");
                r.body.push_back(Constraint{v, e->lhs});
                r.body.push_back(Constraint{v, e->rhs});
            }
            continue;
        }
        const auto& call = std::get<RawCall>(lit);
        Atom atom{call.predicate, {}};
        std::set<std::string> seen;
        for (const Term& arg : call.args) {
            if (arg.is_variable() && seen.insert(arg.name).second) {
                atom.args.push_back(arg.name);
                continue;
            }
            std::string v = fresh.with_base("N");
            seen.insert(v);
            atom.args.push_back(v);
            r.body.push_back(Constraint{v, arg});
        }
        r.body.push_back(Call{std::move(atom)});
    }
    r.id = {r.head.predicate, r.head.arity(), 0};
    return r;
}

// Renames `r` so that its head variables become `canon`.
Rule align_head(const Rule& r, const std::vector<std::string>& canon) {
    if (r.head.args == canon) return r;
    std::set<std::string> used;
    for (const auto& v : rule_variables(r)) used.insert(v);
    for (const auto& v : canon) used.insert(v);
    FreshNames fresh(used);

    Renaming renaming;
    for (std::size_t i = 0; i < canon.size(); ++i) renaming.forward[r.head.args[i]] = canon[i];
    std::set<std::string> targets(canon.begin(), canon.end());
    for (const auto& v : rule_variables(r)) {
        if (renaming.forward.count(v)) continue;
        if (targets.count(v)) renaming.forward[v] = fresh.with_base(v);
    }
    return apply_renaming(r, renaming);
}

}  // namespace

Program normalize(const std::vector<Clause>& clauses) {
    std::vector<Rule> rules;
    std::map<PredicateKey, std::vector<std::string>> heads;
    std::map<PredicateKey, std::size_t> ordinals;
    rules.reserve(clauses.size());
    for (const Clause& c : clauses) {
        Rule r = normalize_clause(c);
        const PredicateKey key = r.key();
        auto [it, inserted] = heads.emplace(key, r.head.args);
        if (!inserted) r = align_head(r, it->second);
        r.id.ordinal = ++ordinals[key];
        rules.push_back(std::move(r));
    }
    return Program(std::move(rules));
}

namespace {

Clause to_clause(const Rule& r) {
    Clause c;
    c.predicate = r.head.predicate;
    for (const auto& v : r.head.args) c.head_args.push_back(Term::variable(v));
    for (const Literal& lit : r.body) {
        if (const auto* k = std::get_if<Constraint>(&lit)) {
            c.body.push_back(Equation{Term::variable(k->var), k->rhs});
        } else {
            const Atom& a = std::get<Call>(lit).atom;
            RawCall call{a.predicate, {}};
            for (const auto& v : a.args) call.args.push_back(Term::variable(v));
            c.body.push_back(std::move(call));
        }
    }
    return c;
}

}  // namespace

Program normalize(const std::vector<Rule>& rules) {
    std::vector<Clause> clauses;
    clauses.reserve(rules.size());
    for (const Rule& r : rules) clauses.push_back(to_clause(r));
    return normalize(clauses);
}

Program normalize(const Program& p) { return normalize(p.rules()); }

// ---------------------------------------------------------------------------
// Renaming

Renaming Renaming::inverse() const {
    Renaming inv;
    for (const auto& [from, to] : forward) inv.forward[to] = from;
    return inv;
}

namespace {

std::string rename_var(const std::string& v, const Renaming& ren) {
    auto it = ren.forward.find(v);
    return it == ren.forward.end() ? v : it->second;
}

Term rename_term(const Term& t, const Renaming& ren) {
    if (t.is_variable()) return Term::variable(rename_var(t.name, ren));
    Term out = Term::function(t.name);
    out.args.reserve(t.args.size());
    for (const Term& a : t.args) out.args.push_back(rename_term(a, ren));
    return out;
}

Atom rename_atom(const Atom& a, const Renaming& ren) {
    Atom out{a.predicate, {}};
    for (const auto& v : a.args) out.args.push_back(rename_var(v, ren));
    return out;
}

}  // namespace

Rule apply_renaming(const Rule& r, const Renaming& renaming) {
    Rule out;
    out.id = r.id;
    out.head = rename_atom(r.head, renaming);
    for (const Literal& lit : r.body) {
        if (const auto* c = std::get_if<Constraint>(&lit))
            out.body.push_back(Constraint{rename_var(c->var, renaming), rename_term(c->rhs, renaming)});
        else
            out.body.push_back(Call{rename_atom(std::get<Call>(lit).atom, renaming)});
    }
    return out;
}

Rule rename_rule(const Rule& r, const std::set<std::string>& avoid, Renaming* applied) {
    const auto vars = rule_variables(r);
    std::set<std::string> taken(avoid);
    taken.insert(vars.begin(), vars.end());
    Renaming renaming;
    for (const auto& v : vars) {
        if (!avoid.count(v)) continue;
        for (std::size_t k = 1;; ++k) {
            std::string candidate = v + std::to_string(k);
            if (taken.insert(candidate).second) {
                renaming.forward[v] = candidate;
                break;
            }
        }
    }
    if (applied) *applied = renaming;
    return apply_renaming(r, renaming);
}

std::string canonical_rule_text(const Rule& r) {
    Renaming renaming;
    std::size_t n = 0;
    for (const auto& v : rule_variables(r)) renaming.forward[v] = "_" + std::to_string(n++);
    return to_string(apply_renaming(r, renaming));
}

bool variant_of(const Rule& a, const Rule& b) {
    return canonical_rule_text(a) == canonical_rule_text(b);
}

// ---------------------------------------------------------------------------
// Printing

namespace {

bool plain_name(const std::string& name) {
    if (name == "[]") return true;
    if (std::all_of(name.begin(), name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        return !name.empty();
    if (!std::islower(static_cast<unsigned char>(name[0]))) return false;
    return std::all_of(name.begin(), name.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

bool is_cons(const Term& t) {
    return !t.is_variable() && t.name == "." && t.args.size() == 2;
}

void print_term(std::ostream& os, const Term& t) {
    if (t.is_variable()) {
        os << t.name;
        return;
    }
    if (is_cons(t)) {
        os << '[';
        const Term* cur = &t;
        bool first = true;
        while (is_cons(*cur)) {
            if (!first) os << ',';
            print_term(os, cur->args[0]);
            first = false;
            cur = &cur->args[1];
        }
        if (!(cur->kind == Term::Kind::Function && cur->name == "[]" && cur->args.empty())) {
            os << '|';
            print_term(os, *cur);
        }
        os << ']';
        return;
    }
    if (plain_name(t.name))
        os << t.name;
    else
        os << '\'' << t.name << '\'';
    if (!t.args.empty()) {
        os << '(';
        for (std::size_t i = 0; i < t.args.size(); ++i) {
            if (i) os << ',';
            print_term(os, t.args[i]);
        }
        os << ')';
    }
}

}  // namespace

std::string to_string(const Term& t) {
    std::ostringstream os;
    print_term(os, t);
    return os.str();
}

std::string to_string(const Atom& a) {
    std::string out = plain_name(a.predicate) ? a.predicate : "'" + a.predicate + "'";
    if (a.args.empty()) return out;
    out += '(';
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (i) out += ',';
        out += a.args[i];
    }
    return out + ')';
}

std::string to_string(const Literal& l) {
    if (const auto* c = std::get_if<Constraint>(&l)) return c->var + " = " + to_string(c->rhs);
    return to_string(std::get<Call>(l).atom);
}

std::string to_string(const Rule& r) {
    std::string out = to_string(r.head);
    if (!r.body.empty()) {
        out += " :- ";
        for (std::size_t i = 0; i < r.body.size(); ++i) {
            if (i) out += ", ";
            out += to_string(r.body[i]);
        }
    }
    return out + '.';
}

std::string to_string(const Program& p) {
    std::string out;
    for (const Rule& r : p.rules()) out += to_string(r) + '\n';
    return out;
}

}  // namespace acc
