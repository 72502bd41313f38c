#include "oracle.hpp"

#include <algorithm>
#include <deque>
#include <variant>

namespace oracle {

Models close(const Models& m) {
    Models out = m;
    bool grew = true;
    while (grew) {
        grew = false;
        const std::vector<std::uint32_t> v(out.begin(), out.end());
        for (auto a : v)
            for (auto b : v)
                if (out.insert(a & b).second) grew = true;
    }
    return out;
}

bool is_def(std::size_t n, const Models& m) {
    if (m.empty()) return true;
    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    return m.count(full) && close(m) == m;
}

std::vector<Models> all_def(std::size_t n) {
    const std::uint32_t count = std::uint32_t{1} << n;
    std::vector<Models> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << count); ++mask) {
        Models m;
        for (std::uint32_t i = 0; i < count; ++i)
            if (mask >> i & 1) m.insert(i);
        if (is_def(n, m)) out.push_back(m);
    }
    return out;
}

Models lub(const Models& a, const Models& b) {
    Models u = a;
    u.insert(b.begin(), b.end());
    return close(u);
}

Models glb(const Models& a, const Models& b) {
    Models out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

bool le(const Models& a, const Models& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

namespace {

std::uint32_t pick(std::uint32_t m, const std::vector<std::size_t>& positions) {
    std::uint32_t out = 0;
    for (std::size_t i = 0; i < positions.size(); ++i)
        if (m >> positions[i] & 1) out |= std::uint32_t{1} << i;
    return out;
}

void term_vars(const acc::Term& t, std::vector<std::string>& out) {
    if (t.is_variable()) {
        if (std::find(out.begin(), out.end(), t.name) == out.end()) out.push_back(t.name);
        return;
    }
    for (const auto& a : t.args) term_vars(a, out);
}

struct RuleShape {
    std::vector<std::string> vars;
    std::size_t index(const std::string& v) const {
        return std::find(vars.begin(), vars.end(), v) - vars.begin();
    }
    std::vector<std::size_t> positions(const std::vector<std::string>& names) const {
        std::vector<std::size_t> out;
        for (const auto& n : names) out.push_back(index(n));
        return out;
    }
};

RuleShape shape_of(const acc::Rule& r) {
    RuleShape s;
    s.vars = r.head.args;
    for (const auto& lit : r.body) {
        if (const auto* c = std::get_if<acc::Constraint>(&lit)) {
            term_vars(acc::Term::variable(c->var), s.vars);
            term_vars(c->rhs, s.vars);
        } else {
            for (const auto& v : std::get<acc::Call>(lit).atom.args)
                term_vars(acc::Term::variable(v), s.vars);
        }
    }
    return s;
}

struct Traversal {
    Models exit;
    std::vector<std::pair<std::size_t, Key>> calls;  // literal index, callee
};

template <class Lookup>
Traversal traverse(const acc::Rule& r, const Models& cp, Lookup&& lookup) {
    const RuleShape s = shape_of(r);
    const std::size_t n = s.vars.size();
    const auto head = s.positions(r.head.args);
    Models state;
    for (std::uint32_t m = 0; m < (std::uint32_t{1} << n); ++m)
        if (cp.count(pick(m, head))) state.insert(m);

    Traversal out;
    for (std::size_t i = 0; i < r.body.size() && !state.empty(); ++i) {
        Models next;
        if (const auto* c = std::get_if<acc::Constraint>(&r.body[i])) {
            std::vector<std::string> rhs;
            term_vars(c->rhs, rhs);
            const std::size_t x = s.index(c->var);
            for (auto m : state) {
                bool all = true;
                for (const auto& v : rhs) all = all && (m >> s.index(v) & 1);
                if (bool(m >> x & 1) == all) next.insert(m);
            }
        } else {
            const auto& atom = std::get<acc::Call>(r.body[i]).atom;
            const auto args = s.positions(atom.args);
            Key callee{atom.predicate, atom.args.size(), restrict(state, args)};
            const Models answer = lookup(callee);
            out.calls.emplace_back(i + 1, callee);
            for (auto m : state)
                if (answer.count(pick(m, args))) next.insert(m);
        }
        state = std::move(next);
    }
    out.exit = restrict(state, head);
    return out;
}

}  // namespace

Models restrict(const Models& a, const std::vector<std::size_t>& positions) {
    Models out;
    for (auto m : a) out.insert(pick(m, positions));
    return close(out);
}

Models models_of(const acc::DefValue& v) {
    if (v.is_bottom()) return {};
    return Models(v.models().begin(), v.models().end());
}

Key key_of(const acc::CallPattern& c) { return Key{c.atom.predicate, c.atom.arity(), models_of(c.cp)}; }

Fixpoint analyze(const acc::Program& p, const std::vector<acc::CallPattern>& queries) {
    std::map<Key, Models> table;
    std::vector<Key> roots;
    for (const auto& q : queries) {
        roots.push_back(key_of(q));
        table.emplace(roots.back(), Models{});
    }
    auto rules_of = [&](const Key& k) { return p.rules_for({k.predicate, k.arity}); };

    for (bool changed = true; changed;) {
        changed = false;
        const auto snapshot = table;
        for (const auto& [key, old] : snapshot) {
            Models answer;
            for (const acc::Rule* r : rules_of(key)) {
                Traversal t = traverse(*r, key.cp, [&](const Key& callee) {
                    auto it = table.find(callee);
                    if (it == table.end()) {
                        table.emplace(callee, Models{});
                        changed = true;
                        return Models{};
                    }
                    return it->second;
                });
                answer = lub(answer, t.exit);
            }
            if (answer != table[key]) {
                table[key] = answer;
                changed = true;
            }
        }
    }

    Fixpoint out;
    std::deque<Key> queue(roots.begin(), roots.end());
    while (!queue.empty()) {
        Key key = queue.front();
        queue.pop_front();
        if (out.answers.count(key)) continue;
        out.answers[key] = table.at(key);
        for (const acc::Rule* r : rules_of(key)) {
            Traversal t = traverse(*r, key.cp, [&](const Key& callee) { return table.at(callee); });
            for (const auto& [lit, callee] : t.calls) {
                out.arcs.insert(Arc{key, r->id.ordinal, lit, callee});
                queue.push_back(callee);
            }
        }
    }
    return out;
}

}  // namespace oracle
