#include "acc/checker.hpp"

#include <deque>
#include <set>

namespace acc {

std::string Rejection::message() const {
    switch (kind) {
    case Kind::MissingEntry:
        return "missing entry: no certificate answer for " + to_string(entry);
    case Kind::InvalidAnswer: {
        std::string out = "invalid answer for " + to_string(entry);
        if (computed && claimed) {
            out += ": computed " + to_string(*computed) + ", certified " + to_string(*claimed);
            if (leq(*computed, with_scope(*claimed, computed->scope())))
                out += " (certified answer is not a fixpoint)";
        }
        return out;
    }
    }
    return {};
}

EntryCheck check_entry(const Program& p, const CallPattern& entry, const AnswerTable* overlay,
                       const AnswerTable& graph) {
    EntryCheck out;
    out.answer = DefValue::bottom(entry.atom.args);
    std::set<EntryKey> seen, from_overlay;

    AnswerLookup lookup = [&](const CallPattern& c) -> std::optional<DefValue> {
        const EntryKey key = c.key();
        const Entry* e = overlay ? overlay->find(key) : nullptr;
        if (e) {
            if (from_overlay.insert(key).second) out.overlay_calls.push_back(base_form(p, c));
        } else {
            e = graph.find(key);
        }
        if (!e) return std::nullopt;
        if (seen.insert(key).second) out.calls.push_back(base_form(p, c));
        return e->answer;
    };

    for (const Rule* r : p.rules_for({entry.atom.predicate, entry.atom.arity()})) {
        BodyTraversal t = traverse_body(p, entry, *r, 1, std::nullopt, lookup);
        ++out.traversals;
        if (!t.unresolved.empty()) {
            out.rejection = Rejection{Rejection::Kind::MissingEntry, base_form(p, t.unresolved.front()),
                                      std::nullopt, std::nullopt};
            return out;
        }
        out.answer = alub(out.answer, with_scope(t.exit, entry.atom.args));
        for (auto& arc : t.arcs) out.arcs.push_back(std::move(arc));
    }
    return out;
}

CheckResult check(const Program& p, const std::vector<CallPattern>& queries,
                  const Certificate& cert, CheckMode mode) {
    CheckResult out;
    std::deque<CallPattern> queue;
    std::set<EntryKey> visited;
    for (const CallPattern& q : queries) {
        CallPattern base = base_form(p, q);
        if (visited.insert(base.key()).second) queue.push_back(base);
    }

    std::optional<Rejection> not_fixpoint;
    while (!queue.empty()) {
        const CallPattern call = queue.front();
        queue.pop_front();
        const Entry* claim = cert.find(call.key());
        if (!claim) {
            out.rejection = Rejection{Rejection::Kind::MissingEntry, call, std::nullopt, std::nullopt};
            return out;
        }
        EntryCheck ec = check_entry(p, claim->call, nullptr, cert);
        out.traversals += ec.traversals;
        if (ec.rejection) {
            out.rejection = std::move(ec.rejection);
            return out;
        }
        const DefValue computed = with_scope(ec.answer, claim->answer.scope());
        if (!leq(computed, claim->answer)) {
            out.rejection = Rejection{Rejection::Kind::InvalidAnswer, claim->call, computed, claim->answer};
            return out;
        }
        if (mode == CheckMode::Strict && !(computed == claim->answer) && !not_fixpoint)
            not_fixpoint = Rejection{Rejection::Kind::InvalidAnswer, claim->call, computed, claim->answer};

        out.at.set(claim->call, claim->answer);
        for (auto& arc : ec.arcs) out.dat.push_back(std::move(arc));
        for (const CallPattern& c : ec.calls)
            if (visited.insert(c.key()).second) queue.push_back(c);
    }
    if (not_fixpoint) {
        out.rejection = std::move(not_fixpoint);
        return out;
    }
    for (const auto& [key, entry] : cert)
        if (!visited.count(key)) out.unused.push_back(entry.call);
    sort_arcs(out.dat);
    return out;
}

}  // namespace acc
