#include "acc/update.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "acc/error.hpp"

namespace acc {

bool Update::empty() const {
    return std::all_of(tuples.begin(), tuples.end(),
                       [](const UpdateTuple& t) { return t.add.empty() && t.del.empty(); });
}

const UpdateTuple* Update::find(const PredicateKey& key) const {
    for (const auto& t : tuples)
        if (t.key() == key) return &t;
    return nullptr;
}

std::string to_string(UpdateClass c) {
    switch (c) {
    case UpdateClass::Empty: return "empty";
    case UpdateClass::Addition: return "addition";
    case UpdateClass::Deletion: return "deletion";
    case UpdateClass::Arbitrary: return "arbitrary";
    }
    return "?";
}

Update diff(const Program& next, const Program& prev) {
    std::set<PredicateKey> preds;
    for (const auto& k : next.predicates()) preds.insert(k);
    for (const auto& k : prev.predicates()) preds.insert(k);

    Update u;
    for (const PredicateKey& key : preds) {
        const auto new_rules = next.rules_for(key);
        const auto old_rules = prev.rules_for(key);
        std::vector<std::string> old_text;
        for (const Rule* r : old_rules) old_text.push_back(canonical_rule_text(*r));
        std::vector<bool> matched(old_rules.size(), false);

        UpdateTuple t;
        auto head = next.head_variables(key);
        if (!head) head = prev.head_variables(key);
        t.atom = Atom{key.name, *head};

        for (const Rule* r : new_rules) {
            const std::string text = canonical_rule_text(*r);
            bool found = false;
            for (std::size_t i = 0; i < old_rules.size() && !found; ++i) {
                if (!matched[i] && old_text[i] == text) matched[i] = found = true;
            }
            if (!found) t.add.push_back(*r);
        }
        for (std::size_t i = 0; i < old_rules.size(); ++i)
            if (!matched[i]) t.del.push_back(*old_rules[i]);
        if (!t.add.empty() || !t.del.empty()) u.tuples.push_back(std::move(t));
    }
    return u;
}

Program patch(const Program& prev, const Update& u) {
    std::vector<Rule> rules = prev.rules();
    for (const UpdateTuple& t : u.tuples) {
        for (const Rule& d : t.del) {
            const std::string text = canonical_rule_text(d);
            auto it = std::find_if(rules.begin(), rules.end(), [&](const Rule& r) {
                return r.key() == t.key() && canonical_rule_text(r) == text;
            });
            if (it == rules.end())
                throw PatchConflict("cannot delete rule `" + to_string(d) +
                                    "`: no matching rule in the program");
            rules.erase(it);
        }
        auto last = std::find_if(rules.rbegin(), rules.rend(),
                                 [&](const Rule& r) { return r.key() == t.key(); });
        auto pos = last == rules.rend() ? rules.end() : last.base();
        for (const Rule& a : t.add) {
            if (a.key() != t.key())
                throw PatchConflict("rule `" + to_string(a) + "` does not define " +
                                    t.key().to_string());
            pos = rules.insert(pos, a) + 1;
        }
    }
    return normalize(rules);
}

UpdateClass classify(const Update& u) {
    bool any_add = false, any_del = false;
    for (const auto& t : u.tuples) {
        any_add = any_add || !t.add.empty();
        any_del = any_del || !t.del.empty();
    }
    if (!any_add && !any_del) return UpdateClass::Empty;
    if (!any_del) return UpdateClass::Addition;
    if (!any_add) return UpdateClass::Deletion;
    return UpdateClass::Arbitrary;
}

}  // namespace acc
