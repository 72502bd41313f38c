#include "acc/engine.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "acc/error.hpp"

namespace acc {

CallPattern::CallPattern(Atom a, DefValue d) : atom(std::move(a)), cp(std::move(d)) {
    if (cp.scope() != atom.args) {
        if (cp.scope().size() != atom.args.size())
            throw ScopeError("call description of " + to_string(atom) + " has the wrong arity");
        cp = with_scope(cp, atom.args);
    }
}

EntryKey CallPattern::key() const {
    return EntryKey{atom.predicate, atom.arity(), cp.is_bottom(), cp.models()};
}

std::string to_string(const CallPattern& c) {
    return to_string(c.atom) + ":" + to_string(c.cp);
}

CallPattern base_form(const Program& p, const CallPattern& c) {
    auto head = p.head_variables({c.atom.predicate, c.atom.arity()});
    if (!head || *head == c.atom.args) return c;
    return CallPattern(Atom{c.atom.predicate, *head}, with_scope(c.cp, *head));
}

// ---------------------------------------------------------------------------
// Answer table

const Entry* AnswerTable::find(const EntryKey& key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
}

Entry* AnswerTable::find(const EntryKey& key) {
    auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
}

Entry& AnswerTable::set(const CallPattern& call, const DefValue& answer) {
    if (answer.scope().size() != call.atom.arity())
        throw ScopeError("answer for " + to_string(call) + " has the wrong arity");
    Entry& e = entries_[call.key()];
    e.call = call;
    e.answer = with_scope(answer, call.atom.args);
    return e;
}

std::vector<EntryKey> AnswerTable::keys() const {
    std::vector<EntryKey> out;
    out.reserve(entries_.size());
    for (const auto& [k, _] : entries_) out.push_back(k);
    return out;
}

bool same_answers(const AnswerTable& a, const AnswerTable& b) {
    if (a.size() != b.size()) return false;
    for (const auto& [key, entry] : a) {
        const Entry* other = b.find(key);
        if (!other || !entry.answer.same_shape(other->answer)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Arcs

ArcSlot slot_of(const DependencyArc& arc) {
    return ArcSlot{arc.head_key(), arc.rule, arc.literal};
}

bool same_arc(const DependencyArc& a, const DependencyArc& b) {
    return slot_of(a) == slot_of(b) && a.body_atom == b.body_atom &&
           a.body_cp.same_shape(b.body_cp);
}

void sort_arcs(std::vector<DependencyArc>& arcs) {
    std::sort(arcs.begin(), arcs.end(), [](const DependencyArc& x, const DependencyArc& y) {
        return slot_of(x) < slot_of(y);
    });
}

bool same_arcs(std::vector<DependencyArc> a, std::vector<DependencyArc> b) {
    if (a.size() != b.size()) return false;
    sort_arcs(a);
    sort_arcs(b);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!same_arc(a[i], b[i])) return false;
    return true;
}

std::string to_string(const DependencyArc& arc) {
    return to_string(arc.head) + " => " + arc.rule.to_string() + "#" +
           std::to_string(arc.literal) + " " + to_string(CallPattern(arc.body_atom, arc.body_cp));
}

// ---------------------------------------------------------------------------
// Body traversal

BodyTraversal traverse_body(const Program& p, const CallPattern& entry, const Rule& rule,
                            std::size_t from, const std::optional<DefValue>& resume,
                            const AnswerLookup& lookup) {
    (void)p;
    if (entry.atom.predicate != rule.head.predicate || entry.atom.arity() != rule.head.arity())
        throw std::invalid_argument("traverse_body: rule " + rule.id.to_string() +
                                    " does not define " + to_string(entry.atom));
    const Scope scope = rule_variables(rule);
    check_scope(scope);

    DefValue d;
    if (from <= 1) {
        from = 1;
        d = extend(with_scope(entry.cp, rule.head.args), scope);
    } else {
        if (!resume || resume->scope() != scope)
            throw std::invalid_argument("traverse_body: resuming " + rule.id.to_string() +
                                        " needs the saved description");
        d = *resume;
    }

    BodyTraversal out;
    for (std::size_t i = from; i <= rule.body.size() && !d.is_bottom(); ++i) {
        const Literal& lit = rule.body[i - 1];
        if (const auto* c = std::get_if<Constraint>(&lit)) {
            d = meet(d, abstract_constraint(*c, scope));
            continue;
        }
        const Atom& atom = std::get<Call>(lit).atom;
        out.states.emplace_back(i, d);
        CallPattern called(atom, project(d, atom.args));
        out.arcs.push_back(DependencyArc{entry, rule.id, i, atom, called.cp});
        std::optional<DefValue> answer = lookup(called);
        DefValue ap = DefValue::bottom(atom.args);
        if (answer)
            ap = with_scope(*answer, atom.args);
        else
            out.unresolved.push_back(called);
        d = meet(d, extend(ap, scope));
    }
    out.exit = project(d, rule.head.args);
    return out;
}

// ---------------------------------------------------------------------------
// Fixpoint

namespace {

class Analyzer {
public:
    explicit Analyzer(const Program& p) : p_(p) {}

    EntryKey ensure(const CallPattern& call) {
        CallPattern base = base_form(p_, call);
        EntryKey key = base.key();
        if (at_.contains(key)) return key;
        at_.set(base, DefValue::bottom(base.atom.args));
        ++stats_.entries_created;
        for (const Rule* r : p_.rules_for(key.predicate_key())) enqueue({key, r->id.ordinal, 1});
        return key;
    }

    void run() {
        while (!queue_.empty()) {
            Event ev = queue_.front();
            queue_.pop_front();
            pending_.erase(ev);
            process(ev);
        }
    }

    AnalysisResult finish(const std::vector<EntryKey>& roots) {
        AnalysisResult result;
        result.at = std::move(at_);
        for (auto& [slot, arc] : arcs_) result.dat.push_back(std::move(arc));
        restrict_to_reachable(result.at, result.dat, roots);
        result.stats = stats_;
        return result;
    }

private:
    struct Event {
        EntryKey key;
        std::size_t ordinal;
        std::size_t from;

        friend auto operator<=>(const Event&, const Event&) = default;
    };

    void enqueue(Event ev) {
        if (pending_.insert(ev).second) queue_.push_back(std::move(ev));
    }

    void process(const Event& ev) {
        const CallPattern entry = at_.find(ev.key)->call;
        const RuleId id{ev.key.predicate, ev.key.arity, ev.ordinal};
        const Rule* rule = p_.find_rule(id);

        std::optional<DefValue> resume;
        if (ev.from > 1) resume = saved_.at(ArcSlot{ev.key, id, ev.from});

        AnswerLookup lookup = [this](const CallPattern& c) -> std::optional<DefValue> {
            const Entry* e = at_.find(c.key());
            if (!e) return std::nullopt;
            return e->answer;
        };
        BodyTraversal t = traverse_body(p_, entry, *rule, ev.from, resume, lookup);
        ++stats_.traversals;

        for (auto& [pos, d] : t.states) saved_[ArcSlot{ev.key, id, pos}] = std::move(d);
        for (auto& arc : t.arcs) {
            ArcSlot slot = slot_of(arc);
            arcs_[slot] = std::move(arc);
        }
        for (const CallPattern& c : t.unresolved) ensure(c);

        Entry* e = at_.find(ev.key);
        DefValue next = alub(e->answer, with_scope(t.exit, e->call.atom.args));
        if (next == e->answer) return;
        if (!leq(e->answer, next))
            throw std::logic_error("analysis answer for " + to_string(e->call) + " decreased");
        e->answer = std::move(next);
        ++stats_.answer_updates;
        for (const auto& [slot, arc] : arcs_)
            if (arc.body_key() == ev.key) enqueue({slot.head, slot.rule.ordinal, slot.literal});
    }

    const Program& p_;
    AnswerTable at_;
    std::map<ArcSlot, DependencyArc> arcs_;
    std::map<ArcSlot, DefValue> saved_;
    std::deque<Event> queue_;
    std::set<Event> pending_;
    AnalysisStats stats_;
};

}  // namespace

AnalysisResult analyze(const Program& p, const std::vector<CallPattern>& queries) {
    Analyzer analyzer(p);
    std::vector<EntryKey> roots;
    for (const CallPattern& q : queries) roots.push_back(analyzer.ensure(q));
    analyzer.run();
    return analyzer.finish(roots);
}

OneStep one_step(const Program& p, const AnswerTable& at) {
    OneStep out;
    AnswerLookup lookup = [&at](const CallPattern& c) -> std::optional<DefValue> {
        const Entry* e = at.find(c.key());
        if (!e) return std::nullopt;
        return e->answer;
    };
    for (const auto& [key, entry] : at) {
        DefValue answer = DefValue::bottom(entry.call.atom.args);
        for (const Rule* r : p.rules_for(key.predicate_key())) {
            BodyTraversal t = traverse_body(p, entry.call, *r, 1, std::nullopt, lookup);
            ++out.traversals;
            if (!t.unresolved.empty()) {
                out.missing = base_form(p, t.unresolved.front());
                return out;
            }
            answer = alub(answer, with_scope(t.exit, entry.call.atom.args));
        }
        out.answers.emplace(key, std::move(answer));
    }
    return out;
}

void restrict_to_reachable(AnswerTable& at, std::vector<DependencyArc>& arcs,
                           const std::vector<EntryKey>& roots) {
    std::multimap<EntryKey, EntryKey> edges;
    for (const auto& arc : arcs) edges.emplace(arc.head_key(), arc.body_key());

    std::set<EntryKey> seen;
    std::vector<EntryKey> stack;
    for (const auto& r : roots)
        if (at.contains(r) && seen.insert(r).second) stack.push_back(r);
    while (!stack.empty()) {
        EntryKey k = stack.back();
        stack.pop_back();
        auto [lo, hi] = edges.equal_range(k);
        for (auto it = lo; it != hi; ++it)
            if (at.contains(it->second) && seen.insert(it->second).second) stack.push_back(it->second);
    }

    for (const auto& k : at.keys())
        if (!seen.count(k)) at.erase(k);
    arcs.erase(std::remove_if(arcs.begin(), arcs.end(),
                              [&](const DependencyArc& a) { return !seen.count(a.head_key()); }),
               arcs.end());
    sort_arcs(arcs);
}

}  // namespace acc
