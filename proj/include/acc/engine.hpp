#pragma once

// Goal-dependent fixpoint analysis over the Def domain. The analysis graph is
// kept as an answer table (call pattern -> success description) and a
// dependency arc table recording which body call of which rule consumed which
// answer.

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "acc/defdom.hpp"
#include "acc/lprog.hpp"

namespace acc {

// Identity of a call pattern: predicate, arity and the call description read
// positionally, so `app(W,T,Y):W` and `app(X,Y,Z):X` share a key.
struct EntryKey {
    std::string predicate;
    std::size_t arity = 0;
    bool bottom = false;
    std::vector<Model> models;

    PredicateKey predicate_key() const { return {predicate, arity}; }

    friend auto operator<=>(const EntryKey&, const EntryKey&) = default;
};

struct CallPattern {
    Atom atom;
    DefValue cp;  // scope == atom.args

    CallPattern() = default;
    CallPattern(Atom atom, DefValue cp);

    EntryKey key() const;
};

// `rev(X,Y):true`
std::string to_string(const CallPattern& c);

// Renames a call pattern to the predicate's base-form head in `p`; predicates
// without rules keep the names they were written with.
CallPattern base_form(const Program& p, const CallPattern& c);

struct Entry {
    CallPattern call;
    DefValue answer;  // scope == call.atom.args
    bool checked = false;
};

class AnswerTable {
public:
    using Map = std::map<EntryKey, Entry>;

    const Entry* find(const EntryKey& key) const;
    Entry* find(const EntryKey& key);
    bool contains(const EntryKey& key) const { return entries_.count(key) != 0; }

    // Inserts or replaces; the answer is re-scoped to the call's atom.
    Entry& set(const CallPattern& call, const DefValue& answer);
    bool erase(const EntryKey& key) { return entries_.erase(key) != 0; }

    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    Map::const_iterator begin() const { return entries_.begin(); }
    Map::const_iterator end() const { return entries_.end(); }

    std::vector<EntryKey> keys() const;

private:
    Map entries_;
};

// Same keys with positionally equal answers.
bool same_answers(const AnswerTable& a, const AnswerTable& b);

// A_k:CP => B_{k,i}:CP' at body position `literal` (1-based) of `rule`.
struct DependencyArc {
    CallPattern head;
    RuleId rule;
    std::size_t literal = 0;
    Atom body_atom;
    DefValue body_cp;  // scope == body_atom.args

    EntryKey head_key() const { return head.key(); }
    EntryKey body_key() const { return CallPattern(body_atom, body_cp).key(); }
};

// Arcs are identified by their slot; the table holds at most one arc per slot.
struct ArcSlot {
    EntryKey head;
    RuleId rule;
    std::size_t literal = 0;

    friend auto operator<=>(const ArcSlot&, const ArcSlot&) = default;
};

ArcSlot slot_of(const DependencyArc& arc);
bool same_arc(const DependencyArc& a, const DependencyArc& b);

// Sorted by slot.
void sort_arcs(std::vector<DependencyArc>& arcs);
bool same_arcs(std::vector<DependencyArc> a, std::vector<DependencyArc> b);

// `rev(X,Y):true => rev/2/2#4 app(W,T,Y):true`
std::string to_string(const DependencyArc& arc);

struct AnalysisStats {
    std::size_t traversals = 0;      // rule traversals, full or resumed
    std::size_t answer_updates = 0;  // strict increases of some answer
    std::size_t entries_created = 0;
};

struct AnalysisResult {
    AnswerTable at;
    std::vector<DependencyArc> dat;  // sorted by slot
    AnalysisStats stats;
};

// Answer source for body calls; nullopt means "no entry for this call".
using AnswerLookup = std::function<std::optional<DefValue>(const CallPattern& call)>;

struct BodyTraversal {
    DefValue exit;  // over the rule's head variables
    std::vector<DependencyArc> arcs;
    std::vector<CallPattern> unresolved;  // calls the lookup could not answer
    // Description in force just before each call position reached.
    std::vector<std::pair<std::size_t, DefValue>> states;
};

// Processes the body of `rule` for `entry`, starting at literal `from`
// (1-based). When `from` > 1, `resume` is the description saved for that
// position. Unresolved calls contribute bottom.
BodyTraversal traverse_body(const Program& p, const CallPattern& entry, const Rule& rule,
                            std::size_t from, const std::optional<DefValue>& resume,
                            const AnswerLookup& lookup);

// Least fixpoint for `queries`, restricted to the entries reachable from them
// through the final dependency arcs.
AnalysisResult analyze(const Program& p, const std::vector<CallPattern>& queries);

// One application of the abstract semantics: every entry of `at` recomputed
// once with lookups answered from `at` only.
struct OneStep {
    std::map<EntryKey, DefValue> answers;
    std::optional<CallPattern> missing;
    std::size_t traversals = 0;
};

OneStep one_step(const Program& p, const AnswerTable& at);

// Keeps the entries reachable from `roots` over `arcs`, and the arcs headed by
// them. Roots absent from `at` are ignored.
void restrict_to_reachable(AnswerTable& at, std::vector<DependencyArc>& arcs,
                           const std::vector<EntryKey>& roots);

}  // namespace acc
