#pragma once

// Program updates: per-predicate sets of added and deleted rules, the diff and
// patch operators over programs, and the classification of updates.

#include <optional>
#include <string>
#include <vector>

#include "acc/lprog.hpp"

namespace acc {

struct UpdateTuple {
    Atom atom;  // base form of the predicate
    std::vector<Rule> add;
    std::vector<Rule> del;

    PredicateKey key() const { return {atom.predicate, atom.arity()}; }
};

struct Update {
    std::vector<UpdateTuple> tuples;  // one per predicate, sorted by predicate

    bool empty() const;
    const UpdateTuple* find(const PredicateKey& key) const;
};

enum class UpdateClass { Empty, Addition, Deletion, Arbitrary };

std::string to_string(UpdateClass c);

// Rules of `next` absent from `prev` are added, rules of `prev` absent from
// `next` deleted; rules are compared modulo variable renaming.
Update diff(const Program& next, const Program& prev);

// Deletes, then appends the added rules after the surviving rules of their
// predicate. Throws PatchConflict when a deletion matches no rule.
Program patch(const Program& prev, const Update& u);

UpdateClass classify(const Update& u);

}  // namespace acc
