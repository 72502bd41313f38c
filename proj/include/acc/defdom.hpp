#pragma once

// The Def domain of definite Boolean functions, represented by explicit
// model sets. A model is a bit set over the value's scope (bit i set means
// scope[i] is ground). Non-bottom values contain the all-true model and are
// closed under intersection; bottom is a separate marker.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "acc/lprog.hpp"

namespace acc {

using Scope = std::vector<std::string>;
using Model = std::uint32_t;

inline constexpr std::size_t kMaxScope = 24;

class DefValue {
public:
    // Bottom over the empty scope.
    DefValue() = default;

    static DefValue top(const Scope& scope);
    static DefValue bottom(const Scope& scope);

    // Closes `models` under intersection and adds the all-true model if the
    // set is non-empty; an empty set yields bottom.
    static DefValue from_models(const Scope& scope, std::vector<Model> models);

    // Rejects sets that are not already valid Def elements.
    static DefValue from_exact_models(const Scope& scope, std::vector<Model> models);

    const Scope& scope() const { return scope_; }
    const std::vector<Model>& models() const { return models_; }
    bool is_bottom() const { return bottom_; }
    bool is_top() const;
    Model full_model() const;

    // Same models positionally, ignoring variable names.
    bool same_shape(const DefValue& other) const {
        return bottom_ == other.bottom_ && models_ == other.models_ &&
               scope_.size() == other.scope_.size();
    }

    friend bool operator==(const DefValue&, const DefValue&) = default;

private:
    DefValue(Scope scope, std::vector<Model> models, bool bottom);

    Scope scope_;
    std::vector<Model> models_;  // sorted ascending, unique
    bool bottom_ = true;
};

void check_scope(const Scope& scope);

// Def description of `var = rhs`: var <-> conjunction of vars(rhs).
DefValue abstract_constraint(const Constraint& c, const Scope& scope);

DefValue meet(const DefValue& a, const DefValue& b);
DefValue alub(const DefValue& a, const DefValue& b);
bool leq(const DefValue& a, const DefValue& b);

// Restriction of every model to `sub` (any order), re-closed under intersection.
DefValue project(const DefValue& a, const Scope& sub);

// Pointwise renaming of the scope; must be injective on it.
DefValue rename(const DefValue& a, const std::map<std::string, std::string>& mapping);

// Same models over a different scope of equal size (positional reinterpretation).
DefValue with_scope(const DefValue& a, const Scope& scope);

// Cylindrification into `superscope`: new variables are unconstrained.
DefValue extend(const DefValue& a, const Scope& superscope);

// Checks the two structural invariants; true for bottom.
bool is_valid_def(const Scope& scope, const std::vector<Model>& models);

// `bot`, `true`, or `models([..];[..])` with each model listed in scope order
// and models sorted lexicographically by scope position.
std::string to_string(const DefValue& v);

}  // namespace acc
