#include "acc/defdom.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>
#include <utility>

#include "acc/error.hpp"

namespace acc {

namespace {

Model full_for(std::size_t n) {
    return n == 0 ? 0u : static_cast<Model>((std::uint64_t{1} << n) - 1);
}

void normalize_set(std::vector<Model>& models) {
    std::sort(models.begin(), models.end());
    models.erase(std::unique(models.begin(), models.end()), models.end());
}

// Closure under pairwise intersection.
std::vector<Model> intersection_closure(std::vector<Model> models) {
    normalize_set(models);
    std::unordered_set<Model> present(models.begin(), models.end());
    std::vector<Model> pending(models);
    while (!pending.empty()) {
        const Model x = pending.back();
        pending.pop_back();
        const std::size_t n = models.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Model z = x & models[i];
            if (present.insert(z).second) {
                models.push_back(z);
                pending.push_back(z);
            }
        }
    }
    normalize_set(models);
    return models;
}

void require_same_scope(const DefValue& a, const DefValue& b, const char* op) {
    if (a.scope() != b.scope())
        throw ScopeError(std::string(op) + ": operands have different scopes");
}

std::vector<std::size_t> positions_of(const Scope& sub, const Scope& scope, const char* op) {
    std::vector<std::size_t> pos;
    pos.reserve(sub.size());
    for (const auto& v : sub) {
        auto it = std::find(scope.begin(), scope.end(), v);
        if (it == scope.end())
            throw ScopeError(std::string(op) + ": variable " + v + " is not in scope");
        pos.push_back(static_cast<std::size_t>(it - scope.begin()));
    }
    return pos;
}

}  // namespace

void check_scope(const Scope& scope) {
    if (scope.size() > kMaxScope)
        throw ResourceError("scope of " + std::to_string(scope.size()) +
                            " variables exceeds the cap of " + std::to_string(kMaxScope));
    std::set<std::string> seen;
    for (const auto& v : scope)
        if (!seen.insert(v).second) throw ScopeError("duplicate variable " + v + " in scope");
}

DefValue::DefValue(Scope scope, std::vector<Model> models, bool bottom)
    : scope_(std::move(scope)), models_(std::move(models)), bottom_(bottom) {}

DefValue DefValue::top(const Scope& scope) {
    check_scope(scope);
    const std::size_t count = std::size_t{1} << scope.size();
    std::vector<Model> models(count);
    for (std::size_t m = 0; m < count; ++m) models[m] = static_cast<Model>(m);
    return DefValue(scope, std::move(models), false);
}

DefValue DefValue::bottom(const Scope& scope) {
    check_scope(scope);
    return DefValue(scope, {}, true);
}

DefValue DefValue::from_models(const Scope& scope, std::vector<Model> models) {
    check_scope(scope);
    if (models.empty()) return bottom(scope);
    const Model full = full_for(scope.size());
    for (Model m : models)
        if ((m & ~full) != 0) throw ScopeError("model mentions a variable outside the scope");
    models.push_back(full);
    return DefValue(scope, intersection_closure(std::move(models)), false);
}

DefValue DefValue::from_exact_models(const Scope& scope, std::vector<Model> models) {
    check_scope(scope);
    normalize_set(models);
    if (!is_valid_def(scope, models))
        throw ScopeError("model set is not a definite Boolean function");
    if (models.empty()) return bottom(scope);
    return DefValue(scope, std::move(models), false);
}

bool DefValue::is_top() const {
    return !bottom_ && models_.size() == (std::size_t{1} << scope_.size());
}

Model DefValue::full_model() const { return full_for(scope_.size()); }

bool is_valid_def(const Scope& scope, const std::vector<Model>& models) {
    if (models.empty()) return true;
    const Model full = full_for(scope.size());
    std::unordered_set<Model> present(models.begin(), models.end());
    if (!present.count(full)) return false;
    for (Model m : models)
        if ((m & ~full) != 0) return false;
    for (std::size_t i = 0; i < models.size(); ++i)
        for (std::size_t j = i + 1; j < models.size(); ++j)
            if (!present.count(models[i] & models[j])) return false;
    return true;
}

DefValue abstract_constraint(const Constraint& c, const Scope& scope) {
    Scope local{c.var};
    for (const auto& v : term_variables(c.rhs))
        if (v != c.var) local.push_back(v);
    const bool self_reference =
        term_variables(c.rhs).size() != local.size() - 1;  // var occurs in rhs
    // Bit 0 is `var`; the rest are rhs variables (plus var itself if it occurs).
    Model rhs_mask = 0;
    for (std::size_t i = 1; i < local.size(); ++i) rhs_mask |= Model{1} << i;
    if (self_reference) rhs_mask |= 1u;

    std::vector<Model> models;
    const std::size_t count = std::size_t{1} << local.size();
    for (std::size_t m = 0; m < count; ++m) {
        const Model model = static_cast<Model>(m);
        const bool lhs = model & 1u;
        const bool rhs = (model & rhs_mask) == rhs_mask;
        if (lhs == rhs) models.push_back(model);
    }
    return extend(DefValue::from_exact_models(local, std::move(models)), scope);
}

DefValue meet(const DefValue& a, const DefValue& b) {
    require_same_scope(a, b, "meet");
    if (a.is_bottom() || b.is_bottom()) return DefValue::bottom(a.scope());
    std::vector<Model> out;
    std::set_intersection(a.models().begin(), a.models().end(), b.models().begin(),
                          b.models().end(), std::back_inserter(out));
    return DefValue::from_exact_models(a.scope(), std::move(out));
}

DefValue alub(const DefValue& a, const DefValue& b) {
    require_same_scope(a, b, "alub");
    if (a.is_bottom()) return b;
    if (b.is_bottom()) return a;
    std::vector<Model> all(a.models());
    all.insert(all.end(), b.models().begin(), b.models().end());
    return DefValue::from_models(a.scope(), std::move(all));
}

bool leq(const DefValue& a, const DefValue& b) {
    require_same_scope(a, b, "leq");
    if (a.is_bottom()) return true;
    if (b.is_bottom()) return false;
    return std::includes(b.models().begin(), b.models().end(), a.models().begin(),
                         a.models().end());
}

DefValue project(const DefValue& a, const Scope& sub) {
    check_scope(sub);
    const auto pos = positions_of(sub, a.scope(), "project");
    if (a.is_bottom()) return DefValue::bottom(sub);
    std::vector<Model> out;
    out.reserve(a.models().size());
    for (Model m : a.models()) {
        Model r = 0;
        for (std::size_t i = 0; i < pos.size(); ++i)
            if (m & (Model{1} << pos[i])) r |= Model{1} << i;
        out.push_back(r);
    }
    return DefValue::from_models(sub, std::move(out));
}

DefValue rename(const DefValue& a, const std::map<std::string, std::string>& mapping) {
    Scope renamed;
    renamed.reserve(a.scope().size());
    for (const auto& v : a.scope()) {
        auto it = mapping.find(v);
        if (it == mapping.end()) throw ScopeError("rename: no image for variable " + v);
        renamed.push_back(it->second);
    }
    std::set<std::string> distinct(renamed.begin(), renamed.end());
    if (distinct.size() != renamed.size()) throw ScopeError("rename: mapping is not injective");
    return with_scope(a, renamed);
}

DefValue with_scope(const DefValue& a, const Scope& scope) {
    if (scope.size() != a.scope().size())
        throw ScopeError("with_scope: scope sizes differ");
    if (a.is_bottom()) return DefValue::bottom(scope);
    return DefValue::from_exact_models(scope, a.models());
}

DefValue extend(const DefValue& a, const Scope& superscope) {
    check_scope(superscope);
    const auto pos = positions_of(a.scope(), superscope, "extend");
    if (a.is_bottom()) return DefValue::bottom(superscope);

    Model placed_mask = 0;
    for (std::size_t p : pos) placed_mask |= Model{1} << p;
    std::vector<std::size_t> free_bits;
    for (std::size_t i = 0; i < superscope.size(); ++i)
        if (!(placed_mask & (Model{1} << i))) free_bits.push_back(i);

    const std::size_t combos = std::size_t{1} << free_bits.size();
    std::vector<Model> out;
    out.reserve(a.models().size() * combos);
    for (Model m : a.models()) {
        Model base = 0;
        for (std::size_t i = 0; i < pos.size(); ++i)
            if (m & (Model{1} << i)) base |= Model{1} << pos[i];
        for (std::size_t k = 0; k < combos; ++k) {
            Model extra = 0;
            for (std::size_t j = 0; j < free_bits.size(); ++j)
                if (k & (std::size_t{1} << j)) extra |= Model{1} << free_bits[j];
            out.push_back(base | extra);
        }
    }
    normalize_set(out);
    return DefValue::from_exact_models(superscope, std::move(out));
}

std::string to_string(const DefValue& v) {
    if (v.is_bottom()) return "bot";
    if (v.is_top()) return "true";
    std::vector<std::vector<std::size_t>> listed;
    listed.reserve(v.models().size());
    for (Model m : v.models()) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < v.scope().size(); ++i)
            if (m & (Model{1} << i)) idx.push_back(i);
        listed.push_back(std::move(idx));
    }
    std::sort(listed.begin(), listed.end());
    std::string out = "models(";
    for (std::size_t k = 0; k < listed.size(); ++k) {
        if (k) out += ';';
        out += '[';
        for (std::size_t i = 0; i < listed[k].size(); ++i) {
            if (i) out += ',';
            out += v.scope()[listed[k][i]];
        }
        out += ']';
    }
    return out + ')';
}

}  // namespace acc
