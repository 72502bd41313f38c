#include "random_program.hpp"

#include <algorithm>

namespace gen {

namespace {

std::size_t uniform(std::mt19937& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

const char* const kHead[] = {"X", "Y", "Z", "Q"};
const char* const kLocal[] = {"U", "V", "W", "R"};

std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i];
    return out;
}

std::string random_rhs(std::mt19937& rng, const std::vector<std::string>& pool, const std::string& lhs) {
    std::vector<std::string> others;
    for (const auto& v : pool)
        if (v != lhs) others.push_back(v);
    auto any = [&] { return others.empty() ? std::string("a") : others[uniform(rng, 0, others.size() - 1)]; };
    switch (uniform(rng, 0, 5)) {
    case 0: return "a";
    case 1: return "[]";
    case 2: return any();
    case 3: return "f(" + any() + "," + any() + ")";
    case 4: return "[" + any() + "|" + any() + "]";
    default: return "g(" + any() + ")";
    }
}

}  // namespace

std::string RandomProgram::text() const {
    std::string out;
    for (const auto& r : rules) out += r + "\n";
    return out;
}

std::string random_rule(std::mt19937& rng, const std::vector<PredicateSpec>& preds, std::size_t which,
                        const Bounds& b) {
    const PredicateSpec& self = preds[which];
    std::vector<std::string> pool(kHead, kHead + self.arity);
    const std::size_t locals = uniform(rng, 0, b.max_vars - self.arity);
    for (std::size_t i = 0; i < locals; ++i) pool.push_back(kLocal[i]);

    std::vector<std::string> body;
    const std::size_t len = uniform(rng, 0, b.max_body);
    for (std::size_t i = 0; i < len; ++i) {
        std::vector<std::size_t> callable;
        for (std::size_t j = 0; j < preds.size(); ++j)
            if (preds[j].arity <= pool.size()) callable.push_back(j);
        if (!callable.empty() && uniform(rng, 0, 9) < 4) {
            const PredicateSpec& callee = preds[callable[uniform(rng, 0, callable.size() - 1)]];
            std::vector<std::string> args = pool;
            std::shuffle(args.begin(), args.end(), rng);
            args.resize(callee.arity);
            body.push_back(callee.name + "(" + join(args) + ")");
        } else {
            const std::string lhs = pool[uniform(rng, 0, pool.size() - 1)];
            body.push_back(lhs + " = " + random_rhs(rng, pool, lhs));
        }
    }
    std::vector<std::string> head(kHead, kHead + self.arity);
    std::string out = self.name + "(" + join(head) + ")";
    if (!body.empty()) {
        out += " :- ";
        for (std::size_t i = 0; i < body.size(); ++i) out += (i ? ", " : "") + body[i];
    }
    return out + ".";
}

RandomProgram random_program(std::mt19937& rng, const Bounds& b) {
    RandomProgram p;
    const std::size_t n = uniform(rng, 1, b.max_predicates);
    for (std::size_t i = 0; i < n; ++i)
        p.predicates.push_back({"p" + std::to_string(i), uniform(rng, 1, 3)});
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t rules = uniform(rng, 1, b.max_rules);
        for (std::size_t k = 0; k < rules; ++k) p.rules.push_back(random_rule(rng, p.predicates, i, b));
    }
    const auto& root = p.predicates.front();
    std::vector<std::string> head(kHead, kHead + root.arity);
    const std::string atom = root.name + "(" + join(head) + ")";
    p.queries.push_back(atom + ":" + (uniform(rng, 0, 1) ? std::string("true") : head[uniform(rng, 0, root.arity - 1)]));
    return p;
}

RandomProgram random_update(std::mt19937& rng, const RandomProgram& p, const Bounds& b) {
    RandomProgram next = p;
    next.rules.clear();
    for (const auto& r : p.rules)
        if (uniform(rng, 0, 3) != 0) next.rules.push_back(r);
    std::vector<std::size_t> counts(p.predicates.size(), 0);
    for (const auto& r : next.rules)
        for (std::size_t i = 0; i < p.predicates.size(); ++i)
            if (r.rfind(p.predicates[i].name + "(", 0) == 0) ++counts[i];
    const std::size_t adds = uniform(rng, 0, 2);
    for (std::size_t k = 0; k < adds; ++k) {
        const std::size_t i = uniform(rng, 0, p.predicates.size() - 1);
        if (counts[i] >= b.max_rules) continue;
        next.rules.push_back(random_rule(rng, p.predicates, i, b));
        ++counts[i];
    }
    // Keep the root defined so the query stays meaningful.
    if (counts.front() == 0) next.rules.push_back(random_rule(rng, p.predicates, 0, b));
    return next;
}

}  // namespace gen
