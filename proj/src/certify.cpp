#include "acc/certify.hpp"

namespace acc {

Certification certify(const Program& p, const std::vector<CallPattern>& queries) {
    AnalysisResult r = analyze(p, queries);
    return Certification{std::move(r.at), std::move(r.dat), r.stats};
}

VcResult vc_check(const Certificate& cert, const SafetyPolicy& policy) {
    VcResult out;
    for (const auto& [key, req] : policy.required) {
        const Entry* e = cert.find(key);
        if (!e) {
            out.violations.push_back({req.call, req.answer, std::nullopt});
            continue;
        }
        if (!leq(e->answer, with_scope(req.answer, e->answer.scope())))
            out.violations.push_back({req.call, req.answer, e->answer});
    }
    out.trusted = out.violations.empty();
    return out;
}

std::string describe(const PolicyViolation& v) {
    if (!v.certified) return "no certificate entry for " + to_string(v.call);
    return to_string(v.call) + ": certified " + to_string(*v.certified) + " is not below required " +
           to_string(v.required);
}

}  // namespace acc
