#include "acc/inccert.hpp"

#include "acc/checker.hpp"

namespace acc {

IncrementalCertificate cert_diff(const Certificate& ext, const Certificate& base) {
    IncrementalCertificate inc;
    for (const auto& [key, entry] : ext) {
        const Entry* old = base.find(key);
        if (!old || !old->answer.same_shape(entry.answer)) inc.set(entry.call, entry.answer);
    }
    return inc;
}

namespace {

std::vector<EntryKey> keys_of(const std::vector<CallPattern>& calls) {
    std::vector<EntryKey> out;
    for (const auto& c : calls) out.push_back(c.key());
    return out;
}

AnalysisState restricted(const Program& p, AnswerTable at, std::vector<DependencyArc> dat,
                         const std::vector<CallPattern>& queries) {
    restrict_to_reachable(at, dat, keys_of(queries));
    return AnalysisState{p, std::move(at), std::move(dat), queries};
}

}  // namespace

ExtCertification ext_certify(const AnalysisState& base, const Update& u, bool reuse) {
    ExtCertification out;
    out.kind = classify(u);
    const Program next = patch(base.program, u);
    std::vector<CallPattern> queries;
    for (const auto& q : base.queries) queries.push_back(base_form(next, q));

    if (reuse && out.kind == UpdateClass::Deletion) {
        // Dropping rules can only shrink the least fixpoint, so the old answers
        // remain a valid (if less precise) post-fixpoint; only arcs change.
        CheckResult r = check(next, queries, base.at, CheckMode::Lenient);
        if (r.accepted()) {
            out.reused = true;
            out.ext = base.at;
            out.dat = r.dat;
            out.stats.traversals = r.traversals;
            out.state = restricted(next, base.at, r.dat, queries);
            return out;
        }
    }

    std::vector<CallPattern> seeds = queries;
    for (const auto& [key, entry] : base.at) seeds.push_back(entry.call);
    AnalysisResult r = analyze(next, seeds);
    out.inc = cert_diff(r.at, base.at);
    out.stats = r.stats;
    out.state = restricted(next, r.at, r.dat, queries);
    out.ext = std::move(r.at);
    out.dat = std::move(r.dat);
    return out;
}

ExtCertification ext_certify(const Program& p_old, const Update& u,
                             const std::vector<CallPattern>& queries, bool reuse) {
    Certification c = certify(p_old, queries);
    std::vector<CallPattern> base_queries;
    for (const auto& q : queries) base_queries.push_back(base_form(p_old, q));
    return ext_certify(AnalysisState{p_old, c.cert, c.dat, base_queries}, u, reuse);
}

}  // namespace acc
