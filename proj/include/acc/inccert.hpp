#pragma once

// Producer side of an update: the extended certificate of the patched program
// and its difference against the certificate already held by the consumer.

#include <vector>

#include "acc/certify.hpp"
#include "acc/update.hpp"

namespace acc {

// Program, answers, arcs and roots as persisted between runs by either party.
struct AnalysisState {
    Program program;
    AnswerTable at;
    std::vector<DependencyArc> dat;  // sorted by slot
    std::vector<CallPattern> queries;
};

// Entries of `ext` whose key is new or whose answer changed w.r.t. `base`.
using IncrementalCertificate = AnswerTable;

IncrementalCertificate cert_diff(const Certificate& ext, const Certificate& base);

struct ExtCertification {
    UpdateClass kind = UpdateClass::Empty;
    Certificate ext;
    IncrementalCertificate inc;
    std::vector<DependencyArc> dat;
    AnalysisStats stats;
    bool reused = false;   // deletion fast path taken
    AnalysisState state;   // next producer state: ext restricted to the roots
};

// Analyzes the patched program from the queries and from every call pattern
// of `base`, so that each entry the consumer may recheck has a claim.
// With `reuse` and a pure deletion, the base answers are kept unchanged.
ExtCertification ext_certify(const AnalysisState& base, const Update& u, bool reuse = false);

// Convenience form that first certifies `p_old` from scratch.
ExtCertification ext_certify(const Program& p_old, const Update& u,
                             const std::vector<CallPattern>& queries, bool reuse = false);

}  // namespace acc
