#pragma once

// Consumer side of an update: revalidates only the part of the stored analysis
// graph that the update and the incremental certificate can affect.

#include <optional>
#include <vector>

#include "acc/checker.hpp"
#include "acc/inccert.hpp"

namespace acc {

using ConsumerState = AnalysisState;

struct IncCheckStats {
    std::size_t changed = 0;     // accepted entries whose claim came from the increment
    std::size_t rechecked = 0;   // entries traversed in this run
    std::size_t traversals = 0;  // rule traversals
    std::size_t removed = 0;     // entries dropped as unreachable
};

struct IncCheckResult {
    std::optional<Rejection> rejection;
    ConsumerState state;  // meaningful only when accepted
    IncCheckStats stats;

    bool accepted() const { return !rejection.has_value(); }
};

// Steps 1 to 4; the caller persists `state` on acceptance. The input state is
// never modified.
IncCheckResult inc_check(const ConsumerState& state, const Update& u,
                         const IncrementalCertificate& inc);

// Drops every entry (and the arcs it heads) that cannot be reached from the
// roots `s` along `dat`.
void remove_unreachable(AnswerTable& at, std::vector<DependencyArc>& dat,
                        const std::vector<CallPattern>& s);

}  // namespace acc
