#pragma once

#include <string>
#include <vector>

#include "acc/engine.hpp"

namespace acc {

// A certificate is the answer table of a fixpoint.
using Certificate = AnswerTable;

struct SafetyPolicy {
    AnswerTable required;  // A:CP -> required upper bound on the answer
};

struct Certification {
    Certificate cert;
    std::vector<DependencyArc> dat;
    AnalysisStats stats;
};

Certification certify(const Program& p, const std::vector<CallPattern>& queries);

struct PolicyViolation {
    CallPattern call;
    DefValue required;
    std::optional<DefValue> certified;  // nullopt when the certificate lacks the entry
};

struct VcResult {
    bool trusted = true;
    std::vector<PolicyViolation> violations;
};

// Entrywise cert <= policy with exact key match.
VcResult vc_check(const Certificate& cert, const SafetyPolicy& policy);

std::string describe(const PolicyViolation& v);

}  // namespace acc
