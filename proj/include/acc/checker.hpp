#pragma once

// Consumer-side checking: one pass over the analysis graph assuming the
// certificate's answers, recording the dependency arcs as it goes.

#include <optional>
#include <string>
#include <vector>

#include "acc/certify.hpp"

namespace acc {

enum class CheckMode {
    Strict,   // recomputed answers must equal the certificate
    Lenient,  // recomputed answers must be below the certificate
};

struct Rejection {
    enum class Kind { InvalidAnswer, MissingEntry };

    Kind kind = Kind::InvalidAnswer;
    CallPattern entry;
    std::optional<DefValue> computed;
    std::optional<DefValue> claimed;

    std::string message() const;
};

struct EntryCheck {
    DefValue answer;
    std::vector<DependencyArc> arcs;
    std::vector<CallPattern> calls;          // distinct called patterns, base form
    std::vector<CallPattern> overlay_calls;  // subset answered by the overlay layer
    std::size_t traversals = 0;
    std::optional<Rejection> rejection;      // MissingEntry only
};

// Recomputes the answer of `entry` over every rule of its predicate in one
// pass. Lookups consult `overlay` first (when given), then `graph`.
EntryCheck check_entry(const Program& p, const CallPattern& entry, const AnswerTable* overlay,
                       const AnswerTable& graph);

struct CheckResult {
    std::optional<Rejection> rejection;
    AnswerTable at;                   // reconstructed answers
    std::vector<DependencyArc> dat;   // sorted by slot
    std::vector<CallPattern> unused;  // certificate entries never demanded
    std::size_t traversals = 0;

    bool accepted() const { return !rejection.has_value(); }
};

CheckResult check(const Program& p, const std::vector<CallPattern>& queries,
                  const Certificate& cert, CheckMode mode = CheckMode::Strict);

}  // namespace acc
