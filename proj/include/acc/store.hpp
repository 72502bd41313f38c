#pragma once

// Text formats shared by producer and consumer, and the on-disk state and
// package directories.
//
//   answers.cert / inc.cert / policy   <atom> : <value> => <value>
//   deps.dat                           <atom>:<value> => <p>/<n>/<k>#<i> <atom>:<value>
//   queries.q                          <atom> : <value>
//   update                             @ p/n   followed by  + <rule>.  /  - <rule>.
//
// Values are `bot`, `true`, `models([..];..)` or a definite formula. Blank
// lines and lines starting with `%` are ignored.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "acc/inccheck.hpp"

namespace acc {

namespace fs = std::filesystem;

// `rev(X,Y):true`; spaces around the colon are allowed.
CallPattern parse_call_pattern(std::string_view text);

std::string format_answers(const AnswerTable& at);
AnswerTable parse_answers(std::string_view text);

std::string format_arcs(const std::vector<DependencyArc>& dat);
std::vector<DependencyArc> parse_arcs(std::string_view text);

std::string format_queries(const std::vector<CallPattern>& queries);
std::vector<CallPattern> parse_queries(std::string_view text);

std::string format_update(const Update& u);
Update parse_update(std::string_view text);

SafetyPolicy parse_policy(std::string_view text);

std::string read_file(const fs::path& path);
// Writes through a sibling temporary file and renames it into place.
void write_file_atomic(const fs::path& path, const std::string& content);

// State directory: program.pl, answers.cert, deps.dat, queries.q.
void save_state(const fs::path& dir, const AnalysisState& state);
AnalysisState load_state(const fs::path& dir);

// Checks the cross-file invariants of a loaded state; throws CorruptState.
void validate_state(const AnalysisState& state);

// Package directory: the update and the incremental certificate.
struct Package {
    Update update;
    IncrementalCertificate inc;
};

inline constexpr const char* kUpdateFile = "update.upd";
inline constexpr const char* kIncCertFile = "inc.cert";

void save_package(const fs::path& dir, const Package& pkg);
Package load_package(const fs::path& dir);

// Exclusive advisory lock on `<dir>/lock`, held for the object's lifetime.
class StateLock {
public:
    explicit StateLock(const fs::path& dir);
    ~StateLock();
    StateLock(const StateLock&) = delete;
    StateLock& operator=(const StateLock&) = delete;

private:
    int fd_ = -1;
};

}  // namespace acc
