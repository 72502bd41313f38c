#include "acc/store.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

#include "acc/error.hpp"
#include "acc/formula.hpp"

namespace acc {

namespace {

std::string_view trim(std::string_view s) {
    const auto ws = " \t\r";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

// Non-blank, non-comment lines with their 1-based numbers.
std::vector<std::pair<std::size_t, std::string_view>> content_lines(std::string_view text) {
    std::vector<std::pair<std::size_t, std::string_view>> out;
    std::size_t n = 0;
    while (!text.empty()) {
        ++n;
        const auto nl = text.find('\n');
        std::string_view line = trim(text.substr(0, nl));
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (!line.empty() && line.front() != '%') out.emplace_back(n, line);
    }
    return out;
}

// Re-anchors errors from single-item parsers at the line they came from.
template <class F>
auto at_line(std::size_t line, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ParseError& e) {
        throw ParseError(e.detail(), line, e.column());
    } catch (const Error& e) {
        throw ParseError(e.what(), line, 1);
    }
}

std::pair<std::string_view, std::string_view> split_once(std::string_view s, std::string_view sep,
                                                         std::size_t line, const char* what) {
    const auto pos = s.find(sep);
    if (pos == std::string_view::npos)
        throw ParseError(std::string("expected `") + std::string(sep) + "` in " + what, line, 1);
    return {trim(s.substr(0, pos)), trim(s.substr(pos + sep.size()))};
}

CallPattern call_pattern_at(std::string_view text, std::size_t line) {
    auto [atom_text, value_text] = split_once(text, ":", line, "call pattern");
    Atom atom = at_line(line, [&] { return parse_atom(atom_text); });
    DefValue cp = at_line(line, [&] { return parse_value(value_text, atom.args); });
    return CallPattern(std::move(atom), std::move(cp));
}

RuleId parse_rule_id(std::string_view text, std::size_t line) {
    const auto bad = [&] { return ParseError("malformed rule position `" + std::string(text) + "`", line, 1); };
    const auto s2 = text.rfind('/');
    if (s2 == std::string_view::npos || s2 == 0) throw bad();
    const auto s1 = text.rfind('/', s2 - 1);
    if (s1 == std::string_view::npos || s1 == 0) throw bad();
    const auto number = [&](std::string_view d) -> std::size_t {
        if (d.empty() || !std::all_of(d.begin(), d.end(), ::isdigit)) throw bad();
        return std::stoul(std::string(d));
    };
    return RuleId{std::string(text.substr(0, s1)), number(text.substr(s1 + 1, s2 - s1 - 1)),
                  number(text.substr(s2 + 1))};
}

}  // namespace

CallPattern parse_call_pattern(std::string_view text) { return call_pattern_at(trim(text), 1); }

// ---------------------------------------------------------------------------
// Answer tables

std::string format_answers(const AnswerTable& at) {
    std::string out;
    for (const auto& [key, e] : at)
        out += to_string(e.call.atom) + " : " + to_string(e.call.cp) + " => " + to_string(e.answer) + "\n";
    return out;
}

AnswerTable parse_answers(std::string_view text) {
    AnswerTable at;
    for (auto [n, line] : content_lines(text)) {
        auto [call_text, answer_text] = split_once(line, "=>", n, "answer entry");
        CallPattern call = call_pattern_at(call_text, n);
        DefValue answer = at_line(n, [&] { return parse_value(answer_text, call.atom.args); });
        if (at.contains(call.key()))
            throw ParseError("duplicate entry for " + to_string(call), n, 1);
        at.set(call, answer);
    }
    return at;
}

SafetyPolicy parse_policy(std::string_view text) { return SafetyPolicy{parse_answers(text)}; }

// ---------------------------------------------------------------------------
// Dependency arcs

std::string format_arcs(const std::vector<DependencyArc>& dat) {
    std::vector<DependencyArc> sorted = dat;
    sort_arcs(sorted);
    std::string out;
    for (const auto& arc : sorted) out += to_string(arc) + "\n";
    return out;
}

std::vector<DependencyArc> parse_arcs(std::string_view text) {
    std::vector<DependencyArc> out;
    std::set<ArcSlot> slots;
    for (auto [n, line] : content_lines(text)) {
        auto [head_text, rest] = split_once(line, "=>", n, "dependency arc");
        auto [pos_text, body_text] = split_once(rest, " ", n, "dependency arc");
        const auto hash = pos_text.rfind('#');
        if (hash == std::string_view::npos) throw ParseError("expected `#` in rule position", n, 1);
        DependencyArc arc;
        arc.head = call_pattern_at(head_text, n);
        arc.rule = parse_rule_id(pos_text.substr(0, hash), n);
        const auto idx = pos_text.substr(hash + 1);
        if (idx.empty() || !std::all_of(idx.begin(), idx.end(), ::isdigit))
            throw ParseError("malformed literal index", n, 1);
        arc.literal = std::stoul(std::string(idx));
        CallPattern body = call_pattern_at(body_text, n);
        arc.body_atom = body.atom;
        arc.body_cp = body.cp;
        if (!slots.insert(slot_of(arc)).second) throw ParseError("duplicate arc slot", n, 1);
        out.push_back(std::move(arc));
    }
    sort_arcs(out);
    return out;
}

// ---------------------------------------------------------------------------
// Queries

std::string format_queries(const std::vector<CallPattern>& queries) {
    std::vector<const CallPattern*> sorted;
    std::set<EntryKey> seen;
    for (const auto& q : queries)
        if (seen.insert(q.key()).second) sorted.push_back(&q);
    std::sort(sorted.begin(), sorted.end(),
              [](const CallPattern* a, const CallPattern* b) { return a->key() < b->key(); });
    std::string out;
    for (const auto* q : sorted) out += to_string(q->atom) + " : " + to_string(q->cp) + "\n";
    return out;
}

std::vector<CallPattern> parse_queries(std::string_view text) {
    std::vector<CallPattern> out;
    for (auto [n, line] : content_lines(text)) out.push_back(call_pattern_at(line, n));
    return out;
}

// ---------------------------------------------------------------------------
// Updates

std::string format_update(const Update& u) {
    std::string out;
    for (const auto& t : u.tuples) {
        if (t.add.empty() && t.del.empty()) continue;
        out += "@ " + t.key().to_string() + "\n";
        for (const auto& r : t.del) out += "- " + to_string(r) + "\n";
        for (const auto& r : t.add) out += "+ " + to_string(r) + "\n";
    }
    return out;
}

Update parse_update(std::string_view text) {
    Update u;
    UpdateTuple* current = nullptr;
    for (auto [n, line] : content_lines(text)) {
        const char tag = line.front();
        std::string_view body = trim(line.substr(1));
        if (tag == '@') {
            const auto slash = body.rfind('/');
            std::string_view arity = slash == std::string_view::npos ? "" : body.substr(slash + 1);
            if (slash == 0 || arity.empty() || !std::all_of(arity.begin(), arity.end(), ::isdigit))
                throw ParseError("expected `@ name/arity`", n, 1);
            PredicateKey key{std::string(body.substr(0, slash)), std::stoul(std::string(arity))};
            if (u.find(key)) throw ParseError("duplicate block for " + key.to_string(), n, 1);
            UpdateTuple t;
            t.atom.predicate = key.name;
            for (std::size_t i = 1; i <= key.arity; ++i) t.atom.args.push_back("X" + std::to_string(i));
            u.tuples.push_back(std::move(t));
            current = &u.tuples.back();
        } else if (tag == '+' || tag == '-') {
            if (!current) throw ParseError("rule outside of an `@` block", n, 1);
            Rule r = at_line(n, [&] { return parse_rule(body); });
            if (r.key() != current->key())
                throw ParseError("rule for " + r.key().to_string() + " in block " +
                                 current->key().to_string(), n, 1);
            if (current->add.empty() && current->del.empty()) current->atom = r.head;
            (tag == '+' ? current->add : current->del).push_back(std::move(r));
        } else {
            throw ParseError("expected a line starting with `@`, `+` or `-`", n, 1);
        }
    }
    std::sort(u.tuples.begin(), u.tuples.end(),
              [](const UpdateTuple& a, const UpdateTuple& b) { return a.key() < b.key(); });
    return u;
}

// ---------------------------------------------------------------------------
// Files

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("error reading " + path.string());
    return ss.str();
}

namespace {

fs::path temp_sibling(const fs::path& path) {
    return path.parent_path() / ("." + path.filename().string() + ".tmp");
}

void write_plain(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << content;
    out.flush();
    if (!out) throw IoError("error writing " + path.string());
}

void rename_into_place(const fs::path& from, const fs::path& to) {
    std::error_code ec;
    fs::rename(from, to, ec);
    if (ec) throw IoError("cannot replace " + to.string() + ": " + ec.message());
}

void write_all_atomic(const fs::path& dir, const std::vector<std::pair<std::string, std::string>>& files) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
    // Stage every file first so a failure leaves the previous contents in place.
    std::vector<fs::path> staged;
    try {
        for (const auto& [name, content] : files) {
            staged.push_back(temp_sibling(dir / name));
            write_plain(staged.back(), content);
        }
    } catch (...) {
        for (const auto& p : staged) fs::remove(p, ec);
        throw;
    }
    for (std::size_t i = 0; i < files.size(); ++i) rename_into_place(staged[i], dir / files[i].first);
}

std::string read_state_file(const fs::path& path) {
    if (!fs::exists(path)) throw CorruptState("missing state file " + path.string());
    try {
        return read_file(path);
    } catch (const IoError& e) {
        throw CorruptState(e.what());
    }
}

template <class F>
auto parse_state_file(const fs::path& path, F&& parse) -> decltype(parse(std::string_view{})) {
    const std::string text = read_state_file(path);
    try {
        return parse(text);
    } catch (const Error& e) {
        throw CorruptState(path.string() + ": " + e.what());
    }
}

}  // namespace

void write_file_atomic(const fs::path& path, const std::string& content) {
    const fs::path tmp = temp_sibling(path);
    write_plain(tmp, content);
    rename_into_place(tmp, path);
}

// ---------------------------------------------------------------------------
// State and package directories

void save_state(const fs::path& dir, const AnalysisState& state) {
    write_all_atomic(dir, {{"program.pl", to_string(state.program)},
                           {"answers.cert", format_answers(state.at)},
                           {"deps.dat", format_arcs(state.dat)},
                           {"queries.q", format_queries(state.queries)}});
}

void validate_state(const AnalysisState& s) {
    for (const auto& q : s.queries)
        if (!s.at.contains(q.key())) throw CorruptState("query " + to_string(q) + " has no answer entry");
    for (const auto& arc : s.dat) {
        const std::string where = "arc `" + to_string(arc) + "`";
        if (!s.at.contains(arc.head_key())) throw CorruptState(where + ": head has no answer entry");
        if (!s.at.contains(arc.body_key())) throw CorruptState(where + ": callee has no answer entry");
        const Rule* r = s.program.find_rule(arc.rule);
        if (!r || r->key() != arc.head_key().predicate_key())
            throw CorruptState(where + ": no such rule for the head");
        if (arc.literal == 0 || arc.literal > r->body.size())
            throw CorruptState(where + ": literal index out of range");
        const auto* call = std::get_if<Call>(&r->body[arc.literal - 1]);
        if (!call || call->atom != arc.body_atom)
            throw CorruptState(where + ": literal is not that call");
    }
}

AnalysisState load_state(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw CorruptState("state directory " + dir.string() + " does not exist");
    AnalysisState s;
    s.program = parse_state_file(dir / "program.pl", [](std::string_view t) { return parse_program(t); });
    s.at = parse_state_file(dir / "answers.cert", [](std::string_view t) { return parse_answers(t); });
    s.dat = parse_state_file(dir / "deps.dat", [](std::string_view t) { return parse_arcs(t); });
    s.queries = parse_state_file(dir / "queries.q", [](std::string_view t) { return parse_queries(t); });
    for (auto& q : s.queries) q = base_form(s.program, q);
    validate_state(s);
    return s;
}

void save_package(const fs::path& dir, const Package& pkg) {
    write_all_atomic(dir, {{kUpdateFile, format_update(pkg.update)},
                           {kIncCertFile, format_answers(pkg.inc)}});
}

Package load_package(const fs::path& dir) {
    Package pkg;
    pkg.update = parse_update(read_file(dir / kUpdateFile));
    pkg.inc = parse_answers(read_file(dir / kIncCertFile));
    return pkg;
}

StateLock::StateLock(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    const fs::path path = dir / "lock";
    fd_ = ::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
    if (fd_ < 0) throw IoError("cannot open " + path.string() + ": " + std::strerror(errno));
    if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
        ::close(fd_);
        throw IoError("state directory " + dir.string() + " is locked by another process");
    }
}

StateLock::~StateLock() {
    if (fd_ >= 0) {
        ::flock(fd_, LOCK_UN);
        ::close(fd_);
    }
}

}  // namespace acc
