// acc: producer and consumer commands over certificates for CLP programs.
//
// Exit status: 0 accepted/trusted, 1 rejected/untrusted/conflicting update,
// 2 usage or parse error, 3 corrupt or unwritable state.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "acc/certify.hpp"
#include "acc/checker.hpp"
#include "acc/error.hpp"
#include "acc/inccert.hpp"
#include "acc/inccheck.hpp"
#include "acc/store.hpp"
#include "acc/update.hpp"

namespace {

using namespace acc;

enum Exit { kOk = 0, kRejected = 1, kUsage = 2, kState = 3 };

// Bad command-line input rather than bad state.
struct UsageError : Error {
    using Error::Error;
};

std::string input_file(const std::string& path) {
    try {
        return read_file(path);
    } catch (const IoError& e) {
        throw UsageError(e.what());
    }
}

std::string plural(std::size_t n, const char* one, const char* many) {
    return std::to_string(n) + " " + (n == 1 ? one : many);
}

std::vector<CallPattern> parse_queries_arg(const std::vector<std::string>& texts) {
    std::vector<CallPattern> out;
    for (const auto& t : texts) out.push_back(parse_call_pattern(t));
    return out;
}

class Timer {
public:
    explicit Timer(bool on) : on_(on), start_(std::chrono::steady_clock::now()) {}
    ~Timer() {
        if (!on_) return;
        const auto us = std::chrono::duration_cast<std::chrono::microseconds>(
                            std::chrono::steady_clock::now() - start_).count();
        std::printf("# elapsed %.3f ms\n", static_cast<double>(us) / 1000.0);
    }

private:
    bool on_;
    std::chrono::steady_clock::time_point start_;
};

struct Options {
    std::string program, other, out, state, cert, policy, update, package;
    std::vector<std::string> queries;
    bool strict = false, lenient = false, reuse = false, stats = false;
};

int cmd_certify(const Options& o) {
    Timer timer(o.stats);
    const Program p = parse_program(input_file(o.program));
    const auto queries = parse_queries_arg(o.queries);
    Certification c = certify(p, queries);
    std::vector<CallPattern> roots;
    for (const auto& q : queries) roots.push_back(base_form(p, q));
    {
        StateLock lock(o.state);
        save_state(o.state, AnalysisState{p, c.cert, c.dat, roots});
    }
    if (!o.out.empty()) write_file_atomic(o.out, format_answers(c.cert));
    std::cout << "certificate: " << plural(c.cert.size(), "entry", "entries") << " / "
              << plural(c.dat.size(), "arc", "arcs") << "\n";
    if (o.stats) {
        std::cout << "traversals: " << c.stats.traversals << "\n"
                  << "answer updates: " << c.stats.answer_updates << "\n"
                  << "entries created: " << c.stats.entries_created << "\n";
    }
    return kOk;
}

int cmd_diff(const Options& o) {
    const Program prev = parse_program(input_file(o.program));
    const Program next = parse_program(input_file(o.other));
    const Update u = diff(next, prev);
    const std::string text = format_update(u);
    if (o.out.empty()) {
        std::cout << text;
    } else {
        write_file_atomic(o.out, text);
        std::cout << "update: " << to_string(classify(u)) << ", "
                  << plural(u.tuples.size(), "predicate", "predicates") << "\n";
    }
    return kOk;
}

int cmd_inc_certify(const Options& o) {
    Timer timer(o.stats);
    const Update u = parse_update(input_file(o.update));
    StateLock lock(o.state);
    const AnalysisState base = load_state(o.state);
    ExtCertification r = ext_certify(base, u, o.reuse);
    save_package(o.out, Package{u, r.inc});
    save_state(o.state, r.state);

    std::cout << "update: " << to_string(r.kind) << (r.reused ? " (previous answers reused)" : "")
              << "\n"
              << "incremental certificate: " << plural(r.inc.size(), "entry", "entries")
              << " (full certificate: " << plural(r.state.at.size(), "entry", "entries") << ")\n";
    if (o.stats) {
        std::cout << "traversals: " << r.stats.traversals << "\n"
                  << "inc-cert bytes: " << format_answers(r.inc).size() << "\n"
                  << "full-cert bytes: " << format_answers(r.state.at).size() << "\n";
    }
    return kOk;
}

int cmd_check(const Options& o) {
    Timer timer(o.stats);
    const Program p = parse_program(input_file(o.program));
    const Certificate cert = parse_answers(input_file(o.cert));
    const auto queries = parse_queries_arg(o.queries);
    const CheckMode mode = o.lenient ? CheckMode::Lenient : CheckMode::Strict;
    CheckResult r = check(p, queries, cert, mode);
    if (o.stats) std::cout << "traversals: " << r.traversals << "\n";
    if (!r.accepted()) {
        std::cerr << "rejected: " << r.rejection->message() << "\n";
        return kRejected;
    }
    for (const auto& c : r.unused) std::cerr << "warning: unused certificate entry " << to_string(c) << "\n";
    if (!o.state.empty()) {
        std::vector<CallPattern> roots;
        for (const auto& q : queries) roots.push_back(base_form(p, q));
        StateLock lock(o.state);
        save_state(o.state, AnalysisState{p, r.at, r.dat, roots});
    }
    std::cout << "accepted: " << plural(r.at.size(), "entry", "entries") << " / "
              << plural(r.dat.size(), "arc", "arcs") << "\n";
    return kOk;
}

int cmd_inc_check(const Options& o) {
    Timer timer(o.stats);
    StateLock lock(o.state);
    const ConsumerState state = load_state(o.state);
    Package pkg;
    try {
        pkg = load_package(o.package);
    } catch (const IoError& e) {
        throw UsageError(e.what());
    }
    IncCheckResult r = inc_check(state, pkg.update, pkg.inc);
    if (!r.accepted()) {
        std::cerr << "rejected: " << r.rejection->message() << "\n";
        return kRejected;
    }
    save_state(o.state, r.state);
    std::cout << plural(r.stats.changed, "entry", "entries") << " changed, "
              << plural(r.stats.rechecked, "entry", "entries") << " rechecked\n"
              << "final tables: " << plural(r.state.at.size(), "entry", "entries") << " / "
              << plural(r.state.dat.size(), "arc", "arcs") << "\n";
    if (o.stats) {
        std::cout << "traversals: " << r.stats.traversals << "\n"
                  << "removed: " << r.stats.removed << "\n";
    }
    return kOk;
}

int cmd_trust(const Options& o) {
    const SafetyPolicy policy = parse_policy(input_file(o.policy));
    const AnalysisState state = load_state(o.state);
    VcResult r = vc_check(state.at, policy);
    if (!r.trusted) {
        for (const auto& v : r.violations) std::cerr << "violation: " << describe(v) << "\n";
        std::cout << "untrusted\n";
        return kRejected;
    }
    std::cout << "trusted\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Certificates for constraint logic programs over the Def groundness domain"};
    app.require_subcommand(1);
    Options o;

    auto* certify_cmd = app.add_subcommand("certify", "analyze a program and store the producer state");
    certify_cmd->add_option("program", o.program, "program file")->required();
    certify_cmd->add_option("-q,--query", o.queries, "entry call pattern, e.g. 'rev(X,Y):true'")->required();
    certify_cmd->add_option("--state", o.state, "state directory")->required();
    certify_cmd->add_option("-o,--cert", o.out, "also write the certificate to this file");
    certify_cmd->add_flag("--stats", o.stats, "print analysis counters");

    auto* diff_cmd = app.add_subcommand("diff", "compute the update turning one program into another");
    diff_cmd->add_option("old", o.program, "previous program")->required();
    diff_cmd->add_option("new", o.other, "updated program")->required();
    diff_cmd->add_option("-o,--output", o.out, "update file (standard output if omitted)");

    auto* inc_certify_cmd = app.add_subcommand("inc-certify", "build an update package and advance the producer state");
    inc_certify_cmd->add_option("update", o.update, "update file")->required();
    inc_certify_cmd->add_option("--state", o.state, "producer state directory")->required();
    inc_certify_cmd->add_option("-o,--output", o.out, "package directory")->required();
    inc_certify_cmd->add_flag("--reuse", o.reuse, "keep previous answers for pure deletions");
    inc_certify_cmd->add_flag("--stats", o.stats, "print counters and certificate sizes");

    auto* check_cmd = app.add_subcommand("check", "validate a full certificate");
    check_cmd->add_option("program", o.program, "program file")->required();
    check_cmd->add_option("--cert", o.cert, "certificate file")->required();
    check_cmd->add_option("-q,--query", o.queries, "entry call pattern")->required();
    auto* strict = check_cmd->add_flag("--strict", o.strict, "answers must be reproduced exactly (default)");
    check_cmd->add_flag("--lenient", o.lenient, "answers may be over-approximations")->excludes(strict);
    check_cmd->add_option("--state", o.state, "store the accepted tables as consumer state");
    check_cmd->add_flag("--stats", o.stats, "print traversal counters");

    auto* inc_check_cmd = app.add_subcommand("inc-check", "validate an update package against the stored state");
    inc_check_cmd->add_option("package", o.package, "package directory")->required();
    inc_check_cmd->add_option("--state", o.state, "consumer state directory")->required();
    inc_check_cmd->add_flag("--stats", o.stats, "print traversal counters");

    auto* trust_cmd = app.add_subcommand("trust", "compare stored answers with a safety policy");
    trust_cmd->add_option("--state", o.state, "state directory")->required();
    trust_cmd->add_option("--policy", o.policy, "policy file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*certify_cmd) return cmd_certify(o);
        if (*diff_cmd) return cmd_diff(o);
        if (*inc_certify_cmd) return cmd_inc_certify(o);
        if (*check_cmd) return cmd_check(o);
        if (*inc_check_cmd) return cmd_inc_check(o);
        if (*trust_cmd) return cmd_trust(o);
    } catch (const PatchConflict& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kRejected;
    } catch (const CorruptState& e) {
        std::cerr << "error: corrupt state: " << e.what() << "\n";
        return kState;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kState;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
