#include <doctest.h>

#include <random>

#include "acc/inccheck.hpp"
#include "acc/store.hpp"
#include "fixtures.hpp"
#include "random_program.hpp"

using namespace acc;

namespace {

std::vector<CallPattern> rev_query() { return {parse_call_pattern(fixtures::kQuery)}; }

AnalysisState state_of(const Program& p, const std::vector<CallPattern>& qs) {
    Certification c = certify(p, qs);
    std::vector<CallPattern> base;
    for (const auto& q : qs) base.push_back(base_form(p, q));
    return {p, c.cert, c.dat, base};
}

std::string state_text(const AnalysisState& s) {
    return to_string(s.program) + format_answers(s.at) + format_arcs(s.dat) + format_queries(s.queries);
}

}  // namespace

TEST_CASE("adding base cases rechecks only append") {
    const Program p0 = parse_program(fixtures::kP0), p1 = parse_program(fixtures::kP1);
    const AnalysisState s = state_of(p0, rev_query());
    IncCheckResult r = inc_check(s, diff(p1, p0), {});
    REQUIRE(r.accepted());
    CHECK(r.stats.changed == 0);
    CHECK(r.stats.rechecked == 1);
    CHECK(r.stats.traversals == 4);
    CHECK(same_answers(r.state.at, s.at));
    CHECK(same_arcs(r.state.dat, s.dat));
    CHECK(diff(r.state.program, p1).empty());
}

TEST_CASE("the specialised append propagates to rev and drops app:true") {
    const Program p1 = parse_program(fixtures::kP1), p2 = parse_program(fixtures::kP2);
    const AnalysisState s = state_of(p1, rev_query());
    IncCheckResult r = inc_check(s, diff(p2, p1), parse_answers(fixtures::kNA));
    REQUIRE(r.accepted());
    CHECK(same_answers(r.state.at, parse_answers(fixtures::kNA13)));
    CHECK(same_arcs(r.state.dat, parse_arcs(fixtures::kND)));
    CHECK(r.stats.changed == 3);
    CHECK(r.stats.rechecked == 3);
    CHECK(r.stats.removed == 1);
}

TEST_CASE("an increment without the new call pattern is rejected") {
    const Program p1 = parse_program(fixtures::kP1), p2 = parse_program(fixtures::kP2);
    IncCheckResult r = inc_check(state_of(p1, rev_query()), diff(p2, p1),
                                 parse_answers("rev(X,Y) : true => X & Y\napp(X,Y,Z) : true => X & Y & Z\n"));
    REQUIRE_FALSE(r.accepted());
    CHECK(r.rejection->kind == Rejection::Kind::MissingEntry);
    CHECK(r.rejection->entry.key() == parse_call_pattern("app(X,Y,Z):X").key());
}

// The old app answer happens to stay a (non-least) fixpoint of the new
// definition, so an empty increment is sound and accepted.
TEST_CASE("an empty increment is accepted when the old answers remain a fixpoint") {
    const Program p1 = parse_program(fixtures::kP1), p2 = parse_program(fixtures::kP2);
    IncCheckResult r = inc_check(state_of(p1, rev_query()), diff(p2, p1), {});
    REQUIRE(r.accepted());
    CHECK(same_answers(r.state.at, parse_answers(fixtures::kA)));
}

TEST_CASE("an increment that omits a changed answer is rejected") {
    const Program p1 = parse_program(fixtures::kP1), p2 = parse_program(fixtures::kP2);
    IncCheckResult r = inc_check(state_of(p1, rev_query()), diff(p2, p1),
                                 parse_answers("app(X,Y,Z) : true => X & Y & Z\napp(X,Y,Z) : X => X & Y & Z\n"));
    REQUIRE_FALSE(r.accepted());
    CHECK(r.rejection->kind == Rejection::Kind::InvalidAnswer);
    CHECK(to_string(r.rejection->entry) == "rev(X,Y):true");
}

TEST_CASE("a forged increment for an untouched predicate is checked") {
    // The update only touches app; the increment also lies about rev.
    const Program p0 = parse_program(fixtures::kP0), p1 = parse_program(fixtures::kP1);
    IncCheckResult r = inc_check(state_of(p0, rev_query()), diff(p1, p0),
                                 parse_answers("rev(X,Y) : true => X\n"));
    REQUIRE_FALSE(r.accepted());
    CHECK(to_string(r.rejection->entry) == "rev(X,Y):true");
}

TEST_CASE("the input state is not modified by a rejected check") {
    const Program p1 = parse_program(fixtures::kP1), p2 = parse_program(fixtures::kP2);
    const AnalysisState s = state_of(p1, rev_query());
    const std::string before = state_text(s);
    CHECK_FALSE(inc_check(s, diff(p2, p1), parse_answers("app(X,Y,Z) : true => X & Y & Z\n")).accepted());
    CHECK(state_text(s) == before);
}

TEST_CASE("remove_unreachable") {
    SUBCASE("drops the self-looping entry the roots no longer reach") {
        AnswerTable at = parse_answers(fixtures::kNA);
        auto dat = parse_arcs(std::string(fixtures::kND) + "app(X,Y,Z):true => app/3/2#4 app(V,U,W):true\n");
        remove_unreachable(at, dat, rev_query());
        CHECK(same_answers(at, parse_answers(fixtures::kNA13)));
        CHECK(same_arcs(dat, parse_arcs(fixtures::kND)));
    }
    SUBCASE("all roots keeps everything") {
        AnswerTable at = parse_answers(fixtures::kNA);
        auto dat = parse_arcs(fixtures::kND);
        std::vector<CallPattern> all;
        for (const auto& [k, e] : at) all.push_back(e.call);
        remove_unreachable(at, dat, all);
        CHECK(at.size() == 3);
        CHECK(dat.size() == 3);
    }
    SUBCASE("removal cascades along a chain") {
        AnswerTable at = parse_answers("a(X) : true => true\nb(X) : true => true\nc(X) : true => true\n");
        auto dat = parse_arcs("b(X):true => b/1/1#1 c(X):true\n");
        remove_unreachable(at, dat, {parse_call_pattern("a(X):true")});
        CHECK(at.size() == 1);
        CHECK(dat.empty());
    }
}

TEST_CASE("deleting rules with an empty increment is accepted and keeps the answers") {
    const Program p1 = parse_program(fixtures::kP1), p0 = parse_program(fixtures::kP0);
    const AnalysisState s = state_of(p1, rev_query());
    IncCheckResult r = inc_check(s, diff(p0, p1), {});
    REQUIRE(r.accepted());
    CHECK(same_answers(r.state.at, s.at));
}

TEST_CASE("property: accepted incremental checks match a scratch analysis") {
    std::mt19937 rng(29);
    for (int i = 0; i < 300; ++i) {
        gen::RandomProgram rp = gen::random_program(rng);
        gen::RandomProgram next = gen::random_update(rng, rp);
        CAPTURE(rp.text());
        CAPTURE(next.text());
        const Program p = parse_program(rp.text());
        std::vector<CallPattern> qs;
        for (const auto& q : rp.queries) qs.push_back(parse_call_pattern(q));
        const AnalysisState s = state_of(p, qs);
        const Update u = diff(parse_program(next.text()), p);
        ExtCertification e = ext_certify(s, u, false);
        IncCheckResult r = inc_check(s, u, e.inc);
        REQUIRE(r.accepted());
        AnalysisResult scratch = analyze(r.state.program, r.state.queries);
        CHECK(same_answers(scratch.at, r.state.at));
        CHECK(same_arcs(scratch.dat, r.state.dat));
        // Both parties end in the same state.
        CHECK(state_text(r.state) == state_text(e.state));
        // Every entry is traversed at most once per rule.
        std::size_t bound = 0;
        for (const auto& [k, entry] : s.at) bound += r.state.program.rules_for(k.predicate_key()).size();
        for (const auto& [k, entry] : e.inc) bound += r.state.program.rules_for(k.predicate_key()).size();
        CHECK(r.stats.traversals <= bound);
    }
}

TEST_CASE("property: a reused deletion certificate is accepted") {
    std::mt19937 rng(31);
    int seen = 0;
    for (int i = 0; i < 400 && seen < 50; ++i) {
        gen::RandomProgram rp = gen::random_program(rng);
        gen::RandomProgram next = rp;
        if (next.rules.size() < 2) continue;
        next.rules.erase(next.rules.begin() + 1 + rng() % (next.rules.size() - 1));
        const Program p = parse_program(rp.text());
        std::vector<CallPattern> qs;
        for (const auto& q : rp.queries) qs.push_back(parse_call_pattern(q));
        const AnalysisState s = state_of(p, qs);
        const Update u = diff(parse_program(next.text()), p);
        if (classify(u) != UpdateClass::Deletion) continue;
        ++seen;
        ExtCertification e = ext_certify(s, u, true);
        IncCheckResult r = inc_check(s, u, e.inc);
        REQUIRE(r.accepted());
        CHECK(state_text(r.state) == state_text(e.state));
    }
    CHECK(seen > 0);
}
