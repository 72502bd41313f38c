#include <doctest.h>

#include <random>

#include "acc/error.hpp"
#include "acc/lprog.hpp"
#include "fixtures.hpp"
#include "random_program.hpp"

using namespace acc;

TEST_CASE("naive reverse parses into four normalized rules") {
    const Program p = parse_program(fixtures::kP0);
    REQUIRE(p.rules().size() == 4);
    CHECK(p.predicates().size() == 2);
    const Rule* rev2 = p.find_rule({"rev", 2, 2});
    REQUIRE(rev2);
    CHECK(to_string(*rev2) == "rev(X,Y) :- X = [U|V], rev(V,W), T = [U], app(W,T,Y).");
    CHECK(rule_variables(*rev2) == std::vector<std::string>{"X", "Y", "U", "V", "W", "T"});
    CHECK(std::holds_alternative<Call>(rev2->body[1]));
    CHECK(p.head_variables({"app", 3}) == std::vector<std::string>{"X", "Y", "Z"});
}

TEST_CASE("head bindings move into the body") {
    CHECK(to_string(parse_program("p(X,X).")) == "p(X,Y) :- X = Y.\n");
    CHECK(to_string(parse_program("p(a,[X|Y]) :- q(X,Y).")) ==
          "p(Z,X1) :- Z = a, X1 = [X|Y], q(X,Y).\n");
}

TEST_CASE("call arguments become distinct variables") {
    CHECK(to_string(parse_program("p(X) :- q(f(X)).")) == "p(X) :- N1 = f(X), q(N1).\n");
    CHECK(to_string(parse_program("p(X,Y) :- q(X,X).")) == "p(X,Y) :- N1 = X, q(X,N1).\n");
}

TEST_CASE("ground equations get a variable side") {
    CHECK(to_string(parse_program("p(X) :- a = b.")) == "p(X) :- N1 = a, N1 = b.\n");
}

TEST_CASE("anonymous variables are distinct and true is dropped") {
    CHECK(to_string(parse_program("p(_, _) :- q(_).")) == "p(_1,_2) :- q(_3).\n");
    CHECK(to_string(parse_program("p(X) :- true, X = a.")) == "p(X) :- X = a.\n");
}

TEST_CASE("rules of one predicate share the first rule's head") {
    const Program p = parse_program("q(A,B) :- A = B.\nq(X,Y) :- r(X,A), A = Y.\n");
    const auto rules = p.rules_for({"q", 2});
    REQUIRE(rules.size() == 2);
    CHECK(rules[1]->head.args == std::vector<std::string>{"A", "B"});
    // The body variable that collided with the new head name was renamed away.
    CHECK(variant_of(*rules[1], parse_rule("q(X,Y) :- r(X,A), A = Y.")));
}

TEST_CASE("ordinals are dense per predicate in program order") {
    const Program p = parse_program("a(X) :- X = a.\nb(X) :- X = b.\na(X) :- X = c.\n");
    CHECK(p.find_rule({"a", 1, 2}) != nullptr);
    CHECK(p.find_rule({"b", 1, 1}) != nullptr);
    CHECK(p.find_rule({"b", 1, 2}) == nullptr);
}

TEST_CASE("syntax errors carry positions") {
    try {
        parse_program("p(X :- q.");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
        CHECK(e.column() == 5);
    }
    try {
        parse_program("p(X).\n\nq(X) :- X = .\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("arithmetic and comparisons are rejected") {
    CHECK_THROWS_AS(parse_program("p(X) :- X is 1."), ParseError);
    CHECK_THROWS_AS(parse_program("p(X) :- X < 1."), ParseError);
    CHECK_THROWS_AS(parse_program("p(X) :- X = 1+2."), ParseError);
    CHECK_THROWS_AS(parse_program("p(X) :- X =:= 1."), ParseError);
}

TEST_CASE("empty program and comments") {
    CHECK(parse_program("").empty());
    CHECK(parse_program("% nothing here\n").empty());
    CHECK(parse_program("p. % trailing\n").rules().size() == 1);
}

TEST_CASE("parse_atom wants distinct variables") {
    CHECK(to_string(parse_atom("app(X,Y,Z)")) == "app(X,Y,Z)");
    CHECK_THROWS_AS(parse_atom("p(X,X)"), ParseError);
    CHECK_THROWS_AS(parse_atom("p(a)"), ParseError);
}

TEST_CASE("variants compare equal through canonical text") {
    const Rule a = parse_rule("app(X,Y,Z) :- X = [U|V], Z = [U|W], app(V,Y,W).");
    const Rule b = parse_rule("app(A,B,C) :- A = [H|T], C = [H|R], app(T,B,R).");
    const Rule c = parse_rule("app(A,B,C) :- A = [H|T], C = [H|R], app(T,R,B).");
    CHECK(variant_of(a, b));
    CHECK_FALSE(variant_of(a, c));
    CHECK(canonical_rule_text(a) == canonical_rule_text(b));
}

TEST_CASE("renaming avoids a given set and can be undone") {
    const Rule r = parse_rule("p(X,Y) :- q(X,Z), Z = Y.");
    Renaming applied;
    const Rule s = rename_rule(r, {"Z", "Y"}, &applied);
    CHECK(variant_of(r, s));
    for (const auto& v : rule_variables(s)) CHECK((v != "Z" && v != "Y"));
    CHECK(apply_renaming(s, applied.inverse()) == r);
}

TEST_CASE("property: printing and reparsing is the identity on normalized programs") {
    std::mt19937 rng(11);
    for (int i = 0; i < 200; ++i) {
        const Program p = parse_program(gen::random_program(rng).text());
        const std::string text = to_string(p);
        CHECK(to_string(parse_program(text)) == text);
        CHECK(to_string(normalize(p)) == text);
    }
}
