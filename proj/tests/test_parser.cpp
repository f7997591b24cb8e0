#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eldis/parser.hpp"
#include "eldis/render.hpp"
#include "eldis/subsume.hpp"
#include "testutil.hpp"

using namespace eldis;

TEST_CASE("single subsumption statement") {
    GeneralProblem g = parseProblem("vars X; X <= B;");
    CHECK(g.sig.variables == std::set<std::string>{"X"});
    CHECK(g.sig.constants == std::set<std::string>{"B"});
    REQUIRE(g.formula.kind == Formula::Kind::Leaf);
    CHECK(g.formula.leaf->kind == StatementKind::Sub);
    CHECK(renderTerm(g.formula.leaf->lhs) == "X");
    CHECK(renderTerm(g.formula.leaf->rhs) == "B");
}

TEST_CASE("dissubsumption becomes not over a sub leaf") {
    GeneralProblem g = parseProblem("vars X,Y; X !<= Y;");
    REQUIRE(g.formula.kind == Formula::Kind::Not);
    REQUIRE(g.formula.children[0].kind == Formula::Kind::Leaf);
    CHECK(renderTerm(g.formula.children[0].leaf->lhs) == "X");
    CHECK(renderTerm(g.formula.children[0].leaf->rhs) == "Y");
}

TEST_CASE("equation expands to both subsumptions") {
    GeneralProblem g = parseProblem("vars X; A = X;");
    REQUIRE(g.formula.kind == Formula::Kind::And);
    REQUIRE(g.formula.children.size() == 2);
    CHECK(renderTerm(g.formula.children[0].leaf->lhs) == "A");
    CHECK(renderTerm(g.formula.children[0].leaf->rhs) == "X");
    CHECK(renderTerm(g.formula.children[1].leaf->lhs) == "X");
    CHECK(renderTerm(g.formula.children[1].leaf->rhs) == "A");
}

TEST_CASE("disequation expands to a disjunction of negations") {
    GeneralProblem g = parseProblem("vars X; A != X;");
    REQUIRE(g.formula.kind == Formula::Kind::Or);
    REQUIRE(g.formula.children.size() == 2);
    CHECK(g.formula.children[0].kind == Formula::Kind::Not);
    CHECK(g.formula.children[1].kind == Formula::Kind::Not);
}

TEST_CASE("connectives, precedence, parenthesized subformulas") {
    GeneralProblem g = parseProblem("vars X; not A <= X and (B <= X or C <= X);");
    REQUIRE(g.formula.kind == Formula::Kind::And);
    CHECK(g.formula.children[0].kind == Formula::Kind::Not);
    CHECK(g.formula.children[1].kind == Formula::Kind::Or);

    // Parenthesized term on the left of an operator still parses.
    GeneralProblem g2 = parseProblem("vars X; (A & B) <= X;");
    REQUIRE(g2.formula.kind == Formula::Kind::Leaf);
    CHECK(renderTerm(g2.formula.leaf->lhs) == "A & B");

    GeneralProblem g3 = parseProblem("vars X; ((A <= X));");
    CHECK(g3.formula.kind == Formula::Kind::Leaf);
}

TEST_CASE("multiple statements conjoin; comments and top") {
    GeneralProblem g = parseProblem(
        "# header comment\n"
        "vars X, Y;\n"
        "X <= B; # trailing comment\n"
        "top !<= Y;\n");
    REQUIRE(g.formula.kind == Formula::Kind::And);
    CHECK(g.formula.children.size() == 2);
    CHECK(g.formula.children[1].children[0].leaf->lhs.isTop());
}

TEST_CASE("terms: existentials, nesting, grouping") {
    GeneralProblem g = parseProblem("vars X; some r.(A & B) & some r.some s.A <= X;");
    const ConceptTerm& lhs = g.formula.leaf->lhs;
    REQUIRE(lhs.atoms().size() == 2);
    CHECK(g.sig.roles == std::set<std::string>{"r", "s"});
    CHECK(renderTerm(lhs) == "some r.(A & B) & some r.some s.A");
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(parseProblem("vars X; X <= ;"), SyntaxError);
    CHECK_THROWS_AS(parseProblem("vars X, X; A <= X;"), DuplicateVarDecl);
    CHECK_THROWS_AS(parseProblem("vars X; some A.B <= X; A <= X;"), RoleUsedAsConcept);
    CHECK_THROWS_AS(parseProblem("vars X; A <= X; some A.B <= X;"), RoleUsedAsConcept);
    CHECK_THROWS_AS(parseProblem("vars _v1; A <= _v1;"), SyntaxError);
    CHECK_THROWS_AS(parseProblem("A < B;"), SyntaxError);
    try {
        parseProblem("vars X;\nX <= ;\n");
        CHECK(false);
    } catch (const SyntaxError& e) {
        CHECK(e.line == 2);
        CHECK(e.col == 6);
    }
}

TEST_CASE("substitution files") {
    GeneralProblem g = parseProblem("vars X, Y; X <= B; Y !<= some r.(A & C);");
    Substitution s = parseSubstitution("X := A & B & C;\nY := some r.(A & C);\n", g.sig);
    CHECK(renderTerm(s.at("X")) == "A & B & C");
    CHECK(renderTerm(s.at("Y")) == "some r.(A & C)");

    Substitution sTop = parseSubstitution("X := top;", g.sig);
    CHECK(sTop.at("X").isTop());

    CHECK_THROWS_AS(parseSubstitution("Z := A;", g.sig), UnknownVariable);
    CHECK_THROWS_AS(parseSubstitution("X := Y;", g.sig), NonGroundBinding);
    CHECK_THROWS_AS(parseSubstitution("X := A; X := B;", g.sig), SyntaxError);
    CHECK_THROWS_AS(parseSubstitution("X := D;", g.sig), SyntaxError);
}

TEST_CASE("round-trip: render then parse is the identity on canonical terms") {
    testutil::Rng rng(42);
    Signature sig = testutil::tinySig();
    for (int i = 0; i < 1000; ++i) {
        ConceptTerm t = testutil::randomTerm(rng, sig, 3, 3);
        ConceptTerm back = parseTerm(renderTerm(t), sig);
        CHECK(back == t);
    }
}

TEST_CASE("rendered substitutions parse back") {
    GeneralProblem g = parseProblem("vars X, Y; X <= B; Y !<= some r.A;");
    Substitution s;
    s.bind("X", parseTerm("A & some r.(A & B)", g.sig));
    s.bind("Y", ConceptTerm::top());
    Substitution back = parseSubstitution(renderSubstitution(s), g.sig);
    CHECK(back.at("X") == s.at("X"));
    CHECK(back.at("Y") == s.at("Y"));
}
