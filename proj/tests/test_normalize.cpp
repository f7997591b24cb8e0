#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eldis/normalize.hpp"
#include "eldis/local.hpp"
#include "eldis/render.hpp"
#include "eldis/subsume.hpp"
#include "testutil.hpp"

using namespace eldis;
using namespace eldis::testutil;

namespace {

std::vector<BasicProblem> allBasicProblems(const GeneralProblem& g) {
    std::vector<BasicProblem> out;
    enumerateBasicProblems(g, [&](const BasicProblem& b) {
        out.push_back(b);
        return true;
    });
    return out;
}

std::vector<std::string> renderedStatements(const std::vector<Statement>& sts) {
    std::vector<std::string> out;
    for (const Statement& s : sts) out.push_back(renderStatement(s));
    return out;
}

}  // namespace

TEST_CASE("propositional abstraction dedups leaves") {
    GeneralProblem g = parseProblem("vars X; A !<= X;");
    PropAbstraction abs = propositionalAbstraction(g);
    CHECK(abs.literals.size() == 1);
    CHECK(abs.skeleton.kind == BoolSkeleton::Kind::Not);

    GeneralProblem g2 = parseProblem("vars X; A <= X and (B <= X or not A <= X);");
    PropAbstraction abs2 = propositionalAbstraction(g2);
    CHECK(abs2.literals.size() == 2);
}

TEST_CASE("enumerateBasicProblems") {
    // A basic problem yields exactly itself.
    GeneralProblem g = parseProblem("vars X; X <= B; A !<= X;");
    auto problems = allBasicProblems(g);
    REQUIRE(problems.size() == 1);
    CHECK(renderedStatements(problems[0].statements) ==
          std::vector<std::string>{"X <= B;", "A !<= X;"});

    // Contradictory skeleton: empty stream.
    GeneralProblem g2 = parseProblem("vars X; A <= X and not A <= X;");
    CHECK(allBasicProblems(g2).empty());

    // A disjunction of two distinct leaves yields three basic problems.
    GeneralProblem g3 = parseProblem("vars X; A <= X or B <= X;");
    auto problems3 = allBasicProblems(g3);
    CHECK(problems3.size() == 3);
    for (const BasicProblem& b : problems3) CHECK(b.statements.size() == 2);
}

TEST_CASE("property: solving g is solving some yielded basic problem") {
    Rng rng(77);
    Signature sig = tinySig();
    for (int round = 0; round < 80; ++round) {
        // Random formula with up to 4 leaves over flat statements.
        std::vector<Atom> pool = flatAtomPool(sig, true);
        std::function<Formula(int)> gen = [&](int depth) -> Formula {
            int pick = rng.range(0, depth <= 0 ? 0 : 3);
            if (pick == 0) {
                return Formula::leafOf(Statement::sub(pickSide(rng, pool, 2),
                                                      pickSide(rng, pool, 2)));
            }
            if (pick == 1) return Formula::negation(gen(depth - 1));
            std::vector<Formula> kids;
            int n = rng.range(2, 2);
            for (int i = 0; i < n; ++i) kids.push_back(gen(depth - 1));
            return pick == 2 ? Formula::conjunction(std::move(kids))
                             : Formula::disjunction(std::move(kids));
        };
        GeneralProblem g;
        g.sig = sig;
        g.formula = gen(2);

        auto problems = allBasicProblems(g);
        for (int trial = 0; trial < 15; ++trial) {
            Substitution s;
            for (const auto& v : sig.variables) s.bind(v, randomGroundTerm(rng, sig, 1));
            bool solvesG = verifySolution(g, s);
            bool solvesSome = false;
            for (const BasicProblem& b : problems) {
                if (verifySolution(b, s)) {
                    solvesSome = true;
                    break;
                }
            }
            CHECK(solvesG == solvesSome);
        }
    }
}

TEST_CASE("flatten: abbreviation and right-side splitting") {
    GeneralProblem g = parseProblem("vars X; X <= some r.(A & B);");
    BasicProblem b;
    b.sig = g.sig;
    insertStatement(b.statements, *g.formula.leaf);
    FlatProblem f = flatten(b);
    CHECK(isFlatProblem(f));
    CHECK(renderedStatements(f.statements) ==
          std::vector<std::string>{"A & B <= _v1;", "X <= some r._v1;", "_v1 <= A;",
                                   "_v1 <= B;"});
    REQUIRE(f.freshVars.count("_v1") == 1);
    CHECK(renderTerm(f.freshVars.at("_v1")) == "A & B");
    CHECK(f.origin != nullptr);
}

TEST_CASE("flatten: already-flat input unchanged; shared subterms cached") {
    FlatProblem f = exampleFlat();
    FlatProblem f2 = flatten(*f.origin);
    CHECK(f2.statements == f.statements);
    CHECK(f2.freshVars.empty());

    GeneralProblem g = parseProblem("vars X, Y; X <= some r.(A & B); Y <= some s.(A & B);");
    BasicProblem b;
    b.sig = g.sig;
    for (const Formula& part : g.formula.children) insertStatement(b.statements, *part.leaf);
    FlatProblem shared = flatten(b);
    CHECK(shared.freshVars.size() == 1);  // one abbreviation for A & B
}

TEST_CASE("flatten: nested non-flat terms need several rounds") {
    GeneralProblem g = parseProblem("vars X; some r.some s.(A & B) <= X;");
    BasicProblem b;
    b.sig = g.sig;
    insertStatement(b.statements, *g.formula.leaf);
    FlatProblem f = flatten(b);
    CHECK(isFlatProblem(f));
    CHECK(f.freshVars.size() == 2);
}

TEST_CASE("property: flatten preserves solvability both ways") {
    Rng rng(123);
    Signature sig = tinySig();
    int checked = 0;
    for (int round = 0; round < 300; ++round) {
        BasicProblem b;
        b.sig = sig;
        int nSubs = rng.range(1, 2);
        for (int i = 0; i < nSubs; ++i) {
            insertStatement(b.statements, Statement::sub(randomTerm(rng, sig, 2, 2),
                                                         randomTerm(rng, sig, 2, 2)));
        }
        if (rng.chance(0.5)) {
            insertStatement(b.statements, Statement::dissub(randomTerm(rng, sig, 1, 2),
                                                            randomTerm(rng, sig, 1, 2)));
        }
        FlatProblem f = flatten(b);
        CHECK(isFlatProblem(f));

        AtomUniverse uni = atomUniverse(f);
        if (uni.vars.size() * uni.atNv.size() > 18) continue;  // keep the oracle feasible
        ++checked;

        auto sols = collectLocal([&](auto yield) { bruteForceLocalSolve(f, 40, yield); });
        for (const auto& sol : sols) {
            // Restriction solves the original problem; variables that only
            // occurred in dropped trivial statements default to top.
            Substitution restricted =
                totalOn(sol.substitution.restrictedTo(sig.variables), sig.variables);
            CHECK(verifySolution(b, restricted));
            // And rebinding each fresh variable to its grounded subterm
            // extends the restriction back to a solution of the flat problem.
            Substitution extended = restricted;
            for (const auto& [fresh, subterm] : f.freshVars) {
                extended.bind(fresh, applySubstitution(extended, subterm, f.sig));
            }
            CHECK(verifySolution(f.statements, extended, f.sig));
        }
    }
    CHECK(checked > 150);
}

TEST_CASE("variablize: examples") {
    // X !<= Y is already variable-only.
    GeneralProblem g = parseProblem("vars X, Y; X !<= Y;");
    FlatProblem f;
    f.sig = g.sig;
    Statement st = *g.formula.children[0].leaf;
    st.kind = StatementKind::Dissub;
    insertStatement(f.statements, st);
    FlatProblem v = variablizeDissubsumptions(f);
    CHECK(v.statements == f.statements);

    // A !<= Y abbreviates the constant side.
    GeneralProblem g2 = parseProblem("vars Y; A !<= Y;");
    FlatProblem f2;
    f2.sig = g2.sig;
    Statement st2 = *g2.formula.children[0].leaf;
    st2.kind = StatementKind::Dissub;
    insertStatement(f2.statements, st2);
    FlatProblem v2 = variablizeDissubsumptions(f2);
    CHECK(renderedStatements(v2.statements) ==
          std::vector<std::string>{"A <= _v1;", "_v1 <= A;", "_v1 !<= Y;"});

    // top !<= Y: only the lower bound with empty left side is added.
    GeneralProblem g3 = parseProblem("vars Y; top !<= Y;");
    FlatProblem f3;
    f3.sig = g3.sig;
    Statement st3 = *g3.formula.children[0].leaf;
    st3.kind = StatementKind::Dissub;
    insertStatement(f3.statements, st3);
    FlatProblem v3 = variablizeDissubsumptions(f3);
    CHECK(renderedStatements(v3.statements) ==
          std::vector<std::string>{"top <= _v1;", "_v1 !<= Y;"});
}

TEST_CASE("property: variablize preserves local solutions modulo equivalence") {
    Rng rng(321);
    int compared = 0;
    for (int round = 0; round < 200; ++round) {
        FlatProblemLimits lim;
        lim.maxSubs = 2;
        lim.maxDissubs = 2;
        lim.maxLhsWidth = 2;
        lim.maxDissubRhsWidth = 1;
        lim.maxAtNv = 4;
        FlatProblem f = randomFlatProblem(rng, lim);
        FlatProblem v = variablizeDissubsumptions(f);
        CHECK(isFlatProblem(v));

        AtomUniverse uniV = atomUniverse(v);
        if (uniV.vars.size() * uniV.atNv.size() > 16) continue;
        ++compared;

        auto solsF = collectLocal([&](auto yield) { bruteForceLocalSolve(f, SIZE_MAX, yield); });
        auto solsV = collectLocal([&](auto yield) { bruteForceLocalSolve(v, SIZE_MAX, yield); });

        // Same solvability, and the same solution sets on the original
        // variables modulo equivalence.
        CHECK(solsF.empty() == solsV.empty());
        for (const auto& sv : solsV) {
            Substitution restricted = sv.substitution.restrictedTo(f.sig.variables);
            bool matched = false;
            for (const auto& sf : solsF) {
                if (substitutionsEquivalent(restricted, sf.substitution)) {
                    matched = true;
                    break;
                }
            }
            CHECK(matched);
        }
        for (const auto& sf : solsF) {
            bool matched = false;
            for (const auto& sv : solsV) {
                if (substitutionsEquivalent(sv.substitution.restrictedTo(f.sig.variables),
                                            sf.substitution)) {
                    matched = true;
                    break;
                }
            }
            CHECK(matched);
        }
    }
    CHECK(compared > 100);
}
