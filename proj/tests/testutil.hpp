// Shared helpers for the test suites: a tiny fixed signature, seeded random
// generators for terms and problems, and collectors for enumeration streams.

#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "eldis/local.hpp"
#include "eldis/parser.hpp"
#include "eldis/problem.hpp"
#include "eldis/subsume.hpp"

namespace eldis::testutil {

struct Rng {
    explicit Rng(unsigned seed) : gen(seed) {}
    std::mt19937 gen;

    int range(int lo, int hi) {  // inclusive bounds
        return std::uniform_int_distribution<int>(lo, hi)(gen);
    }
    bool chance(double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(gen) < p; }
};

// Two constants, two roles, two variables.
inline Signature tinySig() {
    Signature sig;
    sig.constants = {"A", "B"};
    sig.roles = {"r", "s"};
    sig.variables = {"X", "Y"};
    return sig;
}

inline Atom randomGroundAtom(Rng& rng, const Signature& sig, int maxDepth);

inline ConceptTerm randomGroundTerm(Rng& rng, const Signature& sig, int maxDepth) {
    int n = rng.range(0, 2);
    std::vector<Atom> atoms;
    for (int i = 0; i < n; ++i) atoms.push_back(randomGroundAtom(rng, sig, maxDepth));
    return ConceptTerm(std::move(atoms));
}

inline Atom randomGroundAtom(Rng& rng, const Signature& sig, int maxDepth) {
    std::vector<std::string> constants(sig.constants.begin(), sig.constants.end());
    std::vector<std::string> roles(sig.roles.begin(), sig.roles.end());
    if (maxDepth == 0 || rng.chance(0.55)) {
        return Atom::name(constants[rng.range(0, int(constants.size()) - 1)]);
    }
    ConceptTerm arg = randomGroundTerm(rng, sig, maxDepth - 1);
    if (arg.isTop() && rng.chance(0.5)) {
        arg = ConceptTerm::single(Atom::name(constants[rng.range(0, int(constants.size()) - 1)]));
    }
    return Atom::exists(roles[rng.range(0, int(roles.size()) - 1)], std::move(arg));
}

// Any term over the signature, possibly containing variables.
inline ConceptTerm randomTerm(Rng& rng, const Signature& sig, int maxDepth, int maxWidth = 2);

inline Atom randomAtom(Rng& rng, const Signature& sig, int maxDepth) {
    std::vector<std::string> names(sig.constants.begin(), sig.constants.end());
    names.insert(names.end(), sig.variables.begin(), sig.variables.end());
    std::vector<std::string> roles(sig.roles.begin(), sig.roles.end());
    if (maxDepth == 0 || rng.chance(0.5)) {
        return Atom::name(names[rng.range(0, int(names.size()) - 1)]);
    }
    return Atom::exists(roles[rng.range(0, int(roles.size()) - 1)],
                        randomTerm(rng, sig, maxDepth - 1));
}

inline ConceptTerm randomTerm(Rng& rng, const Signature& sig, int maxDepth, int maxWidth) {
    int n = rng.range(0, maxWidth);
    std::vector<Atom> atoms;
    for (int i = 0; i < n; ++i) atoms.push_back(randomAtom(rng, sig, maxDepth));
    return ConceptTerm(std::move(atoms));
}

// The pool of flat atoms over the tiny signature (optionally with variable
// atoms at the top level).
inline std::vector<Atom> flatAtomPool(const Signature& sig, bool includeVarAtoms) {
    std::vector<Atom> pool;
    for (const auto& c : sig.constants) pool.push_back(Atom::name(c));
    std::vector<std::string> args(sig.constants.begin(), sig.constants.end());
    args.insert(args.end(), sig.variables.begin(), sig.variables.end());
    for (const auto& r : sig.roles) {
        for (const auto& a : args) {
            pool.push_back(Atom::exists(r, ConceptTerm::single(Atom::name(a))));
        }
    }
    if (includeVarAtoms) {
        for (const auto& v : sig.variables) pool.push_back(Atom::name(v));
    }
    return pool;
}

inline ConceptTerm pickSide(Rng& rng, const std::vector<Atom>& pool, int maxWidth) {
    int n = rng.range(0, maxWidth);
    std::vector<Atom> atoms;
    for (int i = 0; i < n; ++i) atoms.push_back(pool[rng.range(0, int(pool.size()) - 1)]);
    return ConceptTerm(std::move(atoms));
}

struct FlatProblemLimits {
    int maxSubs = 4;
    int maxDissubs = 2;
    int maxLhsWidth = 3;
    int maxDissubRhsWidth = 2;
    std::size_t maxAtNv = 6;
};

// Random flat problem over the tiny signature, rejection-sampled to keep the
// non-variable atom universe within limits.
inline FlatProblem randomFlatProblem(Rng& rng, const FlatProblemLimits& lim = {}) {
    Signature sig = tinySig();
    std::vector<Atom> pool = flatAtomPool(sig, true);
    for (;;) {
        FlatProblem f;
        f.sig = sig;
        int nSubs = rng.range(0, lim.maxSubs);
        int nDissubs = rng.range(0, lim.maxDissubs);
        for (int i = 0; i < nSubs; ++i) {
            ConceptTerm lhs = pickSide(rng, pool, lim.maxLhsWidth);
            ConceptTerm rhs = ConceptTerm::single(pool[rng.range(0, int(pool.size()) - 1)]);
            insertStatement(f.statements, Statement::sub(std::move(lhs), std::move(rhs)));
        }
        for (int i = 0; i < nDissubs; ++i) {
            ConceptTerm lhs = pickSide(rng, pool, 2);
            ConceptTerm rhs = pickSide(rng, pool, lim.maxDissubRhsWidth);
            insertStatement(f.statements, Statement::dissub(std::move(lhs), std::move(rhs)));
        }
        AtomUniverse uni = atomUniverse(f);
        if (uni.atNv.size() <= lim.maxAtNv) return f;
    }
}

// The running five-statement example: X <= B, A & B & C <= X,
// some r.X <= Y, top !<= Y, Y !<= some r.B over constants A, B, C and
// role r. It is solvable but has no local solution.
inline const char* exampleProblemText() {
    return "vars X, Y;\n"
           "X <= B;\n"
           "A & B & C <= X;\n"
           "some r.X <= Y;\n"
           "top !<= Y;\n"
           "Y !<= some r.B;\n";
}

inline BasicProblem exampleBasic() {
    GeneralProblem g = parseProblem(exampleProblemText());
    BasicProblem b;
    b.sig = g.sig;
    for (const Formula& part : g.formula.children) {
        if (part.kind == Formula::Kind::Leaf) {
            insertStatement(b.statements, *part.leaf);
        } else {
            Statement st = *part.children[0].leaf;
            st.kind = StatementKind::Dissub;
            insertStatement(b.statements, st);
        }
    }
    return b;
}

inline FlatProblem exampleFlat() {
    const BasicProblem b = exampleBasic();
    FlatProblem f;
    f.sig = b.sig;
    f.statements = b.statements;
    f.origin = std::make_shared<BasicProblem>(b);
    return f;
}

// The paper-style solution: X -> A & B & C, Y -> some r.(A & C).
inline Substitution exampleSolution(const Signature& sig) {
    Substitution s;
    s.bind("X", parseTerm("A & B & C", sig));
    s.bind("Y", parseTerm("some r.(A & C)", sig));
    return s;
}

inline std::vector<LocalSolution> collectLocal(
    const std::function<void(const std::function<bool(const LocalSolution&)>&)>& run) {
    std::vector<LocalSolution> out;
    run([&](const LocalSolution& s) {
        out.push_back(s);
        return true;
    });
    return out;
}

}  // namespace eldis::testutil
