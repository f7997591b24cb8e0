// Atom universe extraction, assignments with their acyclicity order, induced
// substitutions, solution verification, and the brute-force local oracle.

#pragma once

#include <functional>

#include "eldis/deadline.hpp"
#include "eldis/problem.hpp"

namespace eldis {

// The flat atoms of a flat problem: At (all of them, including variable
// atoms), Var (variables occurring anywhere), and At_nv = At minus variables.
// All three are sorted.
struct AtomUniverse {
    std::vector<Atom> at;
    std::vector<Atom> atNv;
    std::vector<std::string> vars;
};

AtomUniverse atomUniverse(const FlatProblem& f);

// Maps each variable to a set of non-variable atoms. Every variable of the
// universe has an entry (possibly empty).
struct Assignment {
    std::map<std::string, std::set<Atom>> sets;
};

// True iff the dependency relation (X above Y when Y occurs in an atom of
// S_X, transitively) has no cycle.
bool isAcyclic(const Assignment& s, const Signature& sig);

// The substitution induced along the dependency order: sigma(X) is the
// conjunction of sigma(D) over D in S_X; an empty set yields top.
// Throws CyclicAssignment.
Substitution inducedSubstitution(const Assignment& s, const Signature& sig);

bool solvesStatement(const Statement& st, const Substitution& s, const Signature& sig);
bool verifySolution(const GeneralProblem& p, const Substitution& s);
bool verifySolution(const BasicProblem& p, const Substitution& s);
bool verifySolution(const std::vector<Statement>& statements, const Substitution& s,
                    const Signature& sig);

struct LocalSolution {
    Assignment assignment;
    Substitution substitution;
};

// Exhaustively enumerates assignments (per-variable subsets of At_nv ordered
// by size then lexicographically, so minimal assignments come first) and
// yields those that are acyclic and whose induced substitution solves f.
// Throws SearchSpaceTooLarge when |Var|*|At_nv| exceeds capBits.
void bruteForceLocalSolve(const FlatProblem& f, std::size_t maxSolutions,
                          const std::function<bool(const LocalSolution&)>& yield,
                          std::size_t capBits = 24, const Deadline* deadline = nullptr);

// Convenience: non-emptiness of the oracle stream.
bool bruteForceLocallySolvable(const FlatProblem& f, std::size_t capBits = 24);

}  // namespace eldis
