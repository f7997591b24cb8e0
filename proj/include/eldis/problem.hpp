// Problem representations: boolean formulas over subsumption leaves, basic
// problems (statement sets), and flat problems.

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "eldis/term.hpp"

namespace eldis {

// Boolean combination of subsumption constraints. Dissubsumptions are stored
// as Not over a Sub leaf; equations and disequations are expanded at parse
// time into their two-sided forms.
struct Formula {
    enum class Kind { Leaf, Not, And, Or };

    Kind kind = Kind::And;
    std::optional<Statement> leaf;   // Kind::Leaf; always StatementKind::Sub
    std::vector<Formula> children;   // Not: 1 child; And/Or: any arity

    static Formula leafOf(Statement sub);
    static Formula negation(Formula f);
    static Formula conjunction(std::vector<Formula> fs);
    static Formula disjunction(std::vector<Formula> fs);
};

struct GeneralProblem {
    Signature sig;
    Formula formula;  // empty conjunction = trivially true problem
};

// Conjunction of subsumptions and dissubsumptions, kept as a sorted
// duplicate-free set of statements.
struct BasicProblem {
    Signature sig;
    std::vector<Statement> statements;
};

// A flat problem: every subsumption has flat atoms and exactly one atom on
// the right-hand side (n >= 0 atoms on the left); every dissubsumption has
// flat atoms on both sides (any number, including zero, per side).
struct FlatProblem {
    Signature sig;
    std::vector<Statement> statements;
    // Fresh variable -> the subterm it abbreviates (in original syntax).
    std::map<std::string, ConceptTerm> freshVars;
    // The basic problem this was derived from, when known.
    std::shared_ptr<const BasicProblem> origin;
};

// Inserts while keeping the vector sorted and duplicate-free.
// Returns true if the statement was new.
bool insertStatement(std::vector<Statement>& set, const Statement& s);

bool isFlatStatement(const Statement& s);
// Checks the FlatProblem shape invariants.
bool isFlatProblem(const FlatProblem& f);

}  // namespace eldis
