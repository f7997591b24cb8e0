// Reduction of general problems to basic ones, flattening of basic problems,
// and the variable-only dissubsumption form required by the SAT encoder.

#pragma once

#include <deque>
#include <functional>

#include "eldis/problem.hpp"

namespace eldis {

// Boolean skeleton of a general problem, with each distinct subsumption leaf
// replaced by a literal index into `literals`.
struct BoolSkeleton {
    enum class Kind { Lit, Not, And, Or };
    Kind kind = Kind::And;
    std::size_t lit = 0;                  // Kind::Lit
    std::vector<BoolSkeleton> children;   // Not: 1; And/Or: any arity
};

struct PropAbstraction {
    BoolSkeleton skeleton;
    std::vector<Statement> literals;  // index -> subsumption leaf
};

PropAbstraction propositionalAbstraction(const GeneralProblem& g);

// Yields one basic problem per satisfying valuation of the skeleton: the
// subsumptions assigned true together with the dissubsumption forms of those
// assigned false. Valuations are enumerated in lexicographic literal order
// with false-branch pruning. The callback returns false to stop early.
void enumerateBasicProblems(const GeneralProblem& g,
                            const std::function<bool(const BasicProblem&)>& yield);

// Flattens a basic problem: non-flat existential arguments are abbreviated by
// cached fresh variables with both directions of the defining equation added,
// and subsumptions with conjunctive right-hand sides are split. Solutions
// transfer in both directions (restriction / extension by the abbreviated
// subterms).
FlatProblem flatten(const BasicProblem& b);

// Building block shared with the dismatching reduction: rewrites non-flat
// existential atoms to use cached fresh variables and accumulates the
// defining equations (split into flat subsumptions) in the target problem.
class TermFlattener {
public:
    explicit TermFlattener(FlatProblem& out) : out_(out) {}

    Atom flattenAtom(const Atom& a);
    ConceptTerm flattenSide(const ConceptTerm& t);
    // Flattens both sides and splits subsumptions over their right-hand
    // atoms; a top right-hand side yields no statements.
    void processStatement(const Statement& s);
    // Processes the queued defining equations until none are left.
    void drainQueue();

private:
    std::string abbreviate(const ConceptTerm& subterm);

    FlatProblem& out_;
    std::map<ConceptTerm, std::string> cache_;
    std::deque<Statement> queue_;
};

// Rewrites every dissubsumption to the form X !<= Y for variables X, Y.
// A side that is not a single variable is abbreviated by a fresh variable
// constrained to be equivalent to it; for a top side only the lower-bound
// subsumption with an empty left-hand side is added, the trivially true
// direction is omitted.
FlatProblem variablizeDissubsumptions(const FlatProblem& f);

}  // namespace eldis
