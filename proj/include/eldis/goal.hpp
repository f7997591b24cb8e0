// Goal-oriented local disunification: eager rules, nondeterministic rules,
// expansion and solved-marking, run under depth-first backtracking.
//
// The engine keeps a working set of statements with solved flags and a
// current acyclic assignment S. Subsumptions with a variable right-hand side
// and dissubsumptions with a variable left-hand side and a non-variable atom
// on the right are "initially solved": they only constrain S and are kept
// expanded, i.e. for every E in S_X the instance statement with E substituted
// for the variable side is present. Eager rules are deterministic and applied
// to a fixpoint; when none applies, one unsolved statement is picked FIFO and
// the don't-know choices of the nondeterministic rules are explored by
// backtracking. A branch with every statement solved emits (S, sigma_S).
//
// The search decides local solvability: it emits a solution iff the problem
// has a local one. It does not enumerate all local solutions.

#pragma once

#include <functional>
#include <optional>

#include "eldis/deadline.hpp"
#include "eldis/local.hpp"
#include "eldis/problem.hpp"

namespace eldis {

// Exhaustive application of Right Decomposition: one output problem per way
// of choosing a right-hand atom for every dissubsumption with other than one
// atom on the right; a dissubsumption with an empty right-hand side fails
// every run, giving an empty stream.
void prepareGoalInput(const FlatProblem& f,
                      const std::function<bool(const FlatProblem&)>& yield);

struct GoalStatement {
    Statement st;
    bool solved;
};

struct GoalState {
    std::vector<GoalStatement> gamma;  // insertion order; FIFO selection
    std::map<Statement, std::size_t> index;
    std::map<std::string, std::set<Atom>> assign;  // S
    std::vector<std::string> trace;
    std::size_t steps = 0;

    std::optional<std::size_t> firstUnsolved() const;
};

// One step of the rule machinery over a fixed problem universe. The search
// driver below composes these; they are exposed so the individual rules can
// be exercised directly.
class GoalSearch {
public:
    // The universe (At, Var, At_nv) is taken from f as given, before any
    // Right Decomposition preparation.
    explicit GoalSearch(const FlatProblem& f);

    const AtomUniverse& universe() const { return uni_; }
    // Per-branch bound on rule applications, derived from the universe.
    std::size_t stepBudget() const { return budget_; }

    // Initial state for a prepared problem (single-atom dissubsumption
    // right-hand sides): empty assignment, initially-solved marks by shape.
    GoalState initialState(const FlatProblem& prepared) const;

    bool initiallySolvedShape(const Statement& s) const;

    // Adds the statement unless present; new statements are unsolved unless
    // their shape makes them initially solved.
    void addStatement(GoalState& st, const Statement& s) const;

    // Keeps Gamma expanded w.r.t. x: instantiates the initially solved
    // statements mentioning x by every element of S_x.
    void expand(GoalState& st, const std::string& x) const;

    enum class StepResult { Progress, Fail, NoEagerApplicable };

    // Applies the first applicable eager rule to the first unsolved statement
    // (FIFO; rule priority: Ground Solving, Solving, Extension, Top Solving,
    // Left Decomposition, Atomic Decomposition). Fail kills the branch.
    StepResult eagerStep(GoalState& st) const;

    // All successor states of the nondeterministic rules on gamma[index]:
    // Decomposition and Extension choices for subsumptions, Local Extension
    // choices over the non-variable atoms for dissubsumptions. Choices that
    // make the assignment cyclic are dropped; an empty result fails the
    // branch.
    std::vector<GoalState> nondetBranches(const GoalState& st, std::size_t index) const;

private:
    enum class EagerRule;
    std::optional<EagerRule> eagerRuleFor(const GoalState& st, const Statement& s) const;
    bool applyEager(GoalState& st, std::size_t index, EagerRule rule) const;
    bool extendAssignment(GoalState& st, const std::string& x, const Atom& d) const;

    const Signature& sig_;
    AtomUniverse uni_;
    std::size_t budget_ = 0;
};

struct GoalEmission {
    LocalSolution solution;
    std::vector<std::string> trace;  // applied-rule log for this branch
};

struct GoalStats {
    std::size_t ruleApplications = 0;  // across all branches
    std::size_t stepBudget = 0;        // per-branch cap derived from |At|
    std::size_t emissions = 0;
};

void solveGoalOriented(const FlatProblem& f, std::size_t maxSolutions,
                       const std::function<bool(const GoalEmission&)>& yield,
                       GoalStats* stats = nullptr, const Deadline* deadline = nullptr);

}  // namespace eldis
