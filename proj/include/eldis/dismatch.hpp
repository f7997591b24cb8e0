// Nondeterministic reduction of dismatching problems to flat disunification
// problems, as a backtracking enumerator over the don't-know choices.
//
// Six rules rewrite the working set: three decomposition rules for
// dissubsumptions, two flattening rules, and the solving rule that eliminates
// left-ground dissubsumptions. At most one rule applies to any statement;
// statement selection is FIFO and don't-care. The measure
// c(Gamma) = sum of |lhs|*|rhs| over statements with an applicable rule
// strictly decreases with every successful rule application, which bounds
// every branch by the initial measure.

#pragma once

#include <functional>
#include <optional>

#include "eldis/local.hpp"
#include "eldis/problem.hpp"

namespace eldis {

enum class RuleId {
    RightDecomp,
    LeftDecomp,
    AtomicDecomp,
    FlattenRightGroundDissub,
    FlattenLeftGroundSub,
    SolveLeftGroundDissub,
};

const char* ruleName(RuleId r);

// True iff every dissubsumption has at least one ground side.
bool isDismatchingProblem(const BasicProblem& b);

// Flattens the subsumptions and the non-ground sides of the dissubsumptions;
// ground sides are kept as they are, so the dismatching property is
// preserved.
BasicProblem preFlattenDismatching(const BasicProblem& b);

// The unique rule applicable to a statement, if any.
std::optional<RuleId> applicableRule(const Statement& s, const Signature& sig);

struct DismatchStats {
    std::size_t initialMeasure = 0;    // c of the pre-flattened problem
    std::size_t ruleApplications = 0;  // successful applications, all branches
    std::size_t measureViolations = 0; // rule applications that failed to shrink c
    std::size_t depthViolations = 0;   // branches longer than the initial measure
    std::size_t successfulRuns = 0;    // completed branches before deduplication
};

// Depth-first backtracking over all runs of the reduction. Yields each
// distinct resulting flat problem (deduplicated across branches); the
// callback returns false to stop. Throws NotDismatching.
void reduceDismatching(const BasicProblem& b,
                       const std::function<bool(const FlatProblem&)>& yield,
                       DismatchStats* stats = nullptr);

// A local solver: yields local solutions of a flat problem up to the given
// bound (callback returns false to stop early).
using LocalEngineFn =
    std::function<void(const FlatProblem&, std::size_t,
                       const std::function<bool(const LocalSolution&)>&)>;

// Runs the reduction and the given local engine over each reduced problem.
// Every yielded substitution is restricted to the variables of b (variables
// that disappeared during reduction default to top) and verified against b.
// With threads > 1, reduced problems are solved in parallel and the results
// are merged in reduction order, so the output is the same as the
// single-threaded one.
void solveDismatching(const BasicProblem& b, const LocalEngineFn& engine,
                      std::size_t maxSolutions,
                      const std::function<bool(const Substitution&)>& yield,
                      int threads = 1, DismatchStats* stats = nullptr,
                      const std::function<void(const FlatProblem&)>& onReduced = nullptr);

}  // namespace eldis
