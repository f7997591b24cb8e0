#include "eldis/engine.hpp"

#include "eldis/normalize.hpp"
#include "eldis/subsume.hpp"

namespace eldis {

const char* engineName(EngineKind k) {
    switch (k) {
        case EngineKind::Brute: return "brute";
        case EngineKind::Rules: return "rules";
        case EngineKind::Sat: return "sat";
    }
    return "?";
}

namespace {

void solveViaSat(const FlatProblem& f, std::size_t maxSolutions,
                 const std::function<bool(const LocalSolution&)>& yield,
                 const EngineOptions& opts) {
    FlatProblem v = variablizeDissubsumptions(f);
    SatBackend backend = opts.satBackend ? opts.satBackend : builtinSatBackend(opts.deadline);
    enumerateModels(
        v, maxSolutions,
        [&](const LocalSolution& full) {
            LocalSolution restricted;
            restricted.substitution = full.substitution.restrictedTo(f.sig.variables);
            for (const auto& [var, atoms] : full.assignment.sets) {
                if (f.sig.isVariable(var)) restricted.assignment.sets[var] = atoms;
            }
            if (!verifySolution(f.statements, restricted.substitution, f.sig)) {
                throw InternalEncodingError(
                    "restricted SAT solution does not solve the original problem");
            }
            return yield(restricted);
        },
        backend);
}

}  // namespace

void solveLocal(EngineKind engine, const FlatProblem& f, std::size_t maxSolutions,
                const std::function<bool(const LocalSolution&)>& yield,
                const EngineOptions& opts) {
    switch (engine) {
        case EngineKind::Brute:
            bruteForceLocalSolve(f, maxSolutions, yield, opts.bruteCapBits, opts.deadline);
            return;
        case EngineKind::Rules:
            solveGoalOriented(
                f, maxSolutions,
                [&](const GoalEmission& e) {
                    if (opts.onTrace) opts.onTrace(e.trace);
                    return yield(e.solution);
                },
                nullptr, opts.deadline);
            return;
        case EngineKind::Sat:
            solveViaSat(f, maxSolutions, yield, opts);
            return;
    }
}

LocalEngineFn makeLocalEngine(EngineKind engine, const EngineOptions& opts) {
    return [engine, opts](const FlatProblem& f, std::size_t maxSolutions,
                          const std::function<bool(const LocalSolution&)>& yield) {
        solveLocal(engine, f, maxSolutions, yield, opts);
    };
}

}  // namespace eldis
