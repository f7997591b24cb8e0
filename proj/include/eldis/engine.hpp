// Uniform front for the three local engines. Each accepts any flat problem:
// the rules engine prepares multi-atom dissubsumption right-hand sides
// itself, and the SAT engine variablizes dissubsumptions and restricts the
// decoded solutions back to the problem's own variables.

#pragma once

#include "eldis/dismatch.hpp"
#include "eldis/encoding.hpp"
#include "eldis/goal.hpp"
#include "eldis/local.hpp"

namespace eldis {

enum class EngineKind { Brute, Rules, Sat };

const char* engineName(EngineKind k);

struct EngineOptions {
    const Deadline* deadline = nullptr;
    SatBackend satBackend = nullptr;        // defaults to the built-in solver
    std::size_t bruteCapBits = 24;
    // Called with the applied-rule log before each rules-engine yield.
    std::function<void(const std::vector<std::string>&)> onTrace = nullptr;
};

void solveLocal(EngineKind engine, const FlatProblem& f, std::size_t maxSolutions,
                const std::function<bool(const LocalSolution&)>& yield,
                const EngineOptions& opts = {});

// Adapter for the dismatching pipeline.
LocalEngineFn makeLocalEngine(EngineKind engine, const EngineOptions& opts = {});

}  // namespace eldis
